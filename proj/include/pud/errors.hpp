#pragma once

#include <stdexcept>
#include <string>

namespace pud {

enum class ErrorCode {
    ImageTooSmall,
    InvalidParam,
    NumericalFailure,
    ConvergenceFailure,
    EmptyDataset,
    UnknownQueryId,
    MethodUnavailable,
    DataError,
    IoError,
};

const char* to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so the
// command line front end can map it onto a process exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// Exit status contract of the `pud` tool: 0 ok, 1 usage, 2 data, 3 numerical.
int exit_code_for(ErrorCode code) noexcept;

}  // namespace pud
