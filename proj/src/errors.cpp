#include "pud/errors.hpp"

namespace pud {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::ImageTooSmall: return "ImageTooSmall";
        case ErrorCode::InvalidParam: return "InvalidParam";
        case ErrorCode::NumericalFailure: return "NumericalFailure";
        case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
        case ErrorCode::EmptyDataset: return "EmptyDataset";
        case ErrorCode::UnknownQueryId: return "UnknownQueryId";
        case ErrorCode::MethodUnavailable: return "MethodUnavailable";
        case ErrorCode::DataError: return "DataError";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

int exit_code_for(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidParam:
        case ErrorCode::MethodUnavailable:
            return 1;
        case ErrorCode::NumericalFailure:
        case ErrorCode::ConvergenceFailure:
            return 3;
        default:
            return 2;
    }
}

}  // namespace pud
