#pragma once

#include <string>

#include "pud/evaluation.hpp"

namespace pud {

inline constexpr int kReportSchemaVersion = 1;

// Machine-readable report (JSON) with the full parameter set used.
std::string report_to_json(const EvalReport& report, const EvalParams& params);

// Fixed-width per-class table followed by the averages.
std::string report_to_table(const EvalReport& report);

}  // namespace pud
