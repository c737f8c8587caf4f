#include "pud/report.hpp"

#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace pud {
namespace {

std::string_view to_string(Solver solver) noexcept {
    switch (solver) {
        case Solver::Auto: return "auto";
        case Solver::Direct: return "direct";
        case Solver::Iterative: return "iterative";
    }
    return "?";
}

}  // namespace

std::string report_to_json(const EvalReport& report, const EvalParams& params) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["schema"] = "pud-eval-report";
    j["schemaVersion"] = kReportSchemaVersion;
    j["method"] = std::string(to_string(report.method));
    j["protocol"] = std::string(to_string(report.protocol));
    j["nReturns"] = report.nReturns;
    j["queryCount"] = report.queryCount;

    // Same keys for every method so reports stay comparable.
    ordered_json p;
    p["k"] = params.graph.k;
    p["effectiveK"] = is_manifold(report.method) ? ordered_json(report.effectiveK) : ordered_json(nullptr);
    p["alpha"] = params.manifold.alpha;
    p["sigma"] = params.graph.sigma;
    p["solver"] = std::string(to_string(params.manifold.solver));
    p["tol"] = params.manifold.iterative.tol;
    p["maxIters"] = params.manifold.iterative.maxIters;
    p["directSolveLimit"] = params.manifold.directSolveLimit;
    j["params"] = p;

    j["avgPrecision"] = report.avgPrecision;
    j["avgRecall"] = report.avgRecall;
    j["classMeanPrecision"] = report.classMeanPrecision;
    j["classMeanRecall"] = report.classMeanRecall;
    j["nsScore"] = report.nsScore ? ordered_json(*report.nsScore) : ordered_json(nullptr);

    ordered_json classes = ordered_json::array();
    for (const auto& [label, c] : report.perClass) {
        ordered_json row;
        row["label"] = label;
        row["queries"] = c.queries;
        row["precision"] = c.precision;
        row["recall"] = c.recall;
        row["nsScore"] = c.nsScore ? ordered_json(*c.nsScore) : ordered_json(nullptr);
        classes.push_back(std::move(row));
    }
    j["perClass"] = std::move(classes);
    return j.dump(2) + "\n";
}

std::string report_to_table(const EvalReport& report) {
    const bool ns = report.nsScore.has_value();
    std::ostringstream os;
    os << "method " << to_string(report.method) << ", " << report.queryCount << " queries, "
       << report.nReturns << " returns\n";
    os << std::left << std::setw(24) << "class" << std::right << std::setw(9) << "queries"
       << std::setw(12) << "precision%" << std::setw(10) << "recall%";
    if (ns) {
        os << std::setw(8) << "N-S";
    }
    os << '\n';
    os << std::fixed << std::setprecision(2);
    for (const auto& [label, c] : report.perClass) {
        os << std::left << std::setw(24) << label << std::right << std::setw(9) << c.queries
           << std::setw(12) << c.precision << std::setw(10) << c.recall;
        if (ns) {
            os << std::setw(8) << *c.nsScore;
        }
        os << '\n';
    }
    os << std::left << std::setw(24) << "average" << std::right << std::setw(9) << report.queryCount
       << std::setw(12) << report.avgPrecision << std::setw(10) << report.avgRecall;
    if (ns) {
        os << std::setw(8) << *report.nsScore;
    }
    os << '\n';
    return os.str();
}

}  // namespace pud
