#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pud/ranking.hpp"

namespace pud {

enum class Method { L1, L2, MR1, MR2 };
enum class Protocol { PrecisionRecall, NS };

std::string_view to_string(Method method) noexcept;
std::string_view to_string(Protocol protocol) noexcept;
std::optional<Method> parse_method(std::string_view text) noexcept;

// MR1 builds its graph with L1 distances, MR2 with L2.
Metric metric_of(Method method) noexcept;
bool is_manifold(Method method) noexcept;

struct CorpusItem {
    std::string imageId;
    std::string classLabel;
    std::vector<double> descriptor;
};

// Labelled descriptor collection. Construction checks id uniqueness and a
// common descriptor length.
class LabeledCorpus {
public:
    explicit LabeledCorpus(std::vector<CorpusItem> items);

    int size() const noexcept { return static_cast<int>(items_.size()); }
    int dim() const noexcept { return static_cast<int>(descriptors_.cols()); }
    const std::vector<CorpusItem>& items() const noexcept { return items_; }
    const CorpusItem& item(int i) const { return items_.at(static_cast<std::size_t>(i)); }
    const DescriptorMatrix& descriptors() const noexcept { return descriptors_; }
    const std::map<std::string, int>& class_sizes() const noexcept { return classSizes_; }
    int class_size(const std::string& label) const;
    std::optional<int> find(std::string_view imageId) const;

private:
    std::vector<CorpusItem> items_;
    DescriptorMatrix descriptors_;
    std::map<std::string, int> classSizes_;
};

struct PrecisionRecall {
    double precision = 0.0;  // fraction in [0, 1]
    double recall = 0.0;
};

// The query stays in the ranking and counts as a relevant return.
PrecisionRecall precision_recall_at_n(std::span<const int> ranking, const std::string& queryLabel,
                                      const LabeledCorpus& corpus, int n);

// Number of same-label items among the top 4.
int ns_score(std::span<const int> ranking, const std::string& queryLabel,
             const LabeledCorpus& corpus);

struct EvalParams {
    Method method = Method::L1;
    Protocol protocol = Protocol::PrecisionRecall;
    int nReturns = 20;
    GraphParams graph;  // metric is taken from the method
    ManifoldOptions manifold;
};

struct ClassResult {
    int queries = 0;
    double precision = 0.0;  // percent
    double recall = 0.0;     // percent
    std::optional<double> nsScore;
};

struct EvalReport {
    Method method = Method::L1;
    Protocol protocol = Protocol::PrecisionRecall;
    int nReturns = 0;
    int queryCount = 0;
    std::map<std::string, ClassResult> perClass;
    double avgPrecision = 0.0;        // percent, mean over queries
    double avgRecall = 0.0;           // percent, mean over queries
    double classMeanPrecision = 0.0;  // percent, mean of per-class means
    double classMeanRecall = 0.0;
    std::optional<double> nsScore;    // mean over queries, NS protocol only
    bool kClamped = false;
    int effectiveK = 0;
};

// Uses every corpus item as a query in turn. Per-query failures are
// collected; if any occur the run throws with the first failure's code.
EvalReport run_protocol(const LabeledCorpus& corpus, const EvalParams& params);

}  // namespace pud
