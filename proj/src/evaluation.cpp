#include "pud/evaluation.hpp"

#include <algorithm>
#include <memory>
#include <string>

#include "pud/errors.hpp"

namespace pud {
namespace {

constexpr int kNsDepth = 4;

struct QueryOutcome {
    PrecisionRecall pr;
    int ns = 0;
    bool failed = false;
    ErrorCode code = ErrorCode::NumericalFailure;
    std::string message;
};

}  // namespace

std::string_view to_string(Method method) noexcept {
    switch (method) {
        case Method::L1: return "l1";
        case Method::L2: return "l2";
        case Method::MR1: return "mr1";
        case Method::MR2: return "mr2";
    }
    return "?";
}

std::string_view to_string(Protocol protocol) noexcept {
    return protocol == Protocol::NS ? "ns" : "pr";
}

std::optional<Method> parse_method(std::string_view text) noexcept {
    for (const Method m : {Method::L1, Method::L2, Method::MR1, Method::MR2}) {
        if (text == to_string(m)) {
            return m;
        }
    }
    return std::nullopt;
}

Metric metric_of(Method method) noexcept {
    return (method == Method::L1 || method == Method::MR1) ? Metric::L1 : Metric::L2;
}

bool is_manifold(Method method) noexcept {
    return method == Method::MR1 || method == Method::MR2;
}

LabeledCorpus::LabeledCorpus(std::vector<CorpusItem> items) : items_(std::move(items)) {
    const std::size_t dim = items_.empty() ? 0 : items_.front().descriptor.size();
    std::map<std::string_view, int> seen;
    for (const CorpusItem& it : items_) {
        if (!seen.emplace(it.imageId, 0).second) {
            throw Error(ErrorCode::DataError, "duplicate image id '" + it.imageId + "'");
        }
        if (it.descriptor.size() != dim) {
            throw Error(ErrorCode::DataError, "descriptor of '" + it.imageId + "' has length " +
                                                  std::to_string(it.descriptor.size()) +
                                                  ", expected " + std::to_string(dim));
        }
        ++classSizes_[it.classLabel];
    }
    descriptors_.resize(static_cast<Eigen::Index>(items_.size()), static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < items_.size(); ++i) {
        std::copy(items_[i].descriptor.begin(), items_[i].descriptor.end(),
                  descriptors_.data() + static_cast<Eigen::Index>(i) * descriptors_.cols());
    }
}

int LabeledCorpus::class_size(const std::string& label) const {
    const auto it = classSizes_.find(label);
    return it == classSizes_.end() ? 0 : it->second;
}

std::optional<int> LabeledCorpus::find(std::string_view imageId) const {
    for (std::size_t i = 0; i < items_.size(); ++i) {
        if (items_[i].imageId == imageId) {
            return static_cast<int>(i);
        }
    }
    return std::nullopt;
}

PrecisionRecall precision_recall_at_n(std::span<const int> ranking, const std::string& queryLabel,
                                      const LabeledCorpus& corpus, int n) {
    if (n < 1) {
        throw Error(ErrorCode::InvalidParam, "number of returns must be at least 1");
    }
    if (n > corpus.size() || static_cast<std::size_t>(n) > ranking.size()) {
        throw Error(ErrorCode::InvalidParam, "number of returns " + std::to_string(n) +
                                                 " exceeds corpus size " +
                                                 std::to_string(corpus.size()));
    }
    int relevant = 0;
    for (int i = 0; i < n; ++i) {
        if (corpus.item(ranking[static_cast<std::size_t>(i)]).classLabel == queryLabel) {
            ++relevant;
        }
    }
    const int classSize = corpus.class_size(queryLabel);
    PrecisionRecall pr;
    pr.precision = static_cast<double>(relevant) / n;
    pr.recall = classSize > 0 ? static_cast<double>(relevant) / classSize : 0.0;
    return pr;
}

int ns_score(std::span<const int> ranking, const std::string& queryLabel,
             const LabeledCorpus& corpus) {
    const std::size_t depth = std::min<std::size_t>(kNsDepth, ranking.size());
    int hits = 0;
    for (std::size_t i = 0; i < depth; ++i) {
        if (corpus.item(ranking[i]).classLabel == queryLabel) {
            ++hits;
        }
    }
    return hits;
}

EvalReport run_protocol(const LabeledCorpus& corpus, const EvalParams& params) {
    const int n = corpus.size();
    if (n == 0) {
        throw Error(ErrorCode::EmptyDataset, "corpus is empty");
    }
    if (params.nReturns < 1 || params.nReturns > n) {
        throw Error(ErrorCode::InvalidParam, "number of returns " + std::to_string(params.nReturns) +
                                                 " must lie in [1, " + std::to_string(n) + "]");
    }
    if (params.protocol == Protocol::NS) {
        for (const auto& [label, size] : corpus.class_sizes()) {
            if (size != kNsDepth) {
                throw Error(ErrorCode::InvalidParam, "N-S protocol needs 4 images per class; '" +
                                                         label + "' has " + std::to_string(size));
            }
        }
    }

    EvalReport report;
    report.method = params.method;
    report.protocol = params.protocol;
    report.nReturns = params.nReturns;
    report.queryCount = n;

    std::unique_ptr<ManifoldRanker> ranker;
    if (is_manifold(params.method)) {
        GraphParams gp = params.graph;
        gp.metric = metric_of(params.method);
        const RankGraph graph = build_graph(corpus.descriptors(), gp);
        report.kClamped = graph.k_clamped();
        report.effectiveK = graph.k;
        ranker = std::make_unique<ManifoldRanker>(graph, params.manifold);
    }

    std::vector<QueryOutcome> outcomes(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic, 4)
    for (int q = 0; q < n; ++q) {
        QueryOutcome& out = outcomes[static_cast<std::size_t>(q)];
        try {
            const Ranking r = ranker ? ranker->rank(q)
                                     : rank_by_norm(corpus.descriptors(), q, metric_of(params.method));
            const std::string& label = corpus.item(q).classLabel;
            out.pr = precision_recall_at_n(r.order, label, corpus, params.nReturns);
            out.ns = ns_score(r.order, label, corpus);
        } catch (const Error& e) {
            out.failed = true;
            out.code = e.code();
            out.message = e.what();
        }
    }

    int failures = 0;
    const QueryOutcome* first = nullptr;
    for (const QueryOutcome& o : outcomes) {
        if (o.failed) {
            ++failures;
            if (!first) {
                first = &o;
            }
        }
    }
    if (first) {
        const auto firstIndex = static_cast<int>(first - outcomes.data());
        throw Error(first->code, std::to_string(failures) + " of " + std::to_string(n) +
                                     " queries failed; first '" + corpus.item(firstIndex).imageId +
                                     "': " + first->message);
    }

    // Fixed summation order by query index keeps the report reproducible.
    struct Accum {
        int queries = 0;
        double precision = 0.0, recall = 0.0, ns = 0.0;
    };
    std::map<std::string, Accum> perClass;
    double sumP = 0.0, sumR = 0.0, sumNs = 0.0;
    for (int q = 0; q < n; ++q) {
        const QueryOutcome& o = outcomes[static_cast<std::size_t>(q)];
        Accum& a = perClass[corpus.item(q).classLabel];
        ++a.queries;
        a.precision += o.pr.precision;
        a.recall += o.pr.recall;
        a.ns += o.ns;
        sumP += o.pr.precision;
        sumR += o.pr.recall;
        sumNs += o.ns;
    }

    double classSumP = 0.0, classSumR = 0.0;
    for (const auto& [label, a] : perClass) {
        ClassResult c;
        c.queries = a.queries;
        c.precision = 100.0 * a.precision / a.queries;
        c.recall = 100.0 * a.recall / a.queries;
        if (params.protocol == Protocol::NS) {
            c.nsScore = a.ns / a.queries;
        }
        classSumP += c.precision;
        classSumR += c.recall;
        report.perClass.emplace(label, c);
    }
    report.avgPrecision = 100.0 * sumP / n;
    report.avgRecall = 100.0 * sumR / n;
    report.classMeanPrecision = classSumP / static_cast<double>(perClass.size());
    report.classMeanRecall = classSumR / static_cast<double>(perClass.size());
    if (params.protocol == Protocol::NS) {
        report.nsScore = sumNs / n;
    }
    return report;
}

}  // namespace pud
