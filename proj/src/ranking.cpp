#include "pud/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "pud/errors.hpp"

namespace pud {
namespace {

constexpr double kResidualLimit = 1e-8;
constexpr int kDefaultDirectLimit = 2000;

void check_alpha(double alpha) {
    if (!(alpha >= 0.0 && alpha < 1.0)) {
        throw Error(ErrorCode::InvalidParam, "alpha must lie in [0, 1), got " + std::to_string(alpha));
    }
}

void check_query(int n, int query) {
    if (query < 0 || query >= n) {
        throw Error(ErrorCode::InvalidParam,
                    "query index " + std::to_string(query) + " outside corpus of " + std::to_string(n));
    }
}

void check_state(const RankGraph& graph, const RankState& state) {
    check_alpha(state.alpha);
    if (state.y.size() != graph.n) {
        throw Error(ErrorCode::InvalidParam, "initial score vector length does not match graph size");
    }
}

std::span<const double> row_span(const DescriptorMatrix& m, Eigen::Index row) {
    return {m.data() + row * m.cols(), static_cast<std::size_t>(m.cols())};
}

Eigen::MatrixXd dense_system(const Eigen::SparseMatrix<double>& S, double alpha) {
    Eigen::MatrixXd a = -alpha * Eigen::MatrixXd(S);
    a.diagonal().array() += 1.0;
    return a;
}

Eigen::SparseMatrix<double> sparse_system(const Eigen::SparseMatrix<double>& S, double alpha) {
    Eigen::SparseMatrix<double> identity(S.rows(), S.cols());
    identity.setIdentity();
    Eigen::SparseMatrix<double> a = identity - alpha * S;
    a.makeCompressed();
    return a;
}

void check_residual(const Eigen::SparseMatrix<double>& S, double alpha, const Eigen::VectorXd& f,
                    const Eigen::VectorXd& y) {
    const Eigen::VectorXd residual = f - alpha * (S * f) - y;
    const double norm = residual.size() == 0 ? 0.0 : residual.lpNorm<Eigen::Infinity>();
    if (!(norm <= kResidualLimit)) {
        throw Error(ErrorCode::NumericalFailure,
                    "direct solve residual " + std::to_string(norm) + " exceeds 1e-8");
    }
}

IterativeResult iterate(const Eigen::SparseMatrix<double>& S, const Eigen::VectorXd& y, double alpha,
                        const IterativeOptions& options) {
    if (!(options.tol > 0.0)) {
        throw Error(ErrorCode::InvalidParam, "tolerance must be positive");
    }
    if (options.maxIters < 1) {
        throw Error(ErrorCode::InvalidParam, "max iterations must be at least 1");
    }
    IterativeResult result;
    result.f = y;
    const Eigen::VectorXd bias = (1.0 - alpha) * y;
    for (int t = 1; t <= options.maxIters; ++t) {
        Eigen::VectorXd next = alpha * (S * result.f) + bias;
        const Eigen::ArrayXd delta = (next - result.f).array().abs();
        const double step = y.size() == 0 ? 0.0 : delta.maxCoeff();
        // Every score must also have settled relative to itself; otherwise far
        // nodes with tiny scores are still unreached or unordered.
        const bool settled =
            (delta <= options.tol * next.array().abs() || delta < std::numeric_limits<double>::min()).all();
        result.f = std::move(next);
        result.iterations = t;
        result.lastStep = step;
        if (!std::isfinite(step)) {
            break;
        }
        if (step < options.tol && settled) {
            return result;
        }
    }
    throw Error(ErrorCode::ConvergenceFailure,
                "manifold ranking did not converge in " + std::to_string(options.maxIters) +
                    " iterations (last update " + std::to_string(result.lastStep) + ")");
}

}  // namespace

std::string_view to_string(Metric metric) noexcept {
    return metric == Metric::L1 ? "l1" : "l2";
}

double distance(std::span<const double> a, std::span<const double> b, Metric metric) {
    if (a.size() != b.size()) {
        throw Error(ErrorCode::InvalidParam, "descriptor length mismatch");
    }
    double acc = 0.0;
    if (metric == Metric::L1) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            acc += std::abs(a[i] - b[i]);
        }
        return acc;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return std::sqrt(acc);
}

RankGraph build_graph(const DescriptorMatrix& descriptors, const GraphParams& params) {
    const int n = static_cast<int>(descriptors.rows());
    if (n < 1) {
        throw Error(ErrorCode::InvalidParam, "cannot build a graph over an empty corpus");
    }
    if (params.k < 1) {
        throw Error(ErrorCode::InvalidParam, "neighbourhood size K must be at least 1");
    }
    if (!(params.sigma > 0.0) || !std::isfinite(params.sigma)) {
        throw Error(ErrorCode::InvalidParam, "sigma must be positive");
    }

    RankGraph g;
    g.n = n;
    g.requestedK = params.k;
    g.k = std::min(params.k, n - 1);
    g.sigma = params.sigma;
    g.metric = params.metric;

    // Directed kNN lists; each row is independent.
    std::vector<std::vector<std::pair<double, int>>> knn(n);
#pragma omp parallel for schedule(dynamic, 16)
    for (int i = 0; i < n; ++i) {
        std::vector<std::pair<double, int>> candidates;
        candidates.reserve(static_cast<std::size_t>(n) - 1);
        for (int j = 0; j < n; ++j) {
            if (j != i) {
                candidates.emplace_back(
                    distance(row_span(descriptors, i), row_span(descriptors, j), params.metric), j);
            }
        }
        std::partial_sort(candidates.begin(), candidates.begin() + g.k, candidates.end());
        candidates.resize(g.k);
        knn[i] = std::move(candidates);
    }

    // OR-symmetrization: keep each undirected pair once, keyed (min, max).
    struct Edge {
        int a, b;
        double d;
    };
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) {
        for (const auto& [d, j] : knn[i]) {
            edges.push_back({std::min(i, j), std::max(i, j), d});
        }
    }
    std::sort(edges.begin(), edges.end(),
              [](const Edge& l, const Edge& r) { return std::tie(l.a, l.b) < std::tie(r.a, r.b); });
    edges.erase(std::unique(edges.begin(), edges.end(),
                            [](const Edge& l, const Edge& r) { return l.a == r.a && l.b == r.b; }),
                edges.end());

    const double denom = 2.0 * params.sigma * params.sigma;
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(edges.size() * 2);
    for (const Edge& e : edges) {
        const double w = std::exp(-(e.d * e.d) / denom);
        if (w > 0.0) {
            triplets.emplace_back(e.a, e.b, w);
            triplets.emplace_back(e.b, e.a, w);
        }
    }
    g.W.resize(n, n);
    g.W.setFromTriplets(triplets.begin(), triplets.end());
    g.W.makeCompressed();

    g.degrees = Eigen::VectorXd::Zero(n);
    for (int col = 0; col < g.W.outerSize(); ++col) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(g.W, col); it; ++it) {
            g.degrees[it.row()] += it.value();
        }
    }

    g.S = g.W;
    for (int col = 0; col < g.S.outerSize(); ++col) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(g.S, col); it; ++it) {
            // Separate roots: the product of two tiny degrees can underflow to 0.
            it.valueRef() = it.value() / (std::sqrt(g.degrees[it.row()]) * std::sqrt(g.degrees[it.col()]));
        }
    }
    return g;
}

RankState RankState::single_query(int n, int query, double alpha) {
    check_query(n, query);
    check_alpha(alpha);
    RankState s;
    s.y = Eigen::VectorXd::Zero(n);
    s.y[query] = 1.0;
    s.alpha = alpha;
    return s;
}

Eigen::VectorXd mr_closed_form(const RankGraph& graph, const RankState& state) {
    check_state(graph, state);
    Eigen::VectorXd f;
    if (graph.n <= kDefaultDirectLimit) {
        const Eigen::LLT<Eigen::MatrixXd> llt(dense_system(graph.S, state.alpha));
        if (llt.info() != Eigen::Success) {
            throw Error(ErrorCode::NumericalFailure, "I - alpha S is not positive definite");
        }
        f = llt.solve(state.y);
    } else {
        const Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt(sparse_system(graph.S, state.alpha));
        if (llt.info() != Eigen::Success) {
            throw Error(ErrorCode::NumericalFailure, "I - alpha S is not positive definite");
        }
        f = llt.solve(state.y);
    }
    check_residual(graph.S, state.alpha, f, state.y);
    return f;
}

Eigen::VectorXd mr_step(const RankGraph& graph, const Eigen::VectorXd& f, const RankState& state) {
    check_state(graph, state);
    return state.alpha * (graph.S * f) + (1.0 - state.alpha) * state.y;
}

IterativeResult mr_iterative(const RankGraph& graph, const RankState& state,
                             const IterativeOptions& options) {
    check_state(graph, state);
    return iterate(graph.S, state.y, state.alpha, options);
}

std::vector<int> descending_order(const Eigen::VectorXd& scores) {
    std::vector<int> order(static_cast<std::size_t>(scores.size()));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return scores[a] > scores[b]; });
    return order;
}

Ranking rank_by_norm(const DescriptorMatrix& descriptors, std::span<const double> query,
                     Metric metric) {
    const int n = static_cast<int>(descriptors.rows());
    Ranking r;
    r.scores.resize(n);
    for (int i = 0; i < n; ++i) {
        r.scores[i] = distance(row_span(descriptors, i), query, metric);
    }
    r.order.resize(n);
    std::iota(r.order.begin(), r.order.end(), 0);
    std::stable_sort(r.order.begin(), r.order.end(),
                     [&](int a, int b) { return r.scores[a] < r.scores[b]; });
    return r;
}

Ranking rank_by_norm(const DescriptorMatrix& descriptors, int query, Metric metric) {
    check_query(static_cast<int>(descriptors.rows()), query);
    Ranking r = rank_by_norm(descriptors, row_span(descriptors, query), metric);
    // Distance to itself is the minimum, so everything ahead of the query is
    // an exact duplicate; the query itself wins that tie.
    const auto self = std::find(r.order.begin(), r.order.end(), query);
    std::rotate(r.order.begin(), self, self + 1);
    return r;
}

ManifoldRanker::ManifoldRanker(const RankGraph& graph, const ManifoldOptions& options)
    : n_(graph.n), alpha_(options.alpha), iterative_(options.iterative), S_(graph.S) {
    check_alpha(options.alpha);
    if (options.directSolveLimit < 0) {
        throw Error(ErrorCode::InvalidParam, "direct solve limit must be non-negative");
    }
    switch (options.solver) {
        case Solver::Auto: direct_ = n_ <= options.directSolveLimit; break;
        case Solver::Direct: direct_ = true; break;
        case Solver::Iterative: direct_ = false; break;
    }
    if (!direct_) {
        return;
    }
    if (n_ <= options.directSolveLimit) {
        dense_.emplace(dense_system(S_, alpha_));
        if (dense_->info() != Eigen::Success) {
            throw Error(ErrorCode::NumericalFailure, "I - alpha S is not positive definite");
        }
    } else {
        sparse_ = std::make_unique<Eigen::SimplicialLLT<Eigen::SparseMatrix<double>>>(
            sparse_system(S_, alpha_));
        if (sparse_->info() != Eigen::Success) {
            throw Error(ErrorCode::NumericalFailure, "I - alpha S is not positive definite");
        }
    }
}

Eigen::VectorXd ManifoldRanker::solve_direct(const Eigen::VectorXd& y) const {
    Eigen::VectorXd f = dense_ ? Eigen::VectorXd(dense_->solve(y)) : Eigen::VectorXd(sparse_->solve(y));
    check_residual(S_, alpha_, f, y);
    return f;
}

Eigen::VectorXd ManifoldRanker::scores(int query) const {
    check_query(n_, query);
    Eigen::VectorXd y = Eigen::VectorXd::Zero(n_);
    y[query] = 1.0;
    if (direct_) {
        return solve_direct(y);
    }
    return iterate(S_, y, alpha_, iterative_).f;
}

Ranking ManifoldRanker::rank(int query) const {
    Ranking r;
    const Eigen::VectorXd f = scores(query);
    r.scores.assign(f.data(), f.data() + f.size());
    r.order = descending_order(f);
    return r;
}

Ranking rank_by_manifold(const RankGraph& graph, int query, const ManifoldOptions& options) {
    return ManifoldRanker(graph, options).rank(query);
}

}  // namespace pud
