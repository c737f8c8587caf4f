#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

namespace pud {

enum class Metric { L1, L2 };

std::string_view to_string(Metric metric) noexcept;

// One descriptor per row.
using DescriptorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

double distance(std::span<const double> a, std::span<const double> b, Metric metric);

struct GraphParams {
    int k = 8;
    double sigma = 2.0;
    Metric metric = Metric::L1;
};

// Symmetric kNN affinity graph and its normalization S = D^-1/2 W D^-1/2.
// An edge (i, j) exists when either endpoint lists the other among its k
// nearest neighbours. Zero-degree nodes keep all-zero rows in S.
struct RankGraph {
    int n = 0;
    int requestedK = 0;
    int k = 0;  // effective neighbourhood size after clamping to n - 1
    double sigma = 0.0;
    Metric metric = Metric::L1;
    Eigen::SparseMatrix<double> W;
    Eigen::SparseMatrix<double> S;
    Eigen::VectorXd degrees;

    bool k_clamped() const noexcept { return k != requestedK; }
};

RankGraph build_graph(const DescriptorMatrix& descriptors, const GraphParams& params);

// Initial scores for a single query: y = e_query.
struct RankState {
    Eigen::VectorXd y;
    double alpha = 0.95;

    static RankState single_query(int n, int query, double alpha);
};

struct IterativeOptions {
    double tol = 1e-10;
    int maxIters = 5000;
};

struct IterativeResult {
    Eigen::VectorXd f;
    int iterations = 0;
    double lastStep = 0.0;  // infinity norm of the final update
};

// f = (I - alpha S)^-1 y, solved directly. Throws NumericalFailure when the
// residual infinity norm exceeds 1e-8.
Eigen::VectorXd mr_closed_form(const RankGraph& graph, const RankState& state);

// One propagation step: alpha S f + (1 - alpha) y.
Eigen::VectorXd mr_step(const RankGraph& graph, const Eigen::VectorXd& f, const RankState& state);

// Iterates mr_step from f = y until the update's infinity norm falls below
// tol and every component has also changed by at most tol relative to its own
// value. The limit is (1 - alpha) times the closed-form solution.
IterativeResult mr_iterative(const RankGraph& graph, const RankState& state,
                             const IterativeOptions& options = {});

struct Ranking {
    std::vector<int> order;      // corpus indices, best first
    std::vector<double> scores;  // per corpus index (distance or manifold score)
};

// Ascending distance, ties by ascending index, except that an indexed query
// always precedes its exact duplicates.
Ranking rank_by_norm(const DescriptorMatrix& descriptors, int query, Metric metric);
Ranking rank_by_norm(const DescriptorMatrix& descriptors, std::span<const double> query,
                     Metric metric);

enum class Solver { Auto, Direct, Iterative };

struct ManifoldOptions {
    double alpha = 0.95;
    Solver solver = Solver::Auto;
    int directSolveLimit = 2000;
    IterativeOptions iterative;
};

// Prepares a graph for repeated queries: the direct path factors I - alpha S
// once (dense below directSolveLimit, sparse above) and reuses it.
class ManifoldRanker {
public:
    ManifoldRanker(const RankGraph& graph, const ManifoldOptions& options);

    bool uses_direct_solve() const noexcept { return direct_; }

    Eigen::VectorXd scores(int query) const;
    Ranking rank(int query) const;

private:
    Eigen::VectorXd solve_direct(const Eigen::VectorXd& y) const;

    int n_ = 0;
    double alpha_ = 0.0;
    bool direct_ = true;
    IterativeOptions iterative_;
    Eigen::SparseMatrix<double> S_;
    std::optional<Eigen::LLT<Eigen::MatrixXd>> dense_;
    std::unique_ptr<Eigen::SimplicialLLT<Eigen::SparseMatrix<double>>> sparse_;
};

// Descending score, ties by ascending index.
Ranking rank_by_manifold(const RankGraph& graph, int query, const ManifoldOptions& options);

// Orders indices by descending score, breaking ties by ascending index.
std::vector<int> descending_order(const Eigen::VectorXd& scores);

}  // namespace pud
