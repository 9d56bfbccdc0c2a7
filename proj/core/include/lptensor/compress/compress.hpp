#pragma once

#include "lptensor/core/schedule.hpp"
#include "lptensor/core/selection.hpp"
#include "lptensor/core/tensor.hpp"
#include "lptensor/norms/norms.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace lpt::compress {

// ---- subset search -------------------------------------------------------

struct SearchLimits {
    std::size_t exhaustive_limit = 14;  // ground sets up to this size are searched exhaustively
    std::size_t node_cap = 100'000;     // above it, DFS stops after this many nodes
};

struct SearchOutcome {
    std::vector<std::size_t> set;  // increasing
    bool found = false;
    // No node cap was hit, so a failure (or a maximum) is certified.
    bool exhaustive = true;
    std::size_t nodes = 0;
};

// accept(prefix, candidate): may `candidate` (larger than every prefix element) extend `prefix`?
using ExtendFn = std::function<bool(const std::vector<std::size_t>& prefix, std::size_t candidate)>;

// Longest increasing subsequence of `ground` (capped at max_len) all of whose prefixes are
// accepted; lexicographically smallest among the longest. found = length >= min_len.
SearchOutcome search_longest(const std::vector<std::size_t>& ground, std::size_t max_len, std::size_t min_len,
                             const ExtendFn& accept, const SearchLimits& limits = {});

// ---- colorings -----------------------------------------------------------

// A color for every t-subset of {1..M}, stored in colex rank order.
class Coloring {
public:
    Coloring() = default;
    Coloring(std::size_t ground, std::size_t arity, std::vector<int> colors);
    static Coloring from_function(std::size_t ground, std::size_t arity,
                                  const std::function<int(const std::vector<std::size_t>&)>& fn);

    std::size_t ground() const { return ground_; }
    std::size_t arity() const { return arity_; }
    // Increasing, 1-based subset of size arity.
    int color(const std::vector<std::size_t>& subset) const;
    const std::vector<int>& colors() const { return colors_; }
    std::vector<int> palette() const;

    static std::size_t rank(const std::vector<std::size_t>& subset);

private:
    std::size_t ground_ = 0;
    std::size_t arity_ = 0;
    std::vector<int> colors_;
};

struct MonochromaticResult {
    std::optional<std::vector<std::size_t>> set;
    int color = -1;
    bool exhaustive = true;  // failure certified when true
    std::size_t nodes = 0;
};

// A target_size subset all of whose t-subsets share one color.
MonochromaticResult monochromatic_subset(const Coloring& c, std::size_t target_size, const SearchLimits& limits = {});
// Largest monochromatic subset (at least min_size), lexicographically smallest among ties.
MonochromaticResult largest_monochromatic_subset(const Coloring& c, std::size_t min_size,
                                                 const SearchLimits& limits = {});

// Longest set of 0-based positions whose values lie within `width` of each other;
// smallest lexicographically among the longest.
std::vector<std::size_t> stable_cluster(const std::vector<double>& values, double width);

// ---- pipeline ------------------------------------------------------------

struct TraceEntry {
    std::string step;
    double budget = 0.0;        // tolerance made available to the step
    double perturbation = 0.0;  // rigorous bound on what the step changed
    bool ok = true;
    std::string detail;
};

struct CompressionResult {
    bool success = false;
    SubsetSelection sigma;
    double lambda = 0.0;
    // ||K_sigma Phi J_sigma - lambda I||, measured directly. The pipeline reports the
    // rigorous [max |entry|, mass] bracket here; Ramsey runs report the operator norm.
    norms::NormEstimate residual;
    // Pipeline only: alternating ascent on the same operator. A local optimum, so it
    // refines the bracket in practice but bounds nothing.
    std::optional<norms::NormEstimate> residual_estimate;
    // sum |entries| of the same operator; a rigorous upper bound.
    double residual_mass = 0.0;
    std::vector<TraceEntry> trace;
    std::string failure;        // empty on success
    std::string deepest_step;   // last step that ran
    std::uint64_t seed = 0;
    // Ramsey runs: the phase-one cluster and the spread of its diagonal values.
    std::vector<std::size_t> cluster;
    double cluster_width = 0.0;
};

std::string to_json(const CompressionResult& r, int indent = 2);

struct CompressOptions {
    std::size_t n_target = 2;
    SearchLimits limits;
    norms::NormOptions norm;
    // Share of eps given to each perturbation step; the remainder is left for lambda.
    double step_share = 0.2;
    int lambda_evals = 16;
    int ramsey_retries = 6;
};

// One step of the pipeline: a selection, the operator it leads to, and how far that
// operator is from K_sigma Phi J_sigma.
struct StepResult {
    SubsetSelection sigma;
    OperatorMatrix phi;
    double perturbation = 0.0;
    bool success = true;
    TraceEntry trace;
};

// Common index set keeping cross-shell blocks Q_m K Phi J Q_n below the schedule, then
// drops them. Fails when the longest admissible set is shorter than min_length.
StepResult shell_localize(const OperatorMatrix& phi, const EpsilonSchedule& sched, std::size_t min_length = 2,
                          const CompressOptions& opts = {});
// K Phi J along disjointify_selection(N, floor(M/N)).
StepResult disjointify(const OperatorMatrix& phi);
// Common index set on which each tail sequence lambda_{a,b,j}, j > max(|a|,|b|), clusters
// within its schedule cell; the entries are then replaced by the cluster centres.
StepResult stabilize_tail(const OperatorMatrix& phi, const EpsilonSchedule& sched, std::size_t min_length = 2,
                          const CompressOptions& opts = {});
// Reduced operator Psi read off the last tail index, shell-localized on a common set,
// then written back as (Q_{|a|} Psi e_a) (x) e_j below the tail.
StepResult collapse_max_coordinate(const OperatorMatrix& phi, const EpsilonSchedule& sched,
                                   std::size_t min_length = 2, const CompressOptions& opts = {});

struct TriangleReport {
    double upper_value = 0.0;  // mean over alpha_{N-1} < alpha_N
    double lower_value = 0.0;  // mean over alpha_{N-1} > alpha_N
    double gap = 0.0;          // worst |upper - lower| over slices
    double spread = 0.0;       // worst deviation from the two-value shape
    std::size_t slices = 0;
    // Norm of (T - mu I)/(lambda - mu) on the worst slice, when the gap is nonzero.
    std::optional<norms::NormEstimate> projection_norm;
};

TriangleReport equalize_triangles(const OperatorMatrix& phi, const norms::NormOptions& opts = {},
                                  double gap_tol = 1e-12);

// Steps 1-6 on a projective endomorphism whose exponents satisfy 1/p_i + 1/p_j <= 1.
CompressionResult extract_multiplier(const OperatorMatrix& phi, double eps, const CompressOptions& opts = {});

// Rigorous upper bound on ||T||: min(mass T, |c| + mass(T - cI)) with c the median diagonal.
double norm_upper_bound(const OperatorMatrix& t);

// Two-phase search on an injective endomorphism with ||T|| <= K.
CompressionResult ramsey_diagonalize(const OperatorMatrix& t, std::size_t n, double eps, double k_bound,
                                     const CompressOptions& opts = {});

struct SubspaceBlock {
    bool success = false;
    bool exhaustive = true;
    std::vector<std::size_t> block;  // common index set B; Q projects onto B^N
    OperatorMatrix q;
    double rho = 0.0;
    std::size_t net_points = 0;
    double certificate = 0.0;  // max over a fresh net of ||Qx|| / ||x||
    std::string failure;
};

// Block B with |B| = n such that ||Q x|| < eps ||x|| on span(E).
SubspaceBlock avoid_subspace_block(const std::vector<Tensor>& e, std::size_t n, double eps,
                                   const CompressOptions& opts = {});

}  // namespace lpt::compress
