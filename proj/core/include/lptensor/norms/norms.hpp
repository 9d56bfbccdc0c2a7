#pragma once

#include "lptensor/core/random.hpp"
#include "lptensor/core/tensor.hpp"
#include "lptensor/norms/estimate.hpp"
#include "lptensor/norms/multilinear.hpp"

#include <cstdint>
#include <vector>

namespace lpt::norms {

struct NormOptions {
    std::uint64_t seed = default_seed();
    // Multistart ascent for injective-type maximization.
    int starts = 32;
    double rel_tol = 1e-10;
    int max_iter = 500;
    // Column generation for projective norms.
    double gap_tol = 1e-6;
    int max_atoms = 200;
    int separation_starts = 6;
    // Certified enumeration; see certified_form_max.
    bool certified = false;
    std::size_t certified_points = 4'000'000;
    // Outer alternation for operator norms with projective codomain.
    int outer_starts = 8;
    int outer_iter = 40;
    double outer_tol = 1e-9;
};

// Atoms kept across related projective norm calls.
struct ProjectiveWarmStart {
    std::vector<Factors> atoms;
    std::size_t capacity = 256;
};

// sup |<x, f_1 (x) ... (x) f_N>| over ||f_i||_{p_i'} <= 1, regardless of the tag.
NormEstimate injective_norm(const Tensor& x, const NormOptions& opts = {});
// inf sum |lambda_k| over decompositions into unit elementary tensors, regardless of the tag.
NormEstimate projective_norm(const Tensor& x, const NormOptions& opts = {});
NormEstimate projective_norm(const Tensor& x, const NormOptions& opts, ProjectiveWarmStart* warm);
// Dispatches on the signature tag.
NormEstimate tensor_norm(const Tensor& x, const NormOptions& opts = {});

// sum_alpha x_alpha phi_alpha
double dual_pair(const Tensor& x, const Tensor& phi);

// sup ||Phi x|| over the domain unit ball. Supported: projective domain with either
// codomain, and injective to injective through the adjoint.
NormEstimate operator_norm(const OperatorMatrix& op, const NormOptions& opts = {});

// Rigorous bounds valid for a projective domain (or injective to injective):
// max |entry| <= ||Phi|| <= sum |entries|.
NormEstimate entry_bounds(const OperatorMatrix& op);

// Operators acting on disjoint coordinate groups of `sig`, identity elsewhere.
struct Placement {
    OperatorMatrix op;
    std::vector<std::size_t> coords;  // 0-based, one per factor of op's domain
};
OperatorMatrix tensor_op(const std::vector<Placement>& parts, const Signature& sig);
// S on coordinate i, T on coordinate j.
OperatorMatrix tensor_op(const OperatorMatrix& s, std::size_t i, const OperatorMatrix& t, std::size_t j,
                         const Signature& sig);

}  // namespace lpt::norms
