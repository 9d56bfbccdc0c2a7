#pragma once

#include "lptensor/core/selection.hpp"
#include "lptensor/core/tensor.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace lpt::ops {

// Same exponents as `big`, dimensions given by the selection lengths.
Signature compressed_signature(const Signature& big, const SubsetSelection& sigma);

// J_sigma e_alpha = e_{sigma(alpha)}
OperatorMatrix embed_J(const SubsetSelection& sigma, const Signature& small, const Signature& big);
// K_sigma e_alpha = e_beta when sigma(beta) = alpha, 0 otherwise.
OperatorMatrix compress_K(const SubsetSelection& sigma, const Signature& big, const Signature& small);
// K_sigma Phi J_sigma read off directly: entry(beta, alpha) = Phi(sigma(beta), sigma(alpha)).
OperatorMatrix compress_operator(const OperatorMatrix& phi, const SubsetSelection& sigma);

struct ProjectionSpec {
    enum class Kind { diagonal, triangular, shell, initial_block, slice, min_block, tetrahedral };

    Kind kind = Kind::diagonal;
    std::size_t k = 1;  // triangular: keeps alpha_k >= alpha_j (1-based coordinates)
    std::size_t j = 2;
    bool strict = false;
    std::size_t n = 1;                // shell, initial_block, min_block
    std::vector<std::size_t> prefix;  // slice: alpha over the first N-1 coordinates
    std::vector<std::size_t> perm;    // tetrahedral: alpha_{pi(1)} < ... < alpha_{pi(N)}, 1-based

    static ProjectionSpec diagonal();
    static ProjectionSpec triangular(std::size_t k, std::size_t j, bool strict = false);
    static ProjectionSpec shell(std::size_t n);
    static ProjectionSpec initial_block(std::size_t n);
    static ProjectionSpec slice(std::vector<std::size_t> prefix);
    static ProjectionSpec min_block(std::size_t n);
    static ProjectionSpec tetrahedral(std::vector<std::size_t> perm);

    // "diagonal", "triangular:k,j[:strict]", "shell:n", "initial_block:n",
    // "slice:a1,...", "min_block:n", "tetrahedral:p1,...,pN".
    static ProjectionSpec parse(std::string_view text);
    std::string str() const;

    bool keeps(const MultiIndex& alpha) const;
    void validate(const Signature& sig) const;
};

OperatorMatrix projection(const ProjectionSpec& spec, const Signature& sig);
// (P_{1,2} (x) I)(P_{1,3} (x) I) ... (P_{1,N} (x) I), each factor built with tensor_op.
OperatorMatrix diagonal_projection_composed(const Signature& sig);
OperatorMatrix diagonal_projection_direct(const Signature& sig);
// Diagonal projection of a two-factor space: e_(i,j) -> [i = j] e_(i,j).
OperatorMatrix pair_diagonal(const Signature& pair);

// Coordinate swap on a two-factor space: e_(i,j) -> e_(j,i). Needs equal factors.
OperatorMatrix transpose_operator(const Signature& sig);

// m! S as an exact integer matrix: entry(beta, alpha) = #{pi : pi(alpha) = beta}.
using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
IntMatrix symmetrizer_counts(std::size_t m, const Signature& sig);
std::int64_t factorial(std::size_t m);
// S e_alpha = (1/m!) sum_pi e_{pi(alpha)}
OperatorMatrix symmetrizer(std::size_t m, const Signature& sig);

// sigma_i(j) = N(j-1) + i, i = 1..N, j = 1..n.
SubsetSelection disjointify_selection(std::size_t order, std::size_t n, std::size_t target_dim = 0);

// Psi e_i = sum_{k in sigma_i} a_k e_k from l_p^m into l_p^M (order-one signatures).
// Blocks are 1-based, increasing, and successive (sigma_1 < sigma_2 < ...).
OperatorMatrix lp_average_isometry(const std::vector<std::vector<std::size_t>>& blocks,
                                   const std::vector<std::vector<double>>& coeffs, const Exponent& p,
                                   std::size_t target_dim = 0);
// Coefficients (1/|sigma_i|)^{1/p} on every block.
std::vector<std::vector<double>> constant_average_coeffs(const std::vector<std::vector<std::size_t>>& blocks,
                                                         const Exponent& p);

}  // namespace lpt::ops
