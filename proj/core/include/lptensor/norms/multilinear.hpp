#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <vector>

namespace lpt::norms {

using Factors = std::vector<Eigen::VectorXd>;

// Multilinear form F(u_1,...,u_N) = sum_alpha c_alpha prod_i u_i(alpha_i)
// maximized over the product of unit balls of l_{s_i}.
struct FormShape {
    std::vector<std::size_t> dims;
    std::vector<double> balls;  // s_i in [1, inf]
};

// Vector g with g_k = F(u_1, ..., e_k (slot skip), ..., u_N).
Eigen::VectorXd contract_except(const Eigen::VectorXd& coeffs, std::span<const std::size_t> dims,
                                const Factors& u, std::size_t skip);
double evaluate_form(const Eigen::VectorXd& coeffs, std::span<const std::size_t> dims, const Factors& u);

// Unit vector of l_s maximizing <g, u>; the value is ||g||_{s'}.
Eigen::VectorXd holder_maximizer(const Eigen::VectorXd& g, double s);
// ||g||_{s'} with 1/s + 1/s' = 1.
double dual_ball_norm(const Eigen::VectorXd& g, double s);
Eigen::VectorXd normalize_in_ball(const Eigen::VectorXd& v, double s);

struct AscentOptions {
    int starts = 32;
    double rel_tol = 1e-10;
    int max_iter = 500;
    std::uint64_t seed = 0;
    std::size_t keep = 1;  // distinct local maxima to report
};

struct LocalMax {
    double value = 0.0;
    Factors factors;
    int iterations = 0;
    bool converged = false;
};

struct AscentResult {
    LocalMax best;
    std::vector<LocalMax> maxima;  // descending value, distinct
    int total_iterations = 0;
    bool all_converged = true;
};

// Block alternating ascent from `warm` starts, a peak start, a flat start and
// seeded random starts.
AscentResult maximize_form(const Eigen::VectorXd& coeffs, const FormShape& shape, const AscentOptions& opts,
                           const std::vector<Factors>& warm = {});

// Single ascent run from a given start.
LocalMax ascend(const Eigen::VectorXd& coeffs, const FormShape& shape, Factors start, double rel_tol, int max_iter);

struct CertifiedMax {
    double lower = 0.0;
    double upper = 0.0;
    Factors witness;
    bool available = false;  // false when some factor is neither enumerable nor small
};

// Exact enumeration for s in {1, inf}, boundary grids with Lipschitz slack for
// dims <= 3, closed form on one factor. `max_points` bounds the enumeration.
CertifiedMax certified_form_max(const Eigen::VectorXd& coeffs, const FormShape& shape,
                                std::size_t max_points = 4'000'000);

}  // namespace lpt::norms
