#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lpt::norms {

struct Atom {
    double weight = 0.0;
    std::vector<Eigen::VectorXd> factors;  // each of unit l_{p_i} norm
};

struct AtomicDecomposition {
    std::vector<Atom> atoms;
    double residual = 0.0;  // l1 mass of target minus reconstruction

    double weight_sum() const;
    Eigen::VectorXd reconstruct() const;
};

struct Witness {
    // Elementary factors attaining the lower bound (injective and operator norms).
    std::vector<Eigen::VectorXd> factors;
    // Upper bound certificate for projective norms.
    std::optional<AtomicDecomposition> decomposition;
    // Dual functional for projective lower bounds, scaled so its estimated dual norm is 1.
    std::optional<Eigen::VectorXd> functional;
    double functional_norm = 0.0;  // estimated dual norm before scaling
};

struct NormEstimate {
    double lower = 0.0;
    double upper = 0.0;
    bool certified = false;
    bool converged = true;
    std::uint64_t seed = 0;
    std::string method;
    Witness witness;

    double width() const { return upper - lower; }
    double mid() const { return 0.5 * (lower + upper); }
    bool contains(double v, double tol = 0.0) const { return lower - tol <= v && v <= upper + tol; }
};

std::string to_json(const NormEstimate& e, int indent = 2);

}  // namespace lpt::norms
