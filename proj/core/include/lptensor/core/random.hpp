#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>

namespace lpt {

using Rng = std::mt19937_64;

inline constexpr std::uint64_t kDefaultSeed = 20240917;

// LP_TENSOR_SEED when set and parseable, kDefaultSeed otherwise.
std::uint64_t default_seed();

// Independent stream `stream` derived from `seed` (splitmix64 mixing).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

Eigen::VectorXd gaussian_vector(Rng& rng, Eigen::Index n);
Eigen::VectorXd uniform_vector(Rng& rng, Eigen::Index n, double lo, double hi);

}  // namespace lpt
