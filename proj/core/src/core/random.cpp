#include "lptensor/core/random.hpp"

#include <cstdlib>
#include <string>

namespace lpt {

std::uint64_t default_seed() {
    if (const char* env = std::getenv("LP_TENSOR_SEED"); env != nullptr && *env != '\0') {
        try {
            std::size_t used = 0;
            auto v = std::stoull(env, &used, 0);
            if (used == std::string(env).size()) return v;
        } catch (const std::exception&) {
        }
    }
    return kDefaultSeed;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Eigen::VectorXd gaussian_vector(Rng& rng, Eigen::Index n) {
    std::normal_distribution<double> nd(0.0, 1.0);
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = nd(rng);
    return v;
}

Eigen::VectorXd uniform_vector(Rng& rng, Eigen::Index n, double lo, double hi) {
    std::uniform_real_distribution<double> ud(lo, hi);
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = ud(rng);
    return v;
}

}  // namespace lpt
