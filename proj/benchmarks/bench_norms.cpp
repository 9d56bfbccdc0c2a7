#include "lptensor/core.hpp"
#include "lptensor/norms/norms.hpp"
#include "lptensor/operators/operators.hpp"

#include <benchmark/benchmark.h>

using namespace lpt;

namespace {

Tensor random_cube(std::size_t order, std::size_t dim, const Exponent& p, NormTag tag, std::uint64_t seed) {
    Rng rng(seed);
    Signature sig = Signature::uniform(order, dim, p, tag);
    return Tensor(sig, gaussian_vector(rng, Eigen::Index(sig.size())));
}

void BM_injective(benchmark::State& state) {
    Tensor x = random_cube(std::size_t(state.range(0)), std::size_t(state.range(1)), 3, NormTag::injective, 1);
    for (auto _ : state) benchmark::DoNotOptimize(norms::injective_norm(x).lower);
}
BENCHMARK(BM_injective)->Args({2, 4})->Args({2, 8})->Args({3, 4})->Args({3, 6})->Unit(benchmark::kMillisecond);

void BM_projective(benchmark::State& state) {
    Tensor x = random_cube(std::size_t(state.range(0)), std::size_t(state.range(1)), 3, NormTag::projective, 2);
    for (auto _ : state) benchmark::DoNotOptimize(norms::projective_norm(x).upper);
}
BENCHMARK(BM_projective)->Args({2, 3})->Args({2, 5})->Args({3, 3})->Unit(benchmark::kMillisecond);

void BM_triangular_operator_norm(benchmark::State& state) {
    const auto n = std::size_t(state.range(0));
    Signature sig = Signature::uniform(2, n, 2, NormTag::projective);
    OperatorMatrix t = ops::projection(ops::ProjectionSpec::triangular(1, 2), sig);
    for (auto _ : state) benchmark::DoNotOptimize(norms::operator_norm(t).lower);
}
BENCHMARK(BM_triangular_operator_norm)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_diagonal_projection_norm(benchmark::State& state) {
    Signature sig = Signature::uniform(std::size_t(state.range(0)), 3, 2, NormTag::projective);
    OperatorMatrix p = ops::projection(ops::ProjectionSpec::diagonal(), sig);
    for (auto _ : state) benchmark::DoNotOptimize(norms::operator_norm(p).upper);
}
BENCHMARK(BM_diagonal_projection_norm)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace
