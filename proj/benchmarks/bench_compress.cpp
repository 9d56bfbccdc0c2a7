#include "lptensor/compress/compress.hpp"
#include "lptensor/core.hpp"
#include "lptensor/operators/operators.hpp"

#include <benchmark/benchmark.h>

using namespace lpt;

namespace {

void BM_monochromatic_triangle(benchmark::State& state) {
    const auto n = std::size_t(state.range(0));
    Rng rng(5);
    std::vector<int> colors(n * (n - 1) / 2);
    for (auto& c : colors) c = int(rng() % 2);
    compress::Coloring c(n, 2, colors);
    for (auto _ : state) benchmark::DoNotOptimize(compress::largest_monochromatic_subset(c, 2).set);
}
BENCHMARK(BM_monochromatic_triangle)->Arg(8)->Arg(12)->Arg(14);

void BM_pipeline(benchmark::State& state) {
    Signature sig = Signature::uniform(2, std::size_t(state.range(0)), 3, NormTag::projective);
    Rng rng(6);
    const auto d = Eigen::Index(sig.size());
    OperatorMatrix g(sig, sig, Eigen::MatrixXd::NullaryExpr(d, d, [&] { return gaussian_vector(rng, 1)[0]; }));
    OperatorMatrix phi = 0.8 * OperatorMatrix::identity(sig) + 1e-6 * g;
    for (auto _ : state) benchmark::DoNotOptimize(compress::extract_multiplier(phi, 0.1).success);
}
BENCHMARK(BM_pipeline)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_ramsey(benchmark::State& state) {
    Signature sig = Signature::uniform(2, std::size_t(state.range(0)), 2, NormTag::injective);
    OperatorMatrix t = 0.6 * OperatorMatrix::identity(sig) + 0.3 * ops::transpose_operator(sig);
    for (auto _ : state) benchmark::DoNotOptimize(compress::ramsey_diagonalize(t, 2, 0.1, 2.0).success);
}
BENCHMARK(BM_ramsey)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

}  // namespace
