#include "oracles/oracles.hpp"

#include "lptensor/compress/compress.hpp"
#include "lptensor/core.hpp"
#include "lptensor/operators/operators.hpp"

#include <doctest.h>

#include <numeric>

using namespace lpt;
using namespace lpt::compress;

namespace {

Coloring edge_coloring(std::size_t n, unsigned bits) {
    std::size_t e = 0;
    std::vector<int> colors(n * (n - 1) / 2);
    // colex order: (1,2), (1,3), (2,3), (1,4), ...
    for (std::size_t b = 2; b <= n; ++b)
        for (std::size_t a = 1; a < b; ++a, ++e) colors[e] = int(bits >> e & 1);
    return Coloring(n, 2, colors);
}

Signature l3_cube() { return Signature::uniform(2, 6, 3, NormTag::projective); }

}  // namespace

TEST_CASE("colex rank") {
    CHECK(Coloring::rank({1, 2}) == 0);
    CHECK(Coloring::rank({1, 3}) == 1);
    CHECK(Coloring::rank({2, 3}) == 2);
    CHECK(Coloring::rank({1, 4}) == 3);
    CHECK(Coloring::rank({1, 2, 3}) == 0);
    CHECK(Coloring::rank({1, 2, 4}) == 1);
    CHECK_THROWS(Coloring(4, 2, {0, 1}));
}

TEST_CASE("every 2-coloring of K6 has a monochromatic triangle") {
    std::size_t certified = 0;
    for (unsigned bits = 0; bits < (1u << 15); ++bits) {
        Coloring c = edge_coloring(6, bits);
        auto r = monochromatic_subset(c, 3);
        REQUIRE(r.set.has_value());
        const auto& s = *r.set;
        CHECK(c.color({s[0], s[1]}) == r.color);
        CHECK(c.color({s[0], s[2]}) == r.color);
        CHECK(c.color({s[1], s[2]}) == r.color);
        certified += r.exhaustive;
    }
    CHECK(certified == (1u << 15));
}

TEST_CASE("the pentagon coloring of K5 has no monochromatic triangle") {
    auto c = Coloring::from_function(5, 2, [](const std::vector<std::size_t>& s) {
        std::size_t d = (s[1] - s[0]) % 5;
        return (d == 1 || d == 4) ? 0 : 1;
    });
    auto r = monochromatic_subset(c, 3);
    CHECK_FALSE(r.set.has_value());
    CHECK(r.exhaustive);
    auto big = largest_monochromatic_subset(c, 1);
    REQUIRE(big.set.has_value());
    CHECK(big.set->size() == 2);
}

TEST_CASE("largest monochromatic subset agrees with brute force") {
    Rng rng(19);
    for (int k = 0; k < 40; ++k) {
        std::size_t n = 7;
        std::vector<int> colors(n * (n - 1) / 2);
        for (auto& c : colors) c = int(rng() % 3);
        Coloring c(n, 2, colors);
        auto r = largest_monochromatic_subset(c, 1);
        auto want = oracle::largest_monochromatic_clique(n, [&](std::size_t a, std::size_t b) {
            return c.color({std::min(a, b) + 1, std::max(a, b) + 1});
        });
        REQUIRE(r.set.has_value());
        CHECK(r.set->size() == want);
    }
}

TEST_CASE("search_longest returns the lexicographically first longest chain") {
    std::vector<std::size_t> ground(10);
    std::iota(ground.begin(), ground.end(), 1);
    // gaps of at least 3
    auto gap = [](const std::vector<std::size_t>& pre, std::size_t c) { return pre.empty() || c >= pre.back() + 3; };
    auto r = search_longest(ground, 10, 2, gap);
    CHECK(r.found);
    CHECK(r.exhaustive);
    CHECK(r.set == std::vector<std::size_t>{1, 4, 7, 10});
    auto capped = search_longest(ground, 2, 2, gap);
    CHECK(capped.set == std::vector<std::size_t>{1, 4});
    auto none = search_longest(ground, 10, 5, gap);
    CHECK_FALSE(none.found);
}

TEST_CASE("stable clusters: pigeonhole and maximality") {
    Rng rng(23);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 50; ++k) {
        std::vector<double> v(24);
        for (auto& x : v) x = u(rng);
        auto pos = stable_cluster(v, 0.1);
        CHECK(pos.size() >= 3);  // 24 values, ten windows of width 0.1
        CHECK(pos.size() == oracle::densest_window(v, 0.1));
        double lo = 1, hi = 0;
        for (auto p : pos) {
            lo = std::min(lo, v[p]);
            hi = std::max(hi, v[p]);
        }
        CHECK(hi - lo <= 0.1);
        CHECK(std::is_sorted(pos.begin(), pos.end()));
    }
}

TEST_CASE("pipeline on structured operators") {
    Signature sig = l3_cube();
    OperatorMatrix id = OperatorMatrix::identity(sig);
    struct Case {
        const char* name;
        OperatorMatrix op;
        double lambda;
    };
    Eigen::VectorXd m(36);
    for (Eigen::Index a = 0; a < 36; ++a) {
        MultiIndex alpha = sig.multi_index(std::size_t(a));
        m[a] = (alpha[0] >= 5 || alpha[1] >= 5) ? 1.7 : 0.7;
    }
    std::vector<Case> cases = {{"identity", id, 1.0},
                               {"scaled", -0.25 * id, -0.25},
                               {"transpose", ops::transpose_operator(sig), 0.0},
                               {"symmetrizer", ops::symmetrizer(2, sig), 0.5},
                               {"multiplier", OperatorMatrix::multiplier(sig, m), 0.7}};
    for (const auto& c : cases) {
        CAPTURE(c.name);
        auto r = extract_multiplier(c.op, 0.1);
        CHECK(r.success);
        CHECK(r.lambda == doctest::Approx(c.lambda).epsilon(1e-12));
        CHECK(r.residual.upper <= 1e-6);
        CHECK(r.residual.certified);
        CHECK(r.failure.empty());
        CHECK(r.sigma.preserves_order());
        double spent = 0;
        for (const auto& t : r.trace) spent += t.step == "residual" ? 0.0 : t.perturbation;
        CHECK(spent <= 0.1);
    }
}

TEST_CASE("pipeline residual is re-measured from explicit products") {
    Signature sig = l3_cube();
    Rng rng(29);
    OperatorMatrix g(sig, sig, Eigen::MatrixXd::NullaryExpr(36, 36, [&] { return gaussian_vector(rng, 1)[0]; }));
    OperatorMatrix phi = 0.8 * OperatorMatrix::identity(sig) + 1e-6 * g;
    auto r = extract_multiplier(phi, 0.1);
    REQUIRE(r.success);
    Signature small = ops::compressed_signature(sig, r.sigma);
    OperatorMatrix d = compose(ops::compress_K(r.sigma, sig, small), compose(phi, ops::embed_J(r.sigma, small, sig))) -
                       r.lambda * OperatorMatrix::identity(small);
    CHECK(r.residual.upper == doctest::Approx(d.mass()).epsilon(1e-12));
    CHECK(r.residual.lower == doctest::Approx(d.entries().cwiseAbs().maxCoeff()).epsilon(1e-12));
    REQUIRE(r.residual_estimate.has_value());
    CHECK(r.residual.contains(r.residual_estimate->lower, 1e-12));
    CHECK(r.lambda == doctest::Approx(0.8).epsilon(1e-4));
}

TEST_CASE("pipeline failures are reported, not thrown") {
    Signature sig = l3_cube();
    Rng rng(31);
    OperatorMatrix g(sig, sig, Eigen::MatrixXd::NullaryExpr(36, 36, [&] { return gaussian_vector(rng, 1)[0]; }));
    auto r = extract_multiplier(0.8 * OperatorMatrix::identity(sig) + 0.05 * g, 0.1);
    CHECK_FALSE(r.success);
    CHECK_FALSE(r.failure.empty());
    CHECK_FALSE(r.deepest_step.empty());
    std::string j = to_json(r);
    CHECK(j.find("\"deepest_step\"") != std::string::npos);

    Signature wide = Signature::uniform(2, 6, Exponent(Rational(3, 2)), NormTag::projective);
    CHECK_THROWS_AS(extract_multiplier(OperatorMatrix::identity(wide), 0.1), DomainError);
    CHECK_THROWS_AS(extract_multiplier(OperatorMatrix::identity(sig), 0.0), DomainError);
}

TEST_CASE("individual steps") {
    Signature sig = l3_cube();
    OperatorMatrix t = ops::transpose_operator(sig);
    StepResult d = disjointify(t);
    CHECK(d.sigma.maps() == std::vector<std::vector<std::size_t>>{{1, 3, 5}, {2, 4, 6}});
    CHECK(d.phi.entries().isZero(0.0));
    CHECK(d.perturbation == 0.0);

    auto sched = EpsilonSchedule::uniform(0.02, 30);
    StepResult s = shell_localize(OperatorMatrix::identity(sig), sched, 4);
    CHECK(s.success);
    CHECK(s.sigma.length(0) == 6);
    CHECK(s.perturbation == 0.0);

    TriangleReport tr = equalize_triangles(OperatorMatrix::identity(Signature::uniform(2, 3, 3, NormTag::projective)));
    CHECK(tr.gap == 0.0);
}

TEST_CASE("rigorous norm bound for injective operators") {
    Signature sig = Signature::uniform(2, 3, 2, NormTag::injective);
    OperatorMatrix id = OperatorMatrix::identity(sig);
    CHECK(norm_upper_bound(id) == 1.0);
    CHECK(norm_upper_bound(ops::transpose_operator(sig)) == 1.0);
    Rng rng(37);
    for (int k = 0; k < 5; ++k) {
        OperatorMatrix t(sig, sig, Eigen::MatrixXd::NullaryExpr(9, 9, [&] { return gaussian_vector(rng, 1)[0]; }));
        CHECK(norm_upper_bound(t) >= norms::operator_norm(t).lower - 1e-9);
        CHECK(norm_upper_bound(t) <= t.mass() + 1e-12);
    }
}

TEST_CASE("Ramsey diagonalization") {
    Signature sig = Signature::uniform(2, 12, 2, NormTag::injective);
    OperatorMatrix id = OperatorMatrix::identity(sig);
    auto a = ramsey_diagonalize(id, 2, 0.1, 2.0);
    CHECK(a.success);
    CHECK(a.lambda == 1.0);
    CHECK(a.residual.upper <= 1e-6);
    CHECK(a.cluster_width <= 0.1);
    auto b = ramsey_diagonalize(ops::transpose_operator(sig), 2, 0.1, 2.0);
    CHECK(b.success);
    CHECK(b.lambda == 0.0);
    CHECK(b.residual.upper <= 1e-6);
    CHECK_THROWS_AS(ramsey_diagonalize(3.0 * id, 2, 0.1, 2.0), DomainError);
}

TEST_CASE("subspace avoidance") {
    Signature sig = Signature::uniform(2, 12, 2, NormTag::injective);
    Tensor e = Tensor::basis(sig, MultiIndex{1, 1});
    auto r = avoid_subspace_block({e}, 2, 0.3);
    REQUIRE(r.success);
    CHECK(std::find(r.block.begin(), r.block.end(), std::size_t{1}) == r.block.end());
    CHECK(r.certificate < 0.3);
    CHECK(r.block.size() == 2);

    // a dense subspace touching every block cannot be avoided
    Tensor flat(sig, Eigen::VectorXd::Ones(144));
    auto f = avoid_subspace_block({flat}, 2, 0.3);
    CHECK_FALSE(f.success);
    CHECK_FALSE(f.failure.empty());
}
