#include "oracles/oracles.hpp"

#include "lptensor/core.hpp"
#include "lptensor/norms/norms.hpp"
#include "lptensor/operators/operators.hpp"

#include <doctest.h>

#include <limits>

using namespace lpt;
using norms::NormOptions;

namespace {

Tensor random_tensor(Rng& rng, const Signature& sig) { return Tensor(sig, gaussian_vector(rng, Eigen::Index(sig.size()))); }

NormOptions seeded(std::uint64_t s) {
    NormOptions o;
    o.seed = s;
    return o;
}

}  // namespace

TEST_CASE("l2 (x) l2: trace norm and spectral norm") {
    Rng rng(101);
    for (int k = 0; k < 12; ++k) {
        std::size_t m = 1 + k % 5, n = 2 + k % 4;
        Signature sig({{m, 2}, {n, 2}}, NormTag::projective);
        Tensor x = random_tensor(rng, sig);
        Eigen::MatrixXd a = oracle::as_matrix(x.coeffs(), Eigen::Index(m), Eigen::Index(n));
        auto p = norms::projective_norm(x, seeded(k));
        auto i = norms::injective_norm(x, seeded(k));
        CHECK(p.contains(oracle::trace_norm(a), 1e-6));
        CHECK(i.contains(oracle::spectral_norm(a), 1e-8));
        CHECK(p.lower <= p.upper);
        CHECK(norms::tensor_norm(x.with_tag(NormTag::injective), seeded(k)).lower == doctest::Approx(i.lower));
    }
}

TEST_CASE("l1 (x)^ lp is the l1 sum of row norms") {
    Rng rng(7);
    for (Exponent p : {Exponent(2), Exponent(3), Exponent(Rational(3, 2))}) {
        Signature sig({{3, 1}, {4, p}}, NormTag::projective);
        Tensor x = random_tensor(rng, sig);
        Eigen::MatrixXd a = oracle::as_matrix(x.coeffs(), 3, 4);
        double want = 0;
        for (int i = 0; i < 3; ++i) want += oracle::lp(a.row(i).transpose(), p.to_double());
        CHECK(norms::projective_norm(x).contains(want, 1e-6 * want));
    }
}

TEST_CASE("l1 (x)v l1 by sign enumeration") {
    Rng rng(8);
    Signature sig({{3, 1}, {4, 1}}, NormTag::injective);
    for (int k = 0; k < 5; ++k) {
        Tensor x = random_tensor(rng, sig);
        double want = oracle::injective_l1_l1(oracle::as_matrix(x.coeffs(), 3, 4));
        CHECK(norms::injective_norm(x, seeded(k)).contains(want, 1e-9));
        NormOptions c = seeded(k);
        c.certified = true;
        auto e = norms::injective_norm(x, c);
        CHECK(e.certified);
        CHECK(e.contains(want, 1e-9));
    }
}

TEST_CASE("elementary and basis tensors") {
    Signature sig({{3, 3}, {2, Exponent(Rational(3, 2))}, {2, 4}}, NormTag::projective);
    Tensor e = Tensor::basis(sig, MultiIndex{2, 1, 2});
    CHECK(norms::projective_norm(e).contains(1.0, 1e-9));
    CHECK(norms::injective_norm(e).contains(1.0, 1e-9));
    Eigen::VectorXd u(3), v(2), w(2);
    u << 1, -2, 0.5;
    v << 0.3, 1;
    w << -1, 2;
    Tensor el = Tensor::elementary(sig, {u, v, w});
    double want = oracle::lp(u, 3) * oracle::lp(v, 1.5) * oracle::lp(w, 4);
    CHECK(norms::projective_norm(el).contains(want, 1e-6 * want));
    CHECK(norms::injective_norm(el).contains(want, 1e-9 * want));
}

TEST_CASE("projective norm dominates injective norm") {
    Rng rng(9);
    Signature sig({{3, 3}, {3, 3}, {2, 2}}, NormTag::projective);
    for (int k = 0; k < 4; ++k) {
        Tensor x = random_tensor(rng, sig);
        CHECK(norms::injective_norm(x, seeded(k)).lower <= norms::projective_norm(x, seeded(k)).upper + 1e-9);
    }
    CHECK(norms::projective_norm(Tensor(sig)).upper == 0.0);
}

TEST_CASE("operator norms") {
    Signature sig = Signature::uniform(2, 2, 2, NormTag::projective);
    SUBCASE("identity and entry bounds") {
        auto e = norms::operator_norm(OperatorMatrix::identity(sig));
        CHECK(e.contains(1.0, 1e-6));
        auto b = norms::entry_bounds(OperatorMatrix::identity(sig));
        CHECK(b.lower == 1.0);
        CHECK(b.upper == 4.0);
        CHECK(b.certified);
    }
    SUBCASE("trace class into operators") {
        // ||x||_op <= ||x||_1 with equality on rank one
        OperatorMatrix id(sig, sig.with_tag(NormTag::injective), Eigen::MatrixXd::Identity(4, 4));
        CHECK(norms::operator_norm(id).contains(1.0, 1e-8));
    }
    SUBCASE("triangular projection on 2x2 trace class") {
        OperatorMatrix t = ops::projection(ops::ProjectionSpec::triangular(1, 2), sig);
        double grid = oracle::trace_class_operator_norm_2x2([](const Eigen::Matrix2d& x) {
            Eigen::Matrix2d y = x;
            y(0, 1) = 0;  // keep alpha_1 >= alpha_2
            return y;
        });
        auto e = norms::operator_norm(t);
        // the grid approaches from below; frozen value 2/sqrt(3)
        CHECK(grid == doctest::Approx(1.1547005).epsilon(1e-5));
        CHECK(e.upper >= grid - 1e-9);
        CHECK(e.lower == doctest::Approx(grid).epsilon(1e-5));
    }
    SUBCASE("injective to injective goes through the adjoint") {
        Signature inj = sig.with_tag(NormTag::injective);
        OperatorMatrix sw = ops::transpose_operator(inj);
        CHECK(norms::operator_norm(sw).contains(1.0, 1e-8));
    }
    SUBCASE("injective into projective is unsupported") {
        OperatorMatrix id(sig.with_tag(NormTag::injective), sig, Eigen::MatrixXd::Identity(4, 4));
        CHECK_THROWS_AS(norms::operator_norm(id), UnsupportedError);
    }
}

TEST_CASE("multilinear helpers") {
    Eigen::VectorXd g(3);
    g << 1, -2, 2;
    Eigen::VectorXd u = norms::holder_maximizer(g, 2.0);
    CHECK(oracle::lp(u, 2.0) == doctest::Approx(1.0));
    CHECK(g.dot(u) == doctest::Approx(3.0));
    CHECK(norms::dual_ball_norm(g, 1.0) == doctest::Approx(2.0));
    CHECK(norms::dual_ball_norm(g, std::numeric_limits<double>::infinity()) == doctest::Approx(5.0));
}

TEST_CASE("tensor_op places factors") {
    Signature sig({{2, 2}, {3, 2}, {2, 2}}, NormTag::projective);
    Signature one({{2, 2}}, NormTag::projective);
    OperatorMatrix flip(one, one, (Eigen::Matrix2d() << 0, 1, 1, 0).finished());
    OperatorMatrix op = norms::tensor_op(flip, 0, flip, 2, sig);
    CHECK(op.entry(MultiIndex{2, 3, 2}, MultiIndex{1, 3, 1}) == 1.0);
    CHECK(op.entry(MultiIndex{1, 3, 1}, MultiIndex{1, 3, 1}) == 0.0);
}
