#include "lptensor/core.hpp"
#include "lptensor/norms/norms.hpp"
#include "lptensor/operators/operators.hpp"

#include "oracles/oracles.hpp"

#include <doctest.h>

using namespace lpt;
using ops::ProjectionSpec;

namespace {

bool is_idempotent(const OperatorMatrix& p) { return compose(p, p).entries() == p.entries(); }

}  // namespace

TEST_CASE("projection specs select the right coordinates") {
    CHECK(ProjectionSpec::diagonal().keeps(MultiIndex{2, 2, 2}));
    CHECK_FALSE(ProjectionSpec::diagonal().keeps(MultiIndex{2, 1, 2}));
    CHECK(ProjectionSpec::triangular(1, 2).keeps(MultiIndex{3, 3}));
    CHECK(ProjectionSpec::triangular(1, 2).keeps(MultiIndex{3, 1}));
    CHECK_FALSE(ProjectionSpec::triangular(1, 2).keeps(MultiIndex{1, 3}));
    CHECK_FALSE(ProjectionSpec::triangular(1, 2, true).keeps(MultiIndex{3, 3}));
    CHECK(ProjectionSpec::shell(3).keeps(MultiIndex{1, 3}));
    CHECK_FALSE(ProjectionSpec::shell(3).keeps(MultiIndex{2, 2}));
    CHECK(ProjectionSpec::initial_block(2).keeps(MultiIndex{2, 1}));
    CHECK_FALSE(ProjectionSpec::initial_block(2).keeps(MultiIndex{3, 1}));
    CHECK(ProjectionSpec::slice({2, 1}).keeps(MultiIndex{2, 1, 4}));
    CHECK_FALSE(ProjectionSpec::slice({2, 1}).keeps(MultiIndex{2, 2, 4}));
    CHECK(ProjectionSpec::min_block(2).keeps(MultiIndex{3, 2}));
    CHECK(ProjectionSpec::min_block(2).keeps(MultiIndex{1, 3}));
    CHECK_FALSE(ProjectionSpec::min_block(2).keeps(MultiIndex{3, 4}));
    CHECK(ProjectionSpec::tetrahedral({2, 1}).keeps(MultiIndex{3, 1}));
    CHECK_FALSE(ProjectionSpec::tetrahedral({2, 1}).keeps(MultiIndex{1, 3}));
}

TEST_CASE("projection specs parse and print") {
    for (const char* s : {"diagonal", "triangular:1,2", "triangular:2,1:strict", "shell:3", "initial_block:2", "slice:1,2",
                          "min_block:2", "tetrahedral:2,1,3"})
        CHECK(ProjectionSpec::parse(ProjectionSpec::parse(s).str()).str() == ProjectionSpec::parse(s).str());
    CHECK_THROWS_AS(ProjectionSpec::parse("pyramid:2"), Error);
    CHECK_THROWS_AS(ProjectionSpec::parse("triangular:1"), Error);
}

TEST_CASE("coordinate projections are idempotent multipliers") {
    Signature sig = Signature::uniform(3, 3, 2, NormTag::projective);
    for (const char* s : {"diagonal", "triangular:1,3", "shell:2", "initial_block:2", "slice:1,3", "min_block:2",
                          "tetrahedral:1,2,3"}) {
        OperatorMatrix p = ops::projection(ProjectionSpec::parse(s), sig);
        CHECK(is_idempotent(p));
        CHECK((p.entries() - Eigen::MatrixXd(p.entries().diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0);
    }
    CHECK_THROWS_AS(ops::projection(ProjectionSpec::triangular(1, 4), sig), Error);
}

TEST_CASE("diagonal projection built from pair diagonals") {
    for (std::size_t order : {2u, 3u, 4u}) {
        Signature sig = Signature::uniform(order, 3, 2, NormTag::projective);
        CHECK(ops::diagonal_projection_composed(sig).entries() == ops::diagonal_projection_direct(sig).entries());
    }
    Signature two = Signature::uniform(2, 3, 3, NormTag::projective);
    CHECK(ops::pair_diagonal(two).entries() == ops::projection(ProjectionSpec::diagonal(), two).entries());
}

TEST_CASE("symmetrizer") {
    Signature sig = Signature::uniform(3, 3, 2, NormTag::projective);
    ops::IntMatrix c = ops::symmetrizer_counts(3, sig);
    CHECK(c * c == 6 * c);
    // column sums are m!
    CHECK((c.colwise().sum().array() == 6).all());
    // e_(1,2,3) spreads over the six permutations
    CHECK(c(Eigen::Index(sig.linear(MultiIndex{3, 1, 2})), Eigen::Index(sig.linear(MultiIndex{1, 2, 3}))) == 1);
    CHECK(c(Eigen::Index(sig.linear(MultiIndex{1, 1, 2})), Eigen::Index(sig.linear(MultiIndex{1, 2, 1}))) == 2);
    CHECK(ops::factorial(5) == 120);
    OperatorMatrix s = ops::symmetrizer(2, Signature::uniform(2, 2, 2, NormTag::projective));
    CHECK(s.entries()(1, 2) == 0.5);
    CHECK(s.entries()(0, 0) == 1.0);
}

TEST_CASE("transpose operator and its compression") {
    Signature sig = Signature::uniform(2, 4, 3, NormTag::projective);
    OperatorMatrix t = ops::transpose_operator(sig);
    CHECK(compose(t, t).entries() == Eigen::MatrixXd::Identity(16, 16));
    SubsetSelection sigma = ops::disjointify_selection(2, 2, 4);
    CHECK(sigma.maps() == std::vector<std::vector<std::size_t>>{{1, 3}, {2, 4}});
    CHECK(ops::compress_operator(t, sigma).entries().isZero(0.0));
    CHECK_THROWS_AS(ops::transpose_operator(Signature({{2, 2}, {3, 2}}, NormTag::projective)), Error);
}

TEST_CASE("embedding and compression matrices") {
    Signature big({{5, 2}, {4, 3}}, NormTag::projective);
    SubsetSelection sigma({{2, 5}, {1, 3, 4}});
    Signature small = ops::compressed_signature(big, sigma);
    CHECK(small.dims() == std::vector<std::size_t>{2, 3});
    CHECK(small.exponent(1) == Exponent(3));
    OperatorMatrix j = ops::embed_J(sigma, small, big), k = ops::compress_K(sigma, big, small);
    CHECK(j.entry(MultiIndex{5, 3}, MultiIndex{2, 2}) == 1.0);
    CHECK(j.entries().sum() == 6.0);
    CHECK(k.entries() == j.entries().transpose());
    CHECK(compose(k, j).entries() == Eigen::MatrixXd::Identity(6, 6));

    Rng rng(3);
    OperatorMatrix phi(big, big, Eigen::MatrixXd::NullaryExpr(20, 20, [&] { return gaussian_vector(rng, 1)[0]; }));
    CHECK(ops::compress_operator(phi, sigma).entries() == compose(k, compose(phi, j)).entries());
    CHECK_THROWS_AS(ops::embed_J(SubsetSelection({{2, 6}, {1, 3, 4}}), small, big), Error);
}

TEST_CASE("averaging isometries preserve lp norms") {
    Rng rng(17);
    for (Exponent p : {Exponent(2), Exponent(Rational(3, 2)), Exponent(4)}) {
        std::vector<std::vector<std::size_t>> blocks = {{1, 2}, {3}, {5, 6, 7}};
        auto coeffs = ops::constant_average_coeffs(blocks, p);
        OperatorMatrix psi = ops::lp_average_isometry(blocks, coeffs, p, 8);
        CHECK(psi.domain().size() == 3);
        CHECK(psi.codomain().size() == 8);
        for (int k = 0; k < 5; ++k) {
            Eigen::VectorXd x = gaussian_vector(rng, 3);
            CHECK(oracle::lp(psi.entries() * x, p.to_double()) == doctest::Approx(oracle::lp(x, p.to_double())));
        }
    }
    CHECK_THROWS_AS(ops::lp_average_isometry({{2, 3}, {1}}, {{1, 0}, {1}}, Exponent(2)), Error);
}

TEST_CASE("diagonal projection norm") {
    Signature sig = Signature::cube(std::vector<Exponent>{2, 3}, 3, NormTag::projective);
    auto e = norms::operator_norm(ops::projection(ProjectionSpec::diagonal(), sig));
    CHECK(e.contains(1.0, 1e-9));
    CHECK(e.width() <= 1e-4);
}
