#include "oracles/oracles.hpp"

#include "lptensor/core.hpp"

#include <doctest.h>

#include <cstdlib>

using namespace lpt;

TEST_CASE("exponents parse and print exactly") {
    CHECK(Exponent::parse("3/2") == Exponent(Rational(3, 2)));
    CHECK(Exponent::parse("1.5") == Exponent(Rational(3, 2)));
    CHECK(Exponent::parse("6/4").str() == "3/2");
    CHECK(Exponent::parse("2").interchange() == "2/1");
    CHECK(Exponent::parse("inf").is_infinite());
    CHECK(Exponent::parse("∞").is_infinite());
    CHECK(conjugate(Exponent(2)) == Exponent(2));
    CHECK(conjugate(Exponent::parse("3/2")) == Exponent(3));
    CHECK(conjugate(Exponent(1)).is_infinite());
    CHECK(Exponent(1) < Exponent::parse("3/2"));
    CHECK(Exponent(100) < Exponent::infinity());
    CHECK_THROWS_AS(Exponent::parse("1/2"), DomainError);
    CHECK_THROWS_AS(Exponent::parse("x"), ParseError);
    CHECK_THROWS_AS(Exponent::parse("3/0"), ParseError);
    CHECK_THROWS_AS(Exponent::infinity().value(), DomainError);
}

TEST_CASE("diagonal exponent") {
    auto r = [](std::vector<Exponent> ps) { return diagonal_exponent(ps); };
    CHECK(r({2, 2}) == Exponent(1));
    CHECK(r({3, 6}) == Exponent(2));
    CHECK(r({4, 4}) == Exponent(2));
    CHECK(r({3, 3, 3}) == Exponent(1));
    CHECK(r({4, 4, 4}) == Exponent(Rational(4, 3)));
    CHECK(r({Exponent::infinity(), 5}) == Exponent(5));
}

TEST_CASE("subset exponents follow the definition") {
    std::vector<Exponent> ps = {2, 3, Exponent(Rational(7, 2))};
    auto got = subset_exponents(ps);
    CHECK(got.size() == 7);
    for (const auto& [a, r] : got) {
        Rational s = 0;
        for (auto i : a) s += Rational(1) / ps[i - 1].value();
        CHECK(r == (s >= 1 ? Exponent(1) : Exponent(Rational(1) / s)));
    }
    CHECK(got.at({2, 3}) == Exponent(Rational(21, 13)));
}

TEST_CASE("lp norms") {
    std::vector<double> v = {3, -4};
    CHECK(lp_norm(v, Exponent(2)) == doctest::Approx(5));
    CHECK(lp_norm(v, Exponent(1)) == doctest::Approx(7));
    CHECK(lp_norm(v, Exponent::infinity()) == doctest::Approx(4));
    Rng rng(5);
    Eigen::VectorXd x = gaussian_vector(rng, 9);
    std::vector<double> xs(x.data(), x.data() + x.size());
    CHECK(lp_norm(xs, 3.5) == doctest::Approx(oracle::lp(x, 3.5)).epsilon(1e-14));
    CHECK(parse_exponent_list("2, 3/2,inf").size() == 3);
    CHECK(format_exponent_list(parse_exponent_list("2,3/2")) == "2,3/2");
}

TEST_CASE("signature indexing round trips") {
    Signature sig({{2, 2}, {3, 3}, {4, Exponent::infinity()}}, NormTag::projective);
    CHECK(sig.size() == 24);
    for (std::size_t k = 0; k < sig.size(); ++k) CHECK(sig.linear(sig.multi_index(k)) == k);
    CHECK(sig.linear(MultiIndex{1, 1, 2}) == 1);
    CHECK(sig.linear(MultiIndex{2, 1, 1}) == 12);
    Signature d = sig.dual();
    CHECK(d.tag() == NormTag::injective);
    CHECK(d.exponent(0) == Exponent(2));
    CHECK(d.exponent(2) == Exponent(1));
    CHECK(d.dual() == sig);
    CHECK_THROWS_AS(sig.linear(MultiIndex{3, 1, 1}), DimensionError);
    CHECK_THROWS_AS(Signature({}, NormTag::injective), DimensionError);
    CHECK(parse_norm_tag("proj") == NormTag::projective);
}

TEST_CASE("multi-index block order") {
    CHECK(precedes(MultiIndex{1, 2}, MultiIndex{3, 4}));
    CHECK_FALSE(precedes(MultiIndex{1, 3}, MultiIndex{3, 4}));
    CHECK(MultiIndex{2, 5, 1}.magnitude() == 5);
    CHECK(MultiIndex{2, 5, 1}.min() == 1);
    std::size_t count = 0;
    std::vector<std::size_t> dims = {2, 3};
    for_each_multi_index(dims, [&](const MultiIndex&) { ++count; });
    CHECK(count == 6);
}

TEST_CASE("selections compose and check interlacing") {
    SubsetSelection s({{2, 4, 6}, {1, 3, 5}});
    SubsetSelection t({{1, 3}, {2, 3}});
    SubsetSelection st = s.compose(t);
    CHECK(st.maps() == std::vector<std::vector<std::size_t>>{{2, 6}, {3, 5}});
    CHECK(s.apply(MultiIndex{1, 2}) == MultiIndex{2, 3});
    CHECK(SubsetSelection({{1, 3}, {2, 4}}).preserves_order());
    CHECK_FALSE(SubsetSelection({{1, 2}, {3, 4}}).preserves_order());
    CHECK_THROWS_AS(SubsetSelection({{2, 1}}), DomainError);
    CHECK_THROWS_AS(SubsetSelection({{0, 1}}), DimensionError);
    CHECK(SubsetSelection::common(2, {1, 4}).maps()[1] == std::vector<std::size_t>{1, 4});
    CHECK(s.fits({6, 5}));
    CHECK_FALSE(s.fits({5, 5}));
}

TEST_CASE("epsilon schedules stay below their bound") {
    auto u = EpsilonSchedule::uniform(0.1, 30, 0.5);
    double sum = 0;
    for (std::size_t k = 0; k < 30; ++k) sum += u.cell(k);
    CHECK(sum <= u.bound() + 1e-15);
    auto g = EpsilonSchedule::geometric(0.1);
    sum = 0;
    for (std::size_t n = 1; n <= 40; ++n)
        for (std::size_t m = 1; m <= 40; ++m)
            if (n != m) sum += g.cell(n, m);
    CHECK(sum <= g.bound());
    CHECK(u.scaled(0.5).bound() == doctest::Approx(0.025));
    CHECK_THROWS_AS(EpsilonSchedule::uniform(0.0, 3), DomainError);
}

TEST_CASE("seeds") {
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) == derive_seed(1, 0));
    ::setenv("LP_TENSOR_SEED", "1234", 1);
    CHECK(default_seed() == 1234);
    ::setenv("LP_TENSOR_SEED", "12ab", 1);
    CHECK(default_seed() == kDefaultSeed);
    ::unsetenv("LP_TENSOR_SEED");
    CHECK(default_seed() == kDefaultSeed);
}

TEST_CASE("interchange round trip") {
    Rng rng(11);
    Signature sig({{2, Exponent(Rational(3, 2))}, {3, Exponent::infinity()}}, NormTag::injective);
    Tensor x(sig, gaussian_vector(rng, 6));
    Tensor y = tensor_from_json(tensor_to_json(x));
    CHECK(y.signature() == sig);
    CHECK(y.coeffs() == x.coeffs());

    Signature cod({{2, 2}}, NormTag::projective);
    OperatorMatrix op(sig, cod, Eigen::MatrixXd::NullaryExpr(2, 6, [&] { return gaussian_vector(rng, 1)[0]; }));
    OperatorMatrix back = operator_from_json(operator_to_json(op));
    CHECK(back.domain() == sig);
    CHECK(back.codomain() == cod);
    CHECK(back.entries() == op.entries());
    CHECK_THROWS_AS(tensor_from_json("{\"signature\": [[2, \"2/1\"]], \"norm\": \"projective\", \"coeffs\": [1]}"),
                    Error);
    CHECK_THROWS_AS(tensor_from_json("not json"), ParseError);
}

TEST_CASE("tensors and operators") {
    Signature sig = Signature::uniform(2, 2, 2, NormTag::projective);
    Tensor e = Tensor::basis(sig, MultiIndex{2, 1});
    CHECK(e.coeffs()[2] == 1.0);
    Tensor el = Tensor::elementary(sig, {Eigen::Vector2d(1, 2), Eigen::Vector2d(3, 4)});
    CHECK(el.coeffs() == Eigen::Vector4d(3, 4, 6, 8));
    OperatorMatrix m = OperatorMatrix::multiplier(sig, Eigen::Vector4d(1, 2, 3, 4));
    CHECK(m.apply(el).coeffs() == Eigen::Vector4d(3, 8, 18, 32));
    CHECK(m.mass() == 10.0);
    OperatorMatrix a = m.adjoint();
    CHECK(a.domain() == sig.dual());
    CHECK((compose(m, m) - m).entries().cwiseAbs().maxCoeff() > 0);
}
