#include "lptensor/classify/classify.hpp"
#include "lptensor/core.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace lpt;
using namespace lpt::classify;

namespace {

std::vector<Exponent> ps(std::initializer_list<const char*> items) {
    std::vector<Exponent> out;
    for (const char* s : items) out.push_back(Exponent::parse(s));
    return out;
}

std::vector<Exponent> random_tuple(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> len(1, 4), den(1, 5);
    std::vector<Exponent> out(std::size_t(len(rng)));
    for (auto& p : out) {
        int d = den(rng);
        p = Exponent(Rational(std::uniform_int_distribution<int>(d + 1, 7 * d)(rng), d));
    }
    return out;
}

bool grounded_on_pairwise(const Verdict& v) {
    return v.ground == Ground::pairwise_reciprocals_at_most_one ||
           std::find(v.supporting.begin(), v.supporting.end(), Ground::pairwise_reciprocals_at_most_one) != v.supporting.end();
}

}  // namespace

TEST_CASE("wire tags") {
    CHECK(tag(Ground::pairwise_reciprocals_at_most_one) == "Thm3.1");
    CHECK(tag(Ground::equal_exponents) == "Thm3.3");
    CHECK(tag(Ground::dual_pairwise_reciprocals_at_least_one) == "Thm3.4");
    CHECK(tag(Ground::subset_exponent_avoidance) == "Thm4.2");
    CHECK(tag(Ground::dual_unit_diagonal_exponent) == "Thm5.1");
    CHECK(to_string(Answer::unknown) == "unknown");
}

TEST_CASE("primarity golden table") {
    auto v = is_primary(ps({"2", "3"}));
    CHECK(v.answer == Answer::yes);
    CHECK(v.ground == Ground::pairwise_reciprocals_at_most_one);
    CHECK(*v.reciprocal_sum == Rational(5, 6));

    for (const char* p : {"3/2", "2", "3"})
        for (std::size_t n = 1; n <= 3; ++n) {
            std::vector<Exponent> eq(n, Exponent::parse(p));
            auto w = is_primary(eq);
            CHECK(w.answer == Answer::yes);
            CHECK(w.ground == Ground::equal_exponents);
        }

    auto no = is_primary(ps({"2", "3/2"}));
    CHECK(no.answer == Answer::no);
    CHECK(no.ground == Ground::subset_exponent_avoidance);
    CHECK(no.pair == std::make_pair(std::size_t{1}, std::size_t{2}));

    auto gap = is_primary(ps({"2", "2", "3/2"}));
    CHECK(gap.answer == Answer::unknown);
    CHECK(gap.ground == Ground::none);

    // l_1 (x)^ l_1 is admitted through equal exponents only
    CHECK(is_primary(ps({"1", "1"})).answer == Answer::yes);
    CHECK_THROWS_AS(is_primary(ps({"1", "2"})), DomainError);
    CHECK_THROWS_AS(is_primary(ps({"inf", "2"})), DomainError);
    CHECK_THROWS_AS(is_primary(std::vector<Exponent>{}), DomainError);
}

TEST_CASE("dual primarity") {
    auto a = dual_is_primary(ps({"2", "2"}));
    CHECK(a.answer == Answer::yes);
    CHECK(a.ground == Ground::dual_unit_diagonal_exponent);
    auto b = dual_is_primary(ps({"4", "4"}));
    CHECK(b.answer == Answer::yes);
    CHECK(b.ground == Ground::dual_pairwise_reciprocals_at_least_one);
    CHECK(dual_is_primary(ps({"6", "6"})).ground == Ground::dual_pairwise_reciprocals_at_least_one);
    CHECK(dual_is_primary(ps({"4", "3/2"})).ground == Ground::dual_pairwise_reciprocals_at_least_one);
}

TEST_CASE("property: the dual criteria cover every tuple in range") {
    // a pair with 1/p_i + 1/p_j > 1 forces r = 1; otherwise every dual pair has sum >= 1
    std::mt19937_64 rng(44);
    for (int k = 0; k < 500; ++k) {
        auto t = random_tuple(rng);
        auto v = dual_is_primary(t);
        CHECK(v.answer == Answer::yes);
        CHECK((v.ground == Ground::dual_unit_diagonal_exponent) == (diagonal_exponent(t) == Exponent(1)));
    }
}

TEST_CASE("reflexivity and triangular boundedness") {
    CHECK(is_reflexive(ps({"4", "4"})).answer == Answer::yes);
    CHECK(is_reflexive(ps({"2", "2"})).answer == Answer::no);
    CHECK(is_reflexive(ps({"3", "3", "3"})).answer == Answer::no);
    CHECK(triangular_bounded(Exponent::parse("3/2"), Exponent::parse("3/2")).answer == Answer::yes);
    CHECK(triangular_bounded(2, 2).answer == Answer::no);
    CHECK(triangular_bounded(2, 3).answer == Answer::no);
}

TEST_CASE("embeddings") {
    auto v = embeds_lp(Exponent::parse("6/5"), ps({"2", "3"}));
    CHECK(v.answer == Answer::yes);
    CHECK(*v.subset == IndexSet{1, 2});
    auto w = embeds_lp(2, ps({"2", "2"}));
    CHECK(w.answer == Answer::yes);
    CHECK(*w.subset == IndexSet{1});
    CHECK(embeds_lp(3, ps({"2", "2"})).answer == Answer::no);
    CHECK_THROWS_AS(embeds_lp(1, ps({"2", "3"})), DomainError);
}

TEST_CASE("property: embeds_lp accepts every r_A in range") {
    std::mt19937_64 rng(41);
    for (int k = 0; k < 200; ++k) {
        auto t = random_tuple(rng);
        for (const auto& [a, r] : subset_exponents(t)) {
            if (r == Exponent(1)) continue;
            auto v = embeds_lp(r, t);
            CHECK(v.answer == Answer::yes);
            CHECK(*v.exponent == r);
        }
    }
}

TEST_CASE("property: verdicts do not depend on the order of the exponents") {
    std::mt19937_64 rng(42);
    for (int k = 0; k < 300; ++k) {
        auto t = random_tuple(rng);
        auto base = is_primary(t);
        auto dual = dual_is_primary(t);
        auto u = t;
        std::shuffle(u.begin(), u.end(), rng);
        CHECK(is_primary(u).answer == base.answer);
        CHECK(is_primary(u).ground == base.ground);
        CHECK(dual_is_primary(u).answer == dual.answer);
        CHECK(dual_is_primary(u).ground == dual.ground);
        CHECK(is_reflexive(u).answer == is_reflexive(t).answer);
    }
}

TEST_CASE("property: pairwise and avoidance grounds never meet") {
    std::mt19937_64 rng(43);
    std::size_t yes = 0, no = 0, unknown = 0;
    for (int k = 0; k < 2000; ++k) {
        auto t = random_tuple(rng);
        auto v = is_primary(t);
        CHECK_FALSE((grounded_on_pairwise(v) && v.ground == Ground::subset_exponent_avoidance));
        CHECK(justification_holds(v, t));
        yes += v.answer == Answer::yes;
        no += v.answer == Answer::no;
        unknown += v.answer == Answer::unknown;
    }
    // the sample reaches all three answers
    CHECK(yes > 0);
    CHECK(no > 0);
    CHECK(unknown > 0);
}

TEST_CASE("verdict json") {
    std::string j = to_json(is_primary(ps({"2", "3/2"})));
    CHECK(j.find("\"Thm4.2\"") != std::string::npos);
    CHECK(j.find("\"no\"") != std::string::npos);
}
