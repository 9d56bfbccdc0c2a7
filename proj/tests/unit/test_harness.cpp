#include "lptensor/core.hpp"
#include "lptensor/harness/harness.hpp"

#include <doctest.h>

using namespace lpt;
using namespace lpt::harness;

TEST_CASE("triangular sweep grows in the unbounded regime") {
    SweepOptions o;
    auto t = sweep_triangular(2, 2, {2, 3, 4}, o);
    REQUIRE(t.rows.size() == 3);
    for (std::size_t k = 1; k < t.rows.size(); ++k) {
        CHECK(t.rows[k].lower > t.rows[k - 1].lower);
        CHECK(t.rows[k].upper > t.rows[k - 1].upper);
    }
    CHECK(t.rows[0].lower == doctest::Approx(1.1547005).epsilon(1e-5));
}

TEST_CASE("rows beyond the solver limit are flagged, not dropped") {
    SweepOptions o;
    o.max_basis = 9;
    auto t = sweep_triangular(Exponent(Rational(3, 2)), Exponent(Rational(3, 2)), {2, 3, 4}, o);
    REQUIRE(t.rows.size() == 3);
    CHECK_FALSE(t.rows[1].flagged);
    CHECK(t.rows[2].flagged);
    CHECK(t.rows[2].note.find("solver limit") != std::string::npos);
    std::string csv = sweep_csv(t);
    CHECK(csv.rfind("n,lower,upper,certified,converged,flagged,note,seed\n", 0) == 0);
    CHECK(csv.find("\n4,") != std::string::npos);
}

TEST_CASE("sweeps are deterministic across thread counts") {
    SweepOptions one, many;
    one.threads = 1;
    many.threads = 3;
    auto a = sweep_triangular(4, 4, {2, 3, 4}, one);
    auto b = sweep_triangular(4, 4, {2, 3, 4}, many);
    CHECK(sweep_csv(a) == sweep_csv(b));
    CHECK(sweep_json(a) == sweep_json(b));
    CHECK(sweep_svg(a) == sweep_svg(b));
    auto ra = to_record(a, one), rb = to_record(b, one);
    CHECK(ra.rows == rb.rows);
}

TEST_CASE("svg output is self-contained") {
    auto t = sweep_triangular(2, 2, {2, 3}, {});
    std::string svg = sweep_svg(t);
    CHECK(svg.rfind("<svg xmlns=\"http://www.w3.org/2000/svg\"", 0) == 0);
    CHECK(svg.find("<polyline") != std::string::npos);
    CHECK(svg.find("href") == std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("experiment records") {
    ExperimentRecord r;
    r.id = "x";
    r.config = {{"p", "2"}};
    r.columns = {"a", "b"};
    r.rows = {{"1", "has,comma"}};
    r.started = now_iso8601();
    r.tool_version = version();
    CHECK(to_csv(r) == "a,b\n1,\"has,comma\"\n");
    std::string j = to_json(r);
    for (const char* key : {"\"id\"", "\"config\"", "\"rows\"", "\"timestamps\"", "\"version\""})
        CHECK(j.find(key) != std::string::npos);
    CHECK(r.started.size() == 20);
}

TEST_CASE("diagonal isometry") {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(4);
    e[2] = 1;
    auto t = diagonal_trial({2, 2}, e);
    CHECK(t.exact == 1.0);
    CHECK(t.lower == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(t.upper == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(t.deviation <= 1e-5);

    auto rep = verify_diagonal_isometry({3, 6}, 4, 5, 99);
    CHECK(rep.r == Exponent(2));
    CHECK(rep.trials.size() == 5);
    CHECK(rep.max_deviation <= 1e-4);
    auto again = verify_diagonal_isometry({3, 6}, 4, 5, 99);
    CHECK(again.max_deviation == rep.max_deviation);
}

TEST_CASE("acceptance suites") {
    CHECK_THROWS_AS(run_acceptance("everything"), UnsupportedError);
    auto rep = run_acceptance("classify");
    REQUIRE(rep.criteria.size() == 1);
    CHECK(rep.criteria[0].id == 7);
    CHECK(rep.passed());
    std::string j = to_json(rep);
    CHECK(j.find("\"seed\"") != std::string::npos);
    CHECK(suite_names().size() == 5);
}
