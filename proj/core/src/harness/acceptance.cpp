#include "lptensor/harness/harness.hpp"

#include "lptensor/classify/classify.hpp"
#include "lptensor/compress/compress.hpp"
#include "lptensor/core/error.hpp"
#include "lptensor/operators/operators.hpp"

#include <Eigen/SVD>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace lpt::harness {

using nlohmann::json;

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

std::string seed_note(std::uint64_t seed) { return " (seed " + std::to_string(seed) + ")"; }

void fail(CriterionResult& r, std::string msg) { r.failures.push_back(std::move(msg)); }

double spectral_norm(const Eigen::MatrixXd& m) {
    if (m.size() == 0) return 0.0;
    return Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues()(0);
}

double trace_norm(const Eigen::MatrixXd& m) {
    if (m.size() == 0) return 0.0;
    return Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues().sum();
}

// Row-major coefficient vector of an m x n matrix.
Eigen::MatrixXd as_matrix(const Eigen::VectorXd& v, std::size_t m, std::size_t n) {
    Eigen::MatrixXd a(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) a(Eigen::Index(i), Eigen::Index(j)) = v[Eigen::Index(i * n + j)];
    return a;
}

std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

std::vector<std::size_t> random_increasing(Rng& rng, std::size_t ground, std::size_t size) {
    std::vector<std::size_t> all(ground);
    for (std::size_t i = 0; i < ground; ++i) all[i] = i + 1;
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(size);
    std::sort(all.begin(), all.end());
    return all;
}

// ---- norms ----------------------------------------------------------------

void diagonal_projection_norm(CriterionResult& r) {
    const std::vector<std::vector<Exponent>> cases = {{2, 2}, {2, 3}, {2, 2, 2}};
    std::string detail;
    for (const auto& ps : cases) {
        Signature sig = Signature::cube(ps, 3, NormTag::projective);
        norms::NormOptions o;
        o.seed = r.seed;
        norms::NormEstimate e = norms::operator_norm(ops::projection(ops::ProjectionSpec::diagonal(), sig), o);
        bool ok = e.contains(1.0, 1e-9) && e.width() <= 1e-4;
        if (!ok)
            fail(r, "ps=(" + format_exponent_list(ps) + "): [" + fmt(e.lower) + ", " + fmt(e.upper) + "]" +
                        seed_note(r.seed));
        detail += "(" + format_exponent_list(ps) + ") width " + fmt(e.width()) + "; ";
    }
    r.detail = detail + "contains 1 within 1e-9, width <= 1e-4";
}

void diagonal_isometry(CriterionResult& r) {
    const std::vector<std::vector<Exponent>> cases = {{2, 2}, {3, 6}, {4, 4}};
    double worst = 0.0;
    for (std::size_t c = 0; c < cases.size(); ++c) {
        std::uint64_t s = derive_seed(r.seed, c);
        DiagonalReport rep = verify_diagonal_isometry(cases[c], 4, 20, s);
        worst = std::max(worst, rep.max_deviation);
        for (std::size_t k = 0; k < rep.trials.size(); ++k)
            if (!(rep.trials[k].deviation <= 1e-4))
                fail(r, "ps=(" + format_exponent_list(cases[c]) + ") trial " + std::to_string(k) + ": deviation " +
                            fmt(rep.trials[k].deviation) + seed_note(s));
    }
    r.detail = "60 trials, max relative deviation " + fmt(worst) + " (limit 1e-4)";
}

void matrix_oracles(CriterionResult& r) {
    double worst = 0.0;
    for (std::size_t k = 0; k < 50; ++k) {
        std::uint64_t s = derive_seed(r.seed, k);
        Rng rng(s);
        std::size_t m = uniform_index(rng, 1, 6), n = uniform_index(rng, 1, 6);
        Signature sig({{m, 2}, {n, 2}}, NormTag::projective);
        Tensor x(sig, gaussian_vector(rng, Eigen::Index(m * n)));
        Eigen::MatrixXd a = as_matrix(x.coeffs(), m, n);
        const double tr = trace_norm(a), sp = spectral_norm(a);
        norms::NormOptions o;
        o.seed = s;
        norms::NormEstimate pe = norms::projective_norm(x, o);
        norms::NormEstimate ie = norms::injective_norm(x, o);
        worst = std::max({worst, std::max(0.0, pe.lower - tr), std::max(0.0, tr - pe.upper),
                          std::max(0.0, ie.lower - sp), std::max(0.0, sp - ie.upper)});
        if (!pe.contains(tr, 1e-5))
            fail(r, std::to_string(m) + "x" + std::to_string(n) + " projective [" + fmt(pe.lower) + ", " +
                        fmt(pe.upper) + "] vs trace norm " + fmt(tr) + seed_note(s));
        if (!ie.contains(sp, 1e-5))
            fail(r, std::to_string(m) + "x" + std::to_string(n) + " injective [" + fmt(ie.lower) + ", " +
                        fmt(ie.upper) + "] vs spectral norm " + fmt(sp) + seed_note(s));
    }
    r.detail = "50 matrices, worst distance from bracket " + fmt(worst) + " (limit 1e-5)";
}

// ---- operators ------------------------------------------------------------

void triangular_dichotomy(CriterionResult& r) {
    const std::vector<std::size_t> ns = {2, 3, 4, 5, 6};
    SweepOptions so;
    so.norm.seed = r.seed;
    std::string detail;
    for (Exponent p : {Exponent(2), Exponent(4)}) {
        SweepTable t = sweep_triangular(p, p, ns, so);
        bool ok = true;
        for (std::size_t k = 0; k < t.rows.size(); ++k) {
            if (t.rows[k].flagged) ok = false;
            if (k > 0 && !(t.rows[k].lower > t.rows[k - 1].lower)) ok = false;
        }
        ok = ok && t.rows.back().lower > t.rows.front().upper;
        if (!ok) fail(r, "(" + p.str() + "," + p.str() + "): lower bounds not increasing past ||T_2||" + seed_note(r.seed));
        detail += "(" + p.str() + "," + p.str() + ") " + fmt(t.rows.front().upper) + " -> " + fmt(t.rows.back().lower) + "; ";
    }
    Exponent h = Exponent::parse("3/2");
    SweepTable t = sweep_triangular(h, h, ns, so);
    double ratio = t.rows[4].upper / t.rows[3].upper;
    if (t.rows[3].flagged || t.rows[4].flagged || !(ratio <= 1.05))
        fail(r, "(3/2,3/2): growth ratio " + fmt(ratio) + seed_note(r.seed));
    r.detail = detail + "(3/2,3/2) ratio n=5->6 " + fmt(ratio) + " (limit 1.05)";
}

ops::IntMatrix to_int(const Eigen::MatrixXd& m) { return m.cast<std::int64_t>(); }

void symmetrizer_identities(CriterionResult& r) {
    for (std::size_t m : {2u, 3u}) {
        for (std::size_t n : {1u, 2u}) {
            Signature big = Signature::uniform(m, m * n, 2, NormTag::projective);
            SubsetSelection sigma = ops::disjointify_selection(m, n, m * n);
            Signature small = ops::compressed_signature(big, sigma);
            const std::int64_t f = ops::factorial(m);
            ops::IntMatrix c = ops::symmetrizer_counts(m, big);
            ops::IntMatrix j = to_int(ops::embed_J(sigma, small, big).entries());
            ops::IntMatrix k = to_int(ops::compress_K(sigma, big, small).entries());
            ops::IntMatrix id = ops::IntMatrix::Identity(small.size(), small.size());
            const std::string where = "m=" + std::to_string(m) + ", n=" + std::to_string(n);
            // m! K S J = I and (m! S)^2 = m! (m! S), both in integers.
            if (k * c * j != id) fail(r, where + ": K (m!S) J is not the identity");
            if (c * c != f * c) fail(r, where + ": S is not idempotent");
            // The floating operator carries the same coefficients: 1/m! on the diagonal, 0 elsewhere.
            Eigen::MatrixXd ks = ops::compress_operator(ops::symmetrizer(m, big), sigma).entries();
            Eigen::MatrixXd want = Eigen::MatrixXd::Identity(ks.rows(), ks.cols()) * (1.0 / double(f));
            if (ks != want) fail(r, where + ": K S J differs from I/m! in floating coefficients");
        }
    }
    r.detail = "m = 2, 3 on dims 1 and 2 per slot; integer identities, zero tolerance";
}

void transpose_compression(CriterionResult& r) {
    for (std::size_t d = 2; d <= 12; d += 2) {
        Signature big = Signature::uniform(2, d, 3, NormTag::projective);
        SubsetSelection sigma = ops::disjointify_selection(2, d / 2, d);
        Signature small = ops::compressed_signature(big, sigma);
        OperatorMatrix prod = compose(ops::compress_K(sigma, big, small),
                                      compose(ops::transpose_operator(big), ops::embed_J(sigma, small, big)));
        if ((prod.entries().array() != 0.0).any()) fail(r, "d=" + std::to_string(d) + ": K Phi J has a nonzero entry");
    }
    r.detail = "odd/even selection, d = 2..12 even, exact zero";
}

void composition_laws(CriterionResult& r) {
    auto same = [](const OperatorMatrix& a, const OperatorMatrix& b) {
        return a.domain() == b.domain() && a.codomain() == b.codomain() && a.entries() == b.entries();
    };
    for (std::size_t k = 0; k < 100; ++k) {
        std::uint64_t s = derive_seed(r.seed, k);
        Rng rng(s);
        std::size_t order = uniform_index(rng, 1, 3);
        std::size_t cap = order == 3 ? 5 : 7;
        std::vector<Factor> fs;
        std::vector<std::vector<std::size_t>> outer, inner;
        for (std::size_t i = 0; i < order; ++i) {
            std::size_t big = uniform_index(rng, 1, cap);
            std::size_t mid = uniform_index(rng, 1, big);
            std::size_t small = uniform_index(rng, 1, mid);
            fs.push_back({big, uniform_index(rng, 0, 1) ? Exponent(2) : Exponent::parse("5/2")});
            outer.push_back(random_increasing(rng, big, mid));
            inner.push_back(random_increasing(rng, mid, small));
        }
        Signature big_sig(fs, uniform_index(rng, 0, 1) ? NormTag::projective : NormTag::injective);
        SubsetSelection sigma(outer), psi(inner), both = sigma.compose(psi);
        Signature mid_sig = ops::compressed_signature(big_sig, sigma);
        Signature small_sig = ops::compressed_signature(mid_sig, psi);

        OperatorMatrix js = ops::embed_J(sigma, mid_sig, big_sig), jp = ops::embed_J(psi, small_sig, mid_sig);
        OperatorMatrix ks = ops::compress_K(sigma, big_sig, mid_sig), kp = ops::compress_K(psi, mid_sig, small_sig);
        const std::string where = " for sigma=" + sigma.str() + ", psi=" + psi.str() + seed_note(s);
        if (!same(compose(js, jp), ops::embed_J(both, small_sig, big_sig))) fail(r, "J_sigma J_psi != J_{sigma psi}" + where);
        if (!same(compose(kp, ks), ops::compress_K(both, big_sig, small_sig)))
            fail(r, "K_psi K_sigma != K_{sigma psi}" + where);
        if (!same(compose(ks, js), OperatorMatrix::identity(mid_sig))) fail(r, "K_sigma J_sigma != I" + where);
        if (!same(js.adjoint(), ops::compress_K(sigma, big_sig.dual(), mid_sig.dual())))
            fail(r, "(J_sigma)* != K_sigma on the dual spaces" + where);
    }
    r.detail = "100 random selection pairs, orders 1..3, exact equality of signatures and coefficients";
}

// ---- classify -------------------------------------------------------------

// r_A for every nonempty A, straight from the definition.
std::set<Exponent> oracle_subset_exponents(const std::vector<Exponent>& ps) {
    std::set<Exponent> out;
    for (std::size_t mask = 1; mask < (std::size_t{1} << ps.size()); ++mask) {
        Rational s = 0;
        for (std::size_t i = 0; i < ps.size(); ++i)
            if (mask >> i & 1) s += Rational(1) / ps[i].value();
        out.insert(s >= 1 ? Exponent(1) : Exponent(Rational(1) / s));
    }
    return out;
}

void classification_table(CriterionResult& r) {
    using classify::Answer;
    using classify::Ground;
    auto expect = [&](const std::vector<Exponent>& ps, const classify::Verdict& v, Answer a, Ground g,
                      const std::string& what) {
        if (v.answer != a || (g != Ground::none && v.ground != g))
            fail(r, what + " (" + format_exponent_list(ps) + "): got " + classify::to_string(v.answer) + " [" +
                        classify::tag(v.ground) + "]");
    };
    expect({2, 3}, classify::is_primary(std::vector<Exponent>{2, 3}), Answer::yes,
           Ground::pairwise_reciprocals_at_most_one, "is_primary");
    for (const char* p : {"3/2", "2", "3"})
        for (std::size_t n = 1; n <= 3; ++n) {
            std::vector<Exponent> ps(n, Exponent::parse(p));
            expect(ps, classify::is_primary(ps), Answer::yes, Ground::equal_exponents, "is_primary");
        }
    std::vector<Exponent> avoid = {2, Exponent::parse("3/2")};
    expect(avoid, classify::is_primary(avoid), Answer::no, Ground::subset_exponent_avoidance, "is_primary");
    std::vector<Exponent> gap = {2, 2, Exponent::parse("3/2")};
    expect(gap, classify::is_primary(gap), Answer::unknown, Ground::none, "is_primary");
    expect({2, 2}, classify::dual_is_primary(std::vector<Exponent>{2, 2}), Answer::yes,
           Ground::dual_unit_diagonal_exponent, "dual_is_primary");

    std::size_t checked = 0;
    for (std::size_t k = 0; k < 100; ++k) {
        std::uint64_t s = derive_seed(r.seed, k);
        Rng rng(s);
        std::size_t n = uniform_index(rng, 2, 4);
        std::vector<Exponent> ps;
        for (std::size_t i = 0; i < n; ++i) {
            long long den = static_cast<long long>(uniform_index(rng, 1, 4));
            long long num = static_cast<long long>(uniform_index(rng, std::size_t(den) + 1, std::size_t(6 * den)));
            ps.emplace_back(Rational(num, den));
        }
        std::set<Exponent> want = oracle_subset_exponents(ps);
        // Candidates: every r_A, its neighbours and the p_i themselves.
        std::set<Exponent> candidates = want;
        for (const auto& e : want) {
            candidates.insert(Exponent(e.value() + Rational(1, 97)));
            if (e.value() - Rational(1, 97) > 1) candidates.insert(Exponent(e.value() - Rational(1, 97)));
        }
        for (long long a = 2; a <= 7; ++a) candidates.insert(Exponent(a));
        const std::string where = " for ps=(" + format_exponent_list(ps) + ")" + seed_note(s);
        for (const auto& p : candidates) {
            if (p == Exponent(1)) {
                bool rejected = false;
                try {
                    (void)classify::embeds_lp(p, ps);
                } catch (const DomainError&) {
                    rejected = true;
                }
                if (!rejected) fail(r, "embeds_lp accepted p = 1" + where);
                continue;
            }
            classify::Verdict v = classify::embeds_lp(p, ps);
            bool yes = v.answer == Answer::yes;
            if (yes != want.contains(p)) fail(r, "embeds_lp(" + p.str() + ") = " + classify::to_string(v.answer) + where);
            if (yes && (!v.exponent || *v.exponent != p)) fail(r, "embeds_lp(" + p.str() + ") witness mismatch" + where);
            ++checked;
        }
    }
    r.detail = "golden verdicts plus " + std::to_string(checked) + " embeds_lp queries over 100 tuples; exact";
}

// ---- compress -------------------------------------------------------------

OperatorMatrix swap_of(const Signature& sig) { return ops::transpose_operator(sig); }

void pipeline_soundness(CriterionResult& r) {
    const double eps = 0.1;
    Signature sig = Signature::uniform(2, 6, 3, NormTag::projective);
    const auto dim = Eigen::Index(sig.size());
    OperatorMatrix id = OperatorMatrix::identity(sig);

    auto run = [&](const OperatorMatrix& phi, std::uint64_t s) {
        compress::CompressOptions o;
        o.norm.seed = s;
        return compress::extract_multiplier(phi, eps, o);
    };
    // Independent re-measurement: explicit K Phi J products, a second seed, and the rigorous
    // [max |entry|, mass] bracket.
    auto reverify = [&](const OperatorMatrix& phi, const compress::CompressionResult& res, std::uint64_t s,
                        const std::string& name) {
        if (!res.success) {
            if (res.failure.empty() || res.deepest_step.empty())
                fail(r, name + ": failure without a reason" + seed_note(s));
            return;
        }
        Signature small = ops::compressed_signature(sig, res.sigma);
        OperatorMatrix d = compose(ops::compress_K(res.sigma, sig, small), compose(phi, ops::embed_J(res.sigma, small, sig))) -
                           res.lambda * OperatorMatrix::identity(small);
        norms::NormOptions o;
        o.seed = derive_seed(s, 7777);
        norms::NormEstimate again = norms::operator_norm(d, o);
        const double maxabs = d.entries().cwiseAbs().maxCoeff(), mass = d.mass();
        const double tol = 1e-12 * std::max(1.0, mass);
        bool ok = std::abs(res.residual.lower - maxabs) <= tol && std::abs(res.residual.upper - mass) <= tol &&
                  res.residual.contains(again.lower, tol) && res.residual.upper < eps;
        if (!ok)
            fail(r, name + ": residual [" + fmt(res.residual.lower) + ", " + fmt(res.residual.upper) +
                        "] not confirmed by [" + fmt(maxabs) + ", " + fmt(mass) + "] and ascent value " +
                        fmt(again.lower) + seed_note(s));
    };

    std::vector<std::pair<std::string, OperatorMatrix>> structured;
    structured.emplace_back("identity", id);
    structured.emplace_back("multiplier -0.5", -0.5 * id);
    Eigen::VectorXd m(dim);
    for (Eigen::Index a = 0; a < dim; ++a) {
        MultiIndex alpha = sig.multi_index(std::size_t(a));
        m[a] = (alpha[0] >= 5 || alpha[1] >= 5) ? 1.7 : 0.7;
    }
    structured.emplace_back("multiplier 0.7/1.7", OperatorMatrix::multiplier(sig, m));
    structured.emplace_back("symmetrizer", ops::symmetrizer(2, sig));
    structured.emplace_back("transpose", swap_of(sig));
    for (std::size_t k = 0; k < structured.size(); ++k) {
        std::uint64_t s = derive_seed(r.seed, 100 + k);
        auto res = run(structured[k].second, s);
        reverify(structured[k].second, res, s, structured[k].first);
        if (!res.success || !(res.residual.upper <= 1e-6))
            fail(r, structured[k].first + ": expected success with residual <= 1e-6, got " +
                        (res.success ? fmt(res.residual.upper) : res.failure) + seed_note(s));
    }

    std::size_t successes = 0;
    for (std::size_t k = 0; k < 50; ++k) {
        std::uint64_t s = derive_seed(r.seed, k);
        Rng rng(s);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        Eigen::MatrixXd g = Eigen::MatrixXd::NullaryExpr(dim, dim, [&] { return u(rng); });
        OperatorMatrix phi;
        switch (k % 3) {
            case 0: phi = OperatorMatrix(sig, sig, g / double(dim)); break;  // dense, expected to fail
            case 1: phi = 2.0 * u(rng) * id + std::pow(10.0, -5.0 - 2.0 * std::abs(u(rng))) * OperatorMatrix(sig, sig, g); break;
            default:
                phi = u(rng) * id + u(rng) * swap_of(sig) +
                      std::pow(10.0, -5.0 - 2.0 * std::abs(u(rng))) * OperatorMatrix(sig, sig, g);
        }
        auto res = run(phi, s);
        successes += res.success;
        reverify(phi, res, s, "random #" + std::to_string(k));
    }
    r.detail = "structured family 5/5 expected; random: " + std::to_string(successes) +
               "/50 succeeded and were re-measured, the rest failed with a reason";
}

// sup over the orthogonal group of ||D X||_2, D acting on 2x2 matrices with the
// spectral norm. The extreme points of that unit ball are the orthogonal matrices; the
// grid misses the sup by at most a factor 1/(1 - pi/G).
std::pair<double, double> spectral_operator_norm_2x2(const OperatorMatrix& d, int grid = 4096) {
    double best = 0.0;
    for (int k = 0; k < grid; ++k) {
        double t = 2.0 * std::numbers::pi * k / grid, c = std::cos(t), s = std::sin(t);
        for (double flip : {1.0, -1.0}) {
            Eigen::Vector4d x(c, -flip * s, s, flip * c);
            Eigen::VectorXd y = d.entries() * x;
            best = std::max(best, spectral_norm(as_matrix(y, 2, 2)));
        }
    }
    return {best, best / (1.0 - std::numbers::pi / grid)};
}

void ramsey_soundness(CriterionResult& r) {
    const double eps = 0.1, k_bound = 2.0;
    const std::size_t n = 2;
    Signature sig = Signature::uniform(2, 12, 2, NormTag::injective);
    const auto dim = Eigen::Index(sig.size());
    OperatorMatrix id = OperatorMatrix::identity(sig), sw = ops::transpose_operator(sig);

    std::size_t successes = 0;
    auto check = [&](const OperatorMatrix& t, std::uint64_t s, const std::string& name, bool must_succeed) {
        compress::CompressOptions o;
        o.norm.seed = s;
        auto res = compress::ramsey_diagonalize(t, n, eps, k_bound, o);
        if (!(res.cluster_width <= eps)) fail(r, name + ": cluster width " + fmt(res.cluster_width) + seed_note(s));
        if (must_succeed && (!res.success || !(res.residual.upper <= 1e-6)))
            fail(r, name + ": expected residual <= 1e-6, got " + (res.success ? fmt(res.residual.upper) : res.failure) +
                        seed_note(s));
        if (!res.success) {
            if (res.failure.empty()) fail(r, name + ": failure without a reason" + seed_note(s));
            return;
        }
        ++successes;
        Signature small = ops::compressed_signature(sig, res.sigma);
        OperatorMatrix d = compose(ops::compress_K(res.sigma, sig, small), compose(t, ops::embed_J(res.sigma, small, sig))) -
                           res.lambda * OperatorMatrix::identity(small);
        auto [lo, hi] = spectral_operator_norm_2x2(d);
        bool ok = lo <= res.residual.upper + 1e-9 && res.residual.lower <= hi + 1e-9 && lo < eps;
        if (!ok)
            fail(r, name + ": residual [" + fmt(res.residual.lower) + ", " + fmt(res.residual.upper) +
                        "] vs oracle [" + fmt(lo) + ", " + fmt(hi) + "]" + seed_note(s));
    };

    check(id, derive_seed(r.seed, 100), "identity", true);
    check(sw, derive_seed(r.seed, 101), "transpose", true);
    for (std::size_t k = 0; k < 20; ++k) {
        std::uint64_t s = derive_seed(r.seed, k);
        Rng rng(s);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        Eigen::MatrixXd e = Eigen::MatrixXd::Zero(dim, dim);
        std::size_t nnz = uniform_index(rng, 0, 12);
        for (std::size_t z = 0; z < nnz; ++z)
            e(Eigen::Index(uniform_index(rng, 0, std::size_t(dim) - 1)),
              Eigen::Index(uniform_index(rng, 0, std::size_t(dim) - 1))) += 0.05 * u(rng);
        OperatorMatrix t = u(rng) * id + 0.5 * u(rng) * sw + OperatorMatrix(sig, sig, e);
        double bound = compress::norm_upper_bound(t);
        if (bound > k_bound) t = (k_bound / bound) * t;
        if (!(compress::norm_upper_bound(t) <= k_bound * (1 + 1e-12))) {
            fail(r, "random #" + std::to_string(k) + ": could not certify ||T|| <= 2" + seed_note(s));
            continue;
        }
        check(t, s, "random #" + std::to_string(k), false);
    }
    r.detail = std::to_string(successes) + "/22 runs succeeded, each residual confirmed on the orthogonal group";
}

void subspace_avoidance(CriterionResult& r) {
    const double eps = 0.3;
    const std::size_t m = 12;
    Signature sig = Signature::uniform(2, m, 2, NormTag::injective);
    const auto dim = Eigen::Index(sig.size());
    std::size_t successes = 0;
    for (std::size_t k = 0; k < 20; ++k) {
        std::uint64_t s = derive_seed(r.seed, k);
        Rng rng(s);
        std::vector<Tensor> basis;
        for (int b = 0; b < 2; ++b) {
            Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
            if (k % 2 == 0) {
                v = gaussian_vector(rng, dim);
            } else {
                std::size_t nnz = uniform_index(rng, 1, 4);
                for (std::size_t z = 0; z < nnz; ++z)
                    v[Eigen::Index(uniform_index(rng, 0, std::size_t(dim) - 1))] += gaussian_vector(rng, 1)[0];
            }
            basis.emplace_back(sig, v);
        }
        compress::CompressOptions o;
        o.norm.seed = s;
        auto res = compress::avoid_subspace_block(basis, 2, eps, o);
        if (!res.success) {
            if (res.failure.empty()) fail(r, "E #" + std::to_string(k) + ": failure without a reason" + seed_note(s));
            continue;
        }
        ++successes;
        // Finer net on span(E) with spectral norms from an SVD.
        Eigen::MatrixXd e(dim, 2);
        e << basis[0].coeffs(), basis[1].coeffs();
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(e);
        Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(dim, 2);
        double worst = 0.0;
        const int grid = 8192;
        for (int g = 0; g < grid; ++g) {
            double t = std::numbers::pi * (g + 0.25) / grid;
            Eigen::VectorXd x = std::cos(t) * q.col(0) + std::sin(t) * q.col(1);
            double denom = spectral_norm(as_matrix(x, m, m));
            if (denom == 0.0) continue;
            worst = std::max(worst, spectral_norm(as_matrix(res.q.entries() * x, m, m)) / denom);
        }
        if (!(worst < eps))
            fail(r, "E #" + std::to_string(k) + ": block " + SubsetSelection::common(1, res.block).str() +
                        " certificate " + fmt(res.certificate) + " but finer net reaches " + fmt(worst) + seed_note(s));
    }
    r.detail = std::to_string(successes) + "/20 blocks found and re-verified on an 8192-point net; the rest failed with a reason";
}

struct Criterion {
    int id;
    const char* suite;
    const char* title;
    double limit;
    void (*run)(CriterionResult&);
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all = {
        {1, "norms", "diagonal projection has norm 1", 120.0, diagonal_projection_norm},
        {2, "norms", "diagonal tensors carry the l_r norm", 0.0, diagonal_isometry},
        {3, "norms", "trace and spectral norm oracles", 0.0, matrix_oracles},
        {4, "operators", "triangular projection dichotomy", 600.0, triangular_dichotomy},
        {5, "operators", "symmetrizer identities", 0.0, symmetrizer_identities},
        {6, "operators", "transpose compresses to zero", 0.0, transpose_compression},
        {7, "classify", "classification golden table", 0.0, classification_table},
        {8, "compress", "multiplier pipeline soundness", 900.0, pipeline_soundness},
        {9, "compress", "Ramsey diagonalization soundness", 0.0, ramsey_soundness},
        {10, "compress", "subspace avoidance soundness", 0.0, subspace_avoidance},
        {11, "operators", "selection composition laws", 0.0, composition_laws},
    };
    return all;
}

}  // namespace

bool AcceptanceReport::passed() const {
    return std::all_of(criteria.begin(), criteria.end(), [](const CriterionResult& c) { return c.passed; });
}

std::vector<std::string> suite_names() { return {"norms", "operators", "classify", "compress", "all"}; }

AcceptanceReport run_acceptance(const std::string& suite, const AcceptanceOptions& opts) {
    auto names = suite_names();
    if (std::find(names.begin(), names.end(), suite) == names.end())
        throw UnsupportedError("unknown acceptance suite '" + suite + "' (norms, operators, classify, compress, all)");
    AcceptanceReport rep;
    rep.suite = suite;
    for (const auto& c : criteria()) {
        if (suite != "all" && suite != c.suite) continue;
        CriterionResult r;
        r.id = c.id;
        r.suite = c.suite;
        r.title = c.title;
        r.limit_seconds = c.limit;
        r.seed = derive_seed(opts.seed, std::uint64_t(c.id));
        auto t0 = std::chrono::steady_clock::now();
        try {
            c.run(r);
        } catch (const std::exception& ex) {
            fail(r, std::string("exception: ") + ex.what() + seed_note(r.seed));
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.limit > 0 && r.seconds > c.limit)
            fail(r, "took " + fmt(r.seconds) + " s, limit " + fmt(c.limit) + " s");
        r.passed = r.failures.empty();
        if (opts.on_result) opts.on_result(r);
        rep.criteria.push_back(std::move(r));
    }
    return rep;
}

std::string to_json(const AcceptanceReport& r, int indent) {
    json j;
    j["suite"] = r.suite;
    j["passed"] = r.passed();
    j["version"] = version();
    json arr = json::array();
    for (const auto& c : r.criteria)
        arr.push_back({{"id", c.id},
                       {"suite", c.suite},
                       {"title", c.title},
                       {"passed", c.passed},
                       {"detail", c.detail},
                       {"failures", c.failures},
                       {"seconds", c.seconds},
                       {"limit_seconds", c.limit_seconds},
                       {"seed", c.seed}});
    j["criteria"] = arr;
    return j.dump(indent);
}

}  // namespace lpt::harness
