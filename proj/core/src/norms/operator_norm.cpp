#include "lptensor/core/error.hpp"
#include "lptensor/norms/norms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lpt::norms {

namespace {

std::vector<double> balls_of(const Signature& sig, bool conjugated) {
    std::vector<double> b;
    for (const auto& f : sig.factors()) b.push_back(conjugated ? conjugate(f.exp).to_double() : f.exp.to_double());
    return b;
}

// sup over unit elementary u and unit elementary dual f of <Phi u, f>: one
// multilinear form of order N + M with C[alpha, beta] = Phi(beta, alpha).
NormEstimate projective_to_injective(const OperatorMatrix& op, const NormOptions& opts) {
    const auto& dom = op.domain();
    const auto& cod = op.codomain();
    FormShape shape;
    shape.dims = dom.dims();
    for (auto d : cod.dims()) shape.dims.push_back(d);
    shape.balls = balls_of(dom, false);
    for (auto b : balls_of(cod, true)) shape.balls.push_back(b);
    // Column-major storage of the (codomain x domain) matrix is the row-major (alpha, beta) array.
    Eigen::VectorXd c = Eigen::Map<const Eigen::VectorXd>(op.entries().data(), op.entries().size());

    NormEstimate e;
    e.seed = opts.seed;
    if (c.cwiseAbs().maxCoeff() == 0.0) {
        e.certified = true;
        e.method = "zero";
        return e;
    }
    AscentOptions ao;
    ao.starts = opts.starts;
    ao.rel_tol = opts.rel_tol;
    ao.max_iter = opts.max_iter;
    ao.seed = derive_seed(opts.seed, 7);
    AscentResult r = maximize_form(c, shape, ao);
    e.lower = e.upper = r.best.value;
    e.witness.factors.assign(r.best.factors.begin(), r.best.factors.begin() + static_cast<std::ptrdiff_t>(dom.order()));
    e.converged = r.all_converged;
    e.method = "joint-ascent";
    if (opts.certified) {
        CertifiedMax cm = certified_form_max(c, shape, opts.certified_points);
        if (cm.available) {
            e.lower = std::max(e.lower, cm.lower);
            e.upper = std::max(cm.upper, e.lower);
            e.certified = true;
            e.method = "joint-enumeration";
        }
    }
    return e;
}

NormEstimate codomain_norm(const Tensor& y, NormTag tag, const NormOptions& opts, ProjectiveWarmStart* warm) {
    return tag == NormTag::projective ? projective_norm(y, opts, warm) : injective_norm(y, opts);
}

// l1 domain: the unit ball is the convex hull of the +-e_alpha.
NormEstimate l1_domain(const OperatorMatrix& op, const NormOptions& opts) {
    NormEstimate best;
    best.seed = opts.seed;
    best.certified = true;
    const std::size_t d = op.domain().size();
    for (std::size_t a = 0; a < d; ++a) {
        Tensor y(op.codomain(), op.entries().col(static_cast<Eigen::Index>(a)));
        NormEstimate v = codomain_norm(y, op.codomain().tag(), opts, nullptr);
        best.certified = best.certified && v.certified;
        best.converged = best.converged && v.converged;
        if (v.lower > best.lower) {
            best.lower = v.lower;
            best.witness.factors.clear();
            auto alpha = op.domain().multi_index(a);
            for (std::size_t i = 0; i < alpha.size(); ++i) {
                best.witness.factors.push_back(
                    Eigen::VectorXd::Unit(static_cast<Eigen::Index>(op.domain().dim(i)), static_cast<Eigen::Index>(alpha[i] - 1)));
            }
        }
        best.upper = std::max(best.upper, v.upper);
    }
    best.method = "extreme-points";
    return best;
}

// Alternate between the inner projective norm (whose dual functional phi is
// kept) and an ascent of <Phi u, phi> over elementary u. Each round is monotone.
NormEstimate projective_to_projective(const OperatorMatrix& op, const NormOptions& opts) {
    const auto& dom = op.domain();
    const auto dims = dom.dims();
    FormShape shape{dims, balls_of(dom, false)};
    const auto& m = op.entries();

    NormOptions inner = opts;
    inner.starts = std::min(opts.starts, 12);
    inner.certified = false;

    std::vector<Factors> starts;
    {
        Eigen::VectorXd mass = m.cwiseAbs().colwise().sum().transpose();
        std::vector<std::size_t> order(static_cast<std::size_t>(mass.size()));
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return mass[static_cast<Eigen::Index>(a)] > mass[static_cast<Eigen::Index>(b)]; });
        for (std::size_t t = 0; t < std::min<std::size_t>(2, order.size()); ++t) {
            auto alpha = dom.multi_index(order[t]);
            Factors f;
            for (std::size_t i = 0; i < alpha.size(); ++i) {
                f.push_back(Eigen::VectorXd::Unit(static_cast<Eigen::Index>(dims[i]), static_cast<Eigen::Index>(alpha[i] - 1)));
            }
            starts.push_back(std::move(f));
        }
        Factors flat;
        for (std::size_t i = 0; i < dims.size(); ++i) {
            flat.push_back(normalize_in_ball(Eigen::VectorXd::Ones(static_cast<Eigen::Index>(dims[i])), shape.balls[i]));
        }
        starts.push_back(std::move(flat));
        Rng rng(derive_seed(opts.seed, 11));
        while (static_cast<int>(starts.size()) < std::max(opts.outer_starts, 1)) {
            Factors f;
            for (std::size_t i = 0; i < dims.size(); ++i) {
                f.push_back(normalize_in_ball(gaussian_vector(rng, static_cast<Eigen::Index>(dims[i])), shape.balls[i]));
            }
            starts.push_back(std::move(f));
        }
        if (static_cast<int>(starts.size()) > opts.outer_starts) starts.resize(static_cast<std::size_t>(std::max(opts.outer_starts, 1)));
    }

    ProjectiveWarmStart warm;
    int round = 0;
    // Runs up to `iters` monotone rounds from u with inner gap tolerance `gap`.
    auto run = [&](Factors& u, int iters, double gap, bool& done) {
        NormOptions in = inner;
        in.gap_tol = std::max(gap, opts.gap_tol);
        double prev = -1.0;
        double val = 0.0;
        done = false;
        for (int it = 0; it < iters; ++it, ++round) {
            Tensor y(op.codomain(), m * outer_product(u));
            if (y.is_zero()) {
                done = true;
                return 0.0;
            }
            in.seed = derive_seed(opts.seed, 1000 + static_cast<std::uint64_t>(round));
            NormEstimate est = projective_norm(y, in, &warm);
            val = est.lower;
            if (prev >= 0.0 && val <= prev * (1.0 + std::max(opts.outer_tol, in.gap_tol))) {
                done = true;
                break;
            }
            prev = val;
            if (!est.witness.functional) break;
            Eigen::VectorXd g = m.transpose() * *est.witness.functional;
            AscentOptions ao;
            ao.starts = 0;
            ao.rel_tol = opts.rel_tol;
            ao.max_iter = opts.max_iter;
            Factors next = maximize_form(g, shape, ao, {u}).best.factors;
            u = std::move(next);
        }
        return std::max(prev, val);
    };

    // Successive halving: a few cheap rounds from every start, then refine the best two.
    std::vector<std::pair<double, std::size_t>> ranked;
    for (std::size_t s = 0; s < starts.size(); ++s) {
        bool done = false;
        ranked.emplace_back(run(starts[s], 3, 1e-3, done), s);
    }
    std::stable_sort(ranked.begin(), ranked.end(), [](auto& a, auto& b) { return a.first > b.first; });
    bool converged = true;
    double best_val = -1.0;
    Factors best_u;
    for (std::size_t t = 0; t < std::min<std::size_t>(2, ranked.size()); ++t) {
        Factors u = starts[ranked[t].second];
        bool done = false;
        double v = run(u, opts.outer_iter, 1e-5, done);
        if (t == 0) converged = done;
        if (v > best_val) {
            best_val = v;
            best_u = u;
        }
    }
    if (!best_u.empty()) {
        bool done = false;
        run(best_u, 3, opts.gap_tol, done);
    }

    NormEstimate e;
    e.seed = opts.seed;
    e.method = "alternating-projective";
    if (best_u.empty()) {
        e.certified = true;
        return e;
    }
    NormEstimate fin = projective_norm(Tensor(op.codomain(), m * outer_product(best_u)), opts, &warm);
    e.lower = fin.lower;
    e.upper = fin.upper;
    e.converged = converged && fin.converged;
    e.witness.factors = best_u;
    e.witness.functional = fin.witness.functional;
    e.witness.functional_norm = fin.witness.functional_norm;
    return e;
}

bool all_l1(const Signature& sig) {
    return std::all_of(sig.factors().begin(), sig.factors().end(), [](const Factor& f) { return f.exp == Exponent(1); });
}

}  // namespace

NormEstimate operator_norm(const OperatorMatrix& op, const NormOptions& opts) {
    const NormTag dt = op.domain().tag();
    const NormTag ct = op.codomain().tag();
    if (dt == NormTag::injective) {
        if (ct != NormTag::injective) {
            throw UnsupportedError("operator_norm: injective domain is only supported with an injective codomain");
        }
        NormEstimate e = operator_norm(op.adjoint(), opts);
        e.method = "adjoint:" + e.method;
        return e;
    }
    if (op.mass() == 0.0) {
        NormEstimate e;
        e.certified = true;
        e.seed = opts.seed;
        e.method = "zero";
        return e;
    }
    if (opts.certified && all_l1(op.domain())) return l1_domain(op, opts);
    // An order-one codomain carries the same norm under either tag.
    if (ct == NormTag::injective || op.codomain().order() == 1) {
        return projective_to_injective(op.codomain().order() == 1 ? op.with_tags(dt, NormTag::injective) : op, opts);
    }
    return projective_to_projective(op, opts);
}

}  // namespace lpt::norms
