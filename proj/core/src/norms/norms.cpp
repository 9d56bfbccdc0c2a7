#include "lptensor/norms/norms.hpp"

#include "atomic_lp.hpp"
#include "lptensor/core/error.hpp"

#include <algorithm>
#include <cmath>

namespace lpt::norms {

namespace {

std::vector<double> conjugate_balls(const Signature& sig) {
    std::vector<double> b;
    for (const auto& f : sig.factors()) b.push_back(conjugate(f.exp).to_double());
    return b;
}

NormEstimate zero_estimate(std::uint64_t seed, const char* method) {
    NormEstimate e;
    e.certified = true;
    e.seed = seed;
    e.method = method;
    return e;
}

AscentOptions ascent_options(const NormOptions& opts, int starts, std::uint64_t stream) {
    AscentOptions a;
    a.starts = starts;
    a.rel_tol = opts.rel_tol;
    a.max_iter = opts.max_iter;
    a.seed = derive_seed(opts.seed, stream);
    return a;
}

Factors unit_factors(const std::vector<std::size_t>& dims, std::size_t linear) {
    Factors f(dims.size());
    for (std::size_t i = dims.size(); i-- > 0;) {
        f[i] = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dims[i]));
        f[i][static_cast<Eigen::Index>(linear % dims[i])] = 1.0;
        linear /= dims[i];
    }
    return f;
}

}  // namespace

NormEstimate injective_norm(const Tensor& x, const NormOptions& opts) {
    if (x.is_zero()) return zero_estimate(opts.seed, "zero");
    const Signature& sig = x.signature();
    FormShape shape{sig.dims(), conjugate_balls(sig)};
    NormEstimate e;
    e.seed = opts.seed;
    if (sig.order() == 1) {
        e.lower = e.upper = dual_ball_norm(x.coeffs(), shape.balls[0]);
        e.witness.factors = {holder_maximizer(x.coeffs(), shape.balls[0])};
        e.certified = true;
        e.method = "closed-form";
        return e;
    }
    AscentResult r = maximize_form(x.coeffs(), shape, ascent_options(opts, opts.starts, 1));
    e.lower = e.upper = r.best.value;
    e.witness.factors = r.best.factors;
    e.converged = r.all_converged;
    e.method = "alternating-ascent";
    if (opts.certified) {
        CertifiedMax c = certified_form_max(x.coeffs(), shape, opts.certified_points);
        if (c.available) {
            if (c.lower > e.lower) {
                e.lower = c.lower;
                e.witness.factors = c.witness;
            }
            e.upper = std::max(c.upper, e.lower);
            e.certified = true;
            e.method = "enumeration";
        }
    }
    return e;
}

NormEstimate projective_norm(const Tensor& x, const NormOptions& opts) { return projective_norm(x, opts, nullptr); }

NormEstimate projective_norm(const Tensor& x, const NormOptions& opts, ProjectiveWarmStart* warm) {
    if (x.is_zero()) return zero_estimate(opts.seed, "zero");
    const Signature& sig = x.signature();
    const auto dims = sig.dims();
    FormShape shape{dims, sig.exponents_double()};
    NormEstimate e;
    e.seed = opts.seed;
    if (sig.order() == 1) {
        double v = lp_norm(std::span<const double>(x.coeffs().data(), static_cast<std::size_t>(x.coeffs().size())),
                           shape.balls[0]);
        e.lower = e.upper = v;
        AtomicDecomposition dec;
        dec.atoms.push_back({v, {x.coeffs() / v}});
        e.witness.decomposition = dec;
        e.witness.functional = holder_maximizer(x.coeffs(), conjugate(sig.exponent(0)).to_double());
        e.witness.functional_norm = 1.0;
        e.certified = true;
        e.method = "closed-form";
        return e;
    }

    const std::size_t d = sig.size();
    detail::AtomicLp lp(x.coeffs());
    std::vector<Factors> atom_factors;
    for (std::size_t k = 0; k < d; ++k) atom_factors.push_back(unit_factors(dims, k));
    auto add_atom = [&](const Factors& f) {
        Eigen::VectorXd a = outer_product(f);
        if (lp.has_parallel(a)) return false;
        lp.add_column(std::move(a));
        atom_factors.push_back(f);
        return true;
    };
    if (warm != nullptr) {
        for (const auto& f : warm->atoms) add_atom(f);
    }

    const std::size_t max_pivots = 200 * d + 20000;
    int added = 0;
    int round = 0;
    double best_lower = 0.0;
    Eigen::VectorXd best_phi;  // scaled to estimated dual norm 1
    double best_rho = 1.0;
    Factors last_sep;
    bool converged = false;
    // Stabilized pricing: separate at theta * best_phi + (1 - theta) * y.
    double theta = 0.6;

    auto column_max = [&](const Eigen::VectorXd& phi) {
        double m = 0.0;
        for (std::size_t k = 0; k < lp.columns(); ++k) m = std::max(m, std::abs(lp.column(k).dot(phi)));
        return m;
    };
    auto separate = [&](const Eigen::VectorXd& phi, int starts, const std::vector<Factors>& warm_starts) {
        AscentOptions ao = ascent_options(opts, starts, 100 + static_cast<std::uint64_t>(round));
        ao.keep = 6;
        if (starts < opts.starts) ao.max_iter = std::min(opts.max_iter, 100);
        return maximize_form(phi, shape, ao, warm_starts);
    };
    auto consider = [&](const Eigen::VectorXd& phi, double rho) {
        if (rho <= 0.0) return;
        double lower = x.coeffs().dot(phi) / rho;
        if (lower > best_lower) {
            best_lower = lower;
            best_phi = phi / rho;
            best_rho = rho;
        }
    };
    // The pool of generated columns is capped at max_atoms (nonbasic ones are
    // dropped when it fills); total generation is capped at 20 * max_atoms.
    const std::size_t pool_cap = std::max<std::size_t>(static_cast<std::size_t>(std::max(opts.max_atoms, 1)), 2 * d);
    const int generation_cap = 20 * std::max(opts.max_atoms, 1);
    auto add_violated = [&](const AscentResult& sep, const Eigen::VectorXd& y) {
        int n_new = 0;
        for (const auto& m : sep.maxima) {
            if (added >= generation_cap) break;
            Eigen::VectorXd a = outer_product(m.factors);
            if (std::abs(a.dot(y)) <= 1.0 + 1e-9) continue;
            if (lp.columns() - d >= pool_cap) {
                auto kept = lp.compact();
                std::vector<Factors> f;
                for (auto k : kept) f.push_back(std::move(atom_factors[k]));
                atom_factors = std::move(f);
                if (lp.columns() - d >= pool_cap) break;
            }
            if (add_atom(m.factors)) {
                ++added;
                ++n_new;
            }
        }
        return n_new;
    };

    while (true) {
        bool lp_ok = lp.solve(max_pivots);
        const double obj = lp.objective();
        const Eigen::VectorXd y = lp.dual();

        std::vector<Factors> warm_starts;
        {
            auto sol = lp.solution();
            std::sort(sol.begin(), sol.end(), [](auto& a, auto& b) { return std::abs(a.second) > std::abs(b.second); });
            for (std::size_t i = 0; i < sol.size(); ++i) warm_starts.push_back(atom_factors[sol[i].first]);
            if (!last_sep.empty()) warm_starts.push_back(last_sep);
        }

        int n_new = 0;
        if (lp_ok) {
            // Local moves: every active atom ascends against the LP dual.
            AscentOptions ao = ascent_options(opts, 0, 50 + static_cast<std::uint64_t>(round));
            ao.keep = warm_starts.size();
            ao.max_iter = 50;
            n_new += add_violated(maximize_form(y, shape, ao, warm_starts), y);
        }
        if (best_phi.size() > 0 && lp_ok) {
            Eigen::VectorXd phi_s = theta * best_phi + (1.0 - theta) * y;
            AscentResult sep = separate(phi_s, opts.separation_starts, warm_starts);
            last_sep = sep.best.factors;
            consider(phi_s, std::max(sep.best.value, column_max(phi_s)));
            n_new += add_violated(sep, y);
        }
        if (n_new == 0 || best_phi.size() == 0) {
            // Plain pricing at the LP dual.
            AscentResult sep = separate(y, opts.separation_starts, warm_starts);
            last_sep = sep.best.factors;
            if (lp_ok) consider(y, std::max({1.0, sep.best.value, column_max(y)}));
            int plain = add_violated(sep, y);
            if (n_new == 0 && plain == 0) theta *= 0.5;
            n_new += plain;
        }
        ++round;

        bool closed = obj - best_lower <= opts.gap_tol * obj;
        if (closed || n_new == 0 || added >= generation_cap) {
            // Confirm the dual norm of the best functional with the full multistart.
            AscentResult check = separate(best_phi.size() > 0 ? best_phi : y, opts.starts, warm_starts);
            double rho = std::max(check.best.value, 1.0);
            if (rho > 1.0 + 1e-9 && best_phi.size() > 0) {
                best_lower /= rho;
                best_rho *= rho;
                best_phi /= rho;
            }
            int extra = added < generation_cap ? add_violated(check, y) : 0;
            closed = obj - best_lower <= opts.gap_tol * obj;
            if (closed) {
                converged = true;
                break;
            }
            if (extra == 0 && n_new == 0) break;
            if (added >= generation_cap) break;
        }
    }

    auto sol = lp.solution();
    AtomicDecomposition dec;
    for (auto [k, w] : sol) dec.atoms.push_back({w, atom_factors[k]});
    Eigen::VectorXd recon = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d));
    for (auto [k, w] : sol) recon += w * lp.column(k);
    dec.residual = (x.coeffs() - recon).cwiseAbs().sum();
    e.upper = dec.weight_sum() + dec.residual;
    e.lower = std::min(best_lower, e.upper);
    e.witness.decomposition = std::move(dec);
    e.witness.functional = best_phi;
    e.witness.functional_norm = best_rho;
    e.converged = converged;
    e.method = "column-generation";

    if (warm != nullptr) {
        for (auto [k, w] : sol) {
            if (k >= d) warm->atoms.push_back(atom_factors[k]);
        }
        if (warm->atoms.size() > warm->capacity) {
            warm->atoms.erase(warm->atoms.begin(), warm->atoms.begin() + static_cast<std::ptrdiff_t>(warm->atoms.size() - warm->capacity));
        }
    }

    if (opts.certified && best_phi.size() > 0) {
        FormShape dual_shape{dims, sig.exponents_double()};
        CertifiedMax c = certified_form_max(best_phi, dual_shape, opts.certified_points);
        if (c.available && c.upper > 0.0) {
            e.lower = std::min(x.coeffs().dot(best_phi) / c.upper, e.upper);
            e.certified = true;
            e.method = "column-generation+enumeration";
        }
    }
    return e;
}

NormEstimate tensor_norm(const Tensor& x, const NormOptions& opts) {
    return x.signature().tag() == NormTag::projective ? projective_norm(x, opts) : injective_norm(x, opts);
}

double dual_pair(const Tensor& x, const Tensor& phi) {
    if (x.signature().dims() != phi.signature().dims()) throw DimensionError("dual_pair: shapes differ");
    return x.coeffs().dot(phi.coeffs());
}

NormEstimate entry_bounds(const OperatorMatrix& op) {
    NormEstimate e;
    e.lower = op.entries().size() ? op.entries().cwiseAbs().maxCoeff() : 0.0;
    e.upper = op.mass();
    e.certified = true;
    e.method = "entry-bounds";
    return e;
}

double AtomicDecomposition::weight_sum() const {
    double s = 0.0;
    for (const auto& a : atoms) s += std::abs(a.weight);
    return s;
}

Eigen::VectorXd AtomicDecomposition::reconstruct() const {
    if (atoms.empty()) return {};
    Eigen::VectorXd r = atoms.front().weight * outer_product(atoms.front().factors);
    for (std::size_t k = 1; k < atoms.size(); ++k) r += atoms[k].weight * outer_product(atoms[k].factors);
    return r;
}

}  // namespace lpt::norms
