#include "lptensor/norms/multilinear.hpp"

#include "lptensor/core/error.hpp"
#include "lptensor/core/exponent.hpp"
#include "lptensor/core/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lpt::norms {

namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

double conj(double s) {
    if (std::isinf(s)) return 1.0;
    if (s == 1.0) return std::numeric_limits<double>::infinity();
    return s / (s - 1.0);
}

void check_shape(const Eigen::VectorXd& coeffs, std::span<const std::size_t> dims) {
    std::size_t d = 1;
    for (auto n : dims) d *= n;
    if (static_cast<std::size_t>(coeffs.size()) != d) throw DimensionError("form coefficients do not match dims");
}

// Alignment up to sign of two factor lists.
bool same_point(const Factors& a, const Factors& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        double na = a[i].norm();
        double nb = b[i].norm();
        if (na == 0.0 || nb == 0.0) return false;
        if (std::abs(a[i].dot(b[i])) < na * nb * (1.0 - 1e-9)) return false;
    }
    return true;
}

// Smallest index carrying the largest entry of each factor; equal-value ties
// resolve toward the lexicographically smallest support.
std::vector<Eigen::Index> support_key(const Factors& f) {
    std::vector<Eigen::Index> key;
    for (const auto& u : f) {
        Eigen::Index k = 0;
        u.cwiseAbs().maxCoeff(&k);
        key.push_back(k);
    }
    return key;
}

}  // namespace

Eigen::VectorXd contract_except(const Eigen::VectorXd& coeffs, std::span<const std::size_t> dims, const Factors& u,
                                std::size_t skip) {
    const std::size_t n = dims.size();
    Eigen::VectorXd buf_a;
    Eigen::VectorXd buf_b;
    const double* cur = coeffs.data();
    std::size_t size = static_cast<std::size_t>(coeffs.size());
    bool use_a = true;
    // Trailing modes: the current array is (prefix x n_j) row-major.
    for (std::size_t j = n; j-- > skip + 1;) {
        const auto nj = static_cast<Eigen::Index>(dims[j]);
        const auto prefix = static_cast<Eigen::Index>(size / dims[j]);
        Eigen::Map<const RowMajor> m(cur, prefix, nj);
        Eigen::VectorXd& out = use_a ? buf_a : buf_b;
        out.noalias() = m * u[j];
        cur = out.data();
        size = static_cast<std::size_t>(prefix);
        use_a = !use_a;
    }
    // Leading modes: the current array is (n_j x suffix) row-major.
    for (std::size_t j = 0; j < skip; ++j) {
        const auto nj = static_cast<Eigen::Index>(dims[j]);
        const auto suffix = static_cast<Eigen::Index>(size / dims[j]);
        Eigen::Map<const RowMajor> m(cur, nj, suffix);
        Eigen::VectorXd& out = use_a ? buf_a : buf_b;
        out.noalias() = m.transpose() * u[j];
        cur = out.data();
        size = static_cast<std::size_t>(suffix);
        use_a = !use_a;
    }
    return Eigen::Map<const Eigen::VectorXd>(cur, static_cast<Eigen::Index>(size));
}

double evaluate_form(const Eigen::VectorXd& coeffs, std::span<const std::size_t> dims, const Factors& u) {
    check_shape(coeffs, dims);
    if (u.size() != dims.size()) throw DimensionError("evaluate_form: wrong number of factors");
    Eigen::VectorXd g = contract_except(coeffs, dims, u, dims.size() - 1);
    return g.dot(u.back());
}

double dual_ball_norm(const Eigen::VectorXd& g, double s) {
    return lp_norm(std::span<const double>(g.data(), static_cast<std::size_t>(g.size())), conj(s));
}

Eigen::VectorXd normalize_in_ball(const Eigen::VectorXd& v, double s) {
    double nv = lp_norm(std::span<const double>(v.data(), static_cast<std::size_t>(v.size())), s);
    if (nv == 0.0) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(v.size());
        e[0] = 1.0;
        return e;
    }
    return v / nv;
}

Eigen::VectorXd holder_maximizer(const Eigen::VectorXd& g, double s) {
    const Eigen::Index n = g.size();
    Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
    double gmax = g.cwiseAbs().maxCoeff();
    if (gmax == 0.0) {
        u[0] = 1.0;
        return u;
    }
    if (s == 1.0) {
        Eigen::Index k = 0;
        g.cwiseAbs().maxCoeff(&k);  // first maximal index
        u[k] = g[k] > 0 ? 1.0 : -1.0;
        return u;
    }
    if (std::isinf(s)) {
        for (Eigen::Index k = 0; k < n; ++k) u[k] = g[k] < 0 ? -1.0 : 1.0;
        return u;
    }
    if (s == 2.0) return g / g.norm();
    const double sp = conj(s);
    // u_k = sign(g_k) (|g_k| / ||g||_{s'})^{s'-1}, scaled by gmax for stability.
    double acc = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        double a = std::abs(g[k]) / gmax;
        double t = std::pow(a, sp - 1.0);
        u[k] = g[k] < 0 ? -t : t;
        acc += t * a;  // a^{s'}
    }
    double norm_sp = std::pow(acc, 1.0 / sp);  // ||g/gmax||_{s'}
    u /= std::pow(norm_sp, sp - 1.0);
    return u;
}

LocalMax ascend(const Eigen::VectorXd& coeffs, const FormShape& shape, Factors u, double rel_tol, int max_iter) {
    const std::size_t n = shape.dims.size();
    LocalMax out;
    double prev = -1.0;
    double value = 0.0;
    int it = 0;
    for (; it < max_iter; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            Eigen::VectorXd g = contract_except(coeffs, shape.dims, u, i);
            u[i] = holder_maximizer(g, shape.balls[i]);
            value = g.dot(u[i]);
        }
        if (value <= 0.0) break;
        if (prev >= 0.0 && value - prev <= rel_tol * value) {
            out.converged = true;
            ++it;
            break;
        }
        prev = value;
    }
    if (value <= 0.0) out.converged = true;
    out.value = std::max(0.0, value);
    out.factors = std::move(u);
    out.iterations = it;
    return out;
}

AscentResult maximize_form(const Eigen::VectorXd& coeffs, const FormShape& shape, const AscentOptions& opts,
                           const std::vector<Factors>& warm) {
    check_shape(coeffs, shape.dims);
    if (shape.balls.size() != shape.dims.size()) throw DimensionError("form shape: balls and dims differ in length");
    const std::size_t n = shape.dims.size();

    std::vector<Factors> starts;
    for (const auto& w : warm) {
        if (w.size() == n) starts.push_back(w);
    }
    // Peak start at the largest coefficient.
    if (opts.starts > 0 || starts.empty()) {
        Eigen::Index k = 0;
        coeffs.cwiseAbs().maxCoeff(&k);
        Factors f;
        auto idx = static_cast<std::size_t>(k);
        std::vector<std::size_t> alpha(n);
        for (std::size_t i = n; i-- > 0;) {
            alpha[i] = idx % shape.dims[i];
            idx /= shape.dims[i];
        }
        for (std::size_t i = 0; i < n; ++i) {
            Eigen::VectorXd e = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(shape.dims[i]));
            e[static_cast<Eigen::Index>(alpha[i])] = 1.0;
            f.push_back(e);
        }
        starts.push_back(std::move(f));
    }
    if (opts.starts > 1) {
        Factors f;
        for (std::size_t i = 0; i < n; ++i) {
            f.push_back(normalize_in_ball(Eigen::VectorXd::Ones(static_cast<Eigen::Index>(shape.dims[i])), shape.balls[i]));
        }
        starts.push_back(std::move(f));
    }
    Rng rng(opts.seed);
    for (int s = 2; s < opts.starts; ++s) {
        Factors f;
        for (std::size_t i = 0; i < n; ++i) {
            f.push_back(normalize_in_ball(gaussian_vector(rng, static_cast<Eigen::Index>(shape.dims[i])), shape.balls[i]));
        }
        starts.push_back(std::move(f));
    }

    AscentResult res;
    for (auto& st : starts) {
        LocalMax lm = ascend(coeffs, shape, std::move(st), opts.rel_tol, opts.max_iter);
        res.total_iterations += lm.iterations;
        res.all_converged = res.all_converged && lm.converged;
        bool dup = false;
        for (auto& m : res.maxima) {
            if (std::abs(m.value - lm.value) <= 1e-9 * std::max(1.0, m.value) && same_point(m.factors, lm.factors)) {
                dup = true;
                break;
            }
        }
        if (!dup) res.maxima.push_back(std::move(lm));
    }
    std::stable_sort(res.maxima.begin(), res.maxima.end(), [](const LocalMax& a, const LocalMax& b) {
        double tol = 1e-12 * std::max(1.0, std::max(a.value, b.value));
        if (std::abs(a.value - b.value) > tol) return a.value > b.value;
        return support_key(a.factors) < support_key(b.factors);
    });
    if (res.maxima.size() > std::max<std::size_t>(opts.keep, 1)) res.maxima.resize(std::max<std::size_t>(opts.keep, 1));
    res.best = res.maxima.front();
    return res;
}

}  // namespace lpt::norms
