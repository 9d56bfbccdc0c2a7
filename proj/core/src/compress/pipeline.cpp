#include "detail.hpp"

#include "lptensor/core/error.hpp"
#include "lptensor/operators/operators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace lpt::compress {

namespace detail {

Cube require_cube(const OperatorMatrix& op, const char* what) {
    if (!op.is_endomorphism()) throw DimensionError(std::string(what) + " needs an endomorphism");
    const auto dims = op.domain().dims();
    if (dims.empty()) throw DimensionError(std::string(what) + " needs at least one factor");
    for (auto d : dims) {
        if (d != dims.front()) throw DimensionError(std::string(what) + " needs equal dimensions on every factor");
    }
    return {dims.size(), dims.front()};
}

std::vector<MultiIndex> grid(std::size_t order, std::size_t len) {
    std::vector<MultiIndex> out;
    std::vector<std::size_t> dims(order, len);
    if (len == 0 && order > 0) return out;
    for_each_multi_index(dims, [&](const MultiIndex& a) { out.push_back(a); });
    return out;
}

MultiIndex insert_at(const MultiIndex& hat, std::size_t c, std::size_t j) {
    std::vector<std::size_t> e = hat.entries();
    e.insert(e.begin() + static_cast<std::ptrdiff_t>(c), j);
    return MultiIndex(std::move(e));
}

MultiIndex remove_at(const MultiIndex& alpha, std::size_t c) {
    std::vector<std::size_t> e = alpha.entries();
    e.erase(e.begin() + static_cast<std::ptrdiff_t>(c));
    return MultiIndex(std::move(e));
}

double mean_diagonal(const OperatorMatrix& op) {
    const auto& m = op.entries();
    if (m.rows() == 0) return 0.0;
    return m.diagonal().mean();
}

OperatorMatrix compress_common(const OperatorMatrix& op, const std::vector<std::size_t>& set) {
    return ops::compress_operator(op, SubsetSelection::common(op.domain().order(), set));
}

std::vector<std::size_t> iota1(std::size_t n) {
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), 1);
    return v;
}

}  // namespace detail

using namespace detail;

namespace {

std::size_t max_of(const MultiIndex& a) { return a.size() == 0 ? 0 : a.magnitude(); }

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

std::string set_str(const std::vector<std::size_t>& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
    return out + "}";
}

// Linear positions (in the big space) of the compressed multi-indices, grouped by shell.
std::vector<std::vector<Eigen::Index>> shells_of(const Signature& sig, const std::vector<std::size_t>& set) {
    const std::size_t order = sig.order();
    std::vector<std::vector<Eigen::Index>> shells(set.size() + 1);
    for (const auto& a : grid(order, set.size())) {
        std::vector<std::size_t> big(order);
        for (std::size_t i = 0; i < order; ++i) big[i] = set[a[i] - 1];
        shells[a.magnitude()].push_back(static_cast<Eigen::Index>(sig.linear(MultiIndex(big))));
    }
    return shells;
}

double block_mass(const Eigen::MatrixXd& m, const std::vector<Eigen::Index>& rows, const std::vector<Eigen::Index>& cols) {
    double s = 0.0;
    for (auto c : cols) {
        for (auto r : rows) s += std::abs(m(r, c));
    }
    return s;
}

// Deviation table: for every key (face, a, b) the largest change over the tail index.
// By the slice decomposition the changed operator moves by at most the sum of these.
struct SliceBound {
    std::map<std::tuple<std::size_t, MultiIndex, MultiIndex>, double> worst;
    void add(std::size_t face, const MultiIndex& a, const MultiIndex& b, double dev) {
        double& w = worst[{face, a, b}];
        w = std::max(w, std::abs(dev));
    }
    double total() const {
        double s = 0.0;
        for (const auto& kv : worst) s += kv.second;
        return s;
    }
};

}  // namespace

StepResult shell_localize(const OperatorMatrix& phi, const EpsilonSchedule& sched, std::size_t min_length,
                          const CompressOptions& opts) {
    const Cube cube = require_cube(phi, "shell_localize");
    const auto& m = phi.entries();
    const Signature& sig = phi.domain();

    ExtendFn accept = [&](const std::vector<std::size_t>& prefix, std::size_t cand) {
        std::vector<std::size_t> set(prefix);
        set.push_back(cand);
        const std::size_t k = set.size();
        auto shells = shells_of(sig, set);
        for (std::size_t s = 1; s < k; ++s) {
            if (block_mass(m, shells[s], shells[k]) > sched.cell(k, s)) return false;
            if (block_mass(m, shells[k], shells[s]) > sched.cell(s, k)) return false;
        }
        return true;
    };
    SearchOutcome found = search_longest(iota1(cube.dim), cube.dim, min_length, accept, opts.limits);

    StepResult out;
    out.sigma = SubsetSelection::common(cube.order, found.set);
    OperatorMatrix c = ops::compress_operator(phi, out.sigma);
    auto shells = shells_of(c.domain(), iota1(found.set.size()));
    double removed = 0.0;
    for (std::size_t n = 1; n < shells.size(); ++n) {
        for (std::size_t k = 1; k < shells.size(); ++k) {
            if (n == k) continue;
            for (auto col : shells[n]) {
                for (auto row : shells[k]) {
                    removed += std::abs(c.entries()(row, col));
                    c.entries()(row, col) = 0.0;
                }
            }
        }
    }
    out.phi = std::move(c);
    out.perturbation = removed;
    out.success = found.found && removed <= sched.bound();
    out.trace.step = "shell_localize";
    out.trace.budget = sched.bound();
    out.trace.perturbation = removed;
    out.trace.ok = out.success;
    out.trace.detail = "common set " + set_str(found.set) + " of length " + std::to_string(found.set.size()) +
                       " (needed " + std::to_string(min_length) + ")" +
                       (found.exhaustive ? ", exhaustive search" : ", node cap reached");
    return out;
}

StepResult disjointify(const OperatorMatrix& phi) {
    const Cube cube = require_cube(phi, "disjointify");
    const std::size_t n = cube.dim / cube.order;
    if (n == 0) {
        throw DimensionError("disjointify needs dimension at least " + std::to_string(cube.order) + ", got " +
                             std::to_string(cube.dim));
    }
    StepResult out;
    out.sigma = ops::disjointify_selection(cube.order, n, cube.dim);
    out.phi = ops::compress_operator(phi, out.sigma);
    out.trace.step = "disjointify";
    out.trace.detail = "sigma_i(j) = N(j-1)+i, compressed dimension " + std::to_string(n);
    return out;
}

namespace {

// Values lambda_{a,b,j} of face c: entry (b (+)_c j, a (+)_c j) for max(|a|,|b|) < j.
struct TailKeys {
    std::size_t order;
    std::vector<std::tuple<std::size_t, MultiIndex, MultiIndex>> keys;  // face, a, b
};

TailKeys tail_keys(std::size_t order, std::size_t len) {
    TailKeys t{order, {}};
    auto hats = grid(order - 1, len);
    for (std::size_t c = 0; c < order; ++c) {
        for (const auto& a : hats) {
            for (const auto& b : hats) t.keys.emplace_back(c, a, b);
        }
    }
    return t;
}

double tail_width(const EpsilonSchedule& sched, std::size_t key) {
    return sched.cell(key);
}

}  // namespace

StepResult stabilize_tail(const OperatorMatrix& phi, const EpsilonSchedule& sched, std::size_t min_length,
                          const CompressOptions& opts) {
    const Cube cube = require_cube(phi, "stabilize_tail");
    const Signature& sig = phi.domain();
    const auto& m = phi.entries();
    const std::size_t order = cube.order;
    // Keys over the full input range give each (face, a, b) a fixed schedule cell.
    TailKeys all = tail_keys(order, cube.dim);
    std::map<std::tuple<std::size_t, MultiIndex, MultiIndex>, std::size_t> key_index;
    for (std::size_t i = 0; i < all.keys.size(); ++i) key_index[all.keys[i]] = i;

    auto value = [&](const std::vector<std::size_t>& set, std::size_t c, const MultiIndex& a, const MultiIndex& b,
                     std::size_t j) {
        auto big = [&](const MultiIndex& h) {
            std::vector<std::size_t> e(h.size());
            for (std::size_t i = 0; i < h.size(); ++i) e[i] = set[h[i] - 1];
            return insert_at(MultiIndex(std::move(e)), c, set[j - 1]);
        };
        return m(static_cast<Eigen::Index>(sig.linear(big(b))), static_cast<Eigen::Index>(sig.linear(big(a))));
    };
    // The cell of key (c, a, b) is looked up through the original indices it lands on.
    auto width = [&](const std::vector<std::size_t>& set, std::size_t c, const MultiIndex& a, const MultiIndex& b) {
        auto lift = [&](const MultiIndex& h) {
            std::vector<std::size_t> e(h.size());
            for (std::size_t i = 0; i < h.size(); ++i) e[i] = set[h[i] - 1];
            return MultiIndex(std::move(e));
        };
        return tail_width(sched, key_index.at({c, lift(a), lift(b)}));
    };

    ExtendFn accept = [&](const std::vector<std::size_t>& prefix, std::size_t cand) {
        std::vector<std::size_t> set(prefix);
        set.push_back(cand);
        const std::size_t k = set.size();
        if (k < 2) return true;
        for (std::size_t c = 0; c < order; ++c) {
            for (const auto& a : grid(order - 1, k - 1)) {
                for (const auto& b : grid(order - 1, k - 1)) {
                    const std::size_t lo = std::max(max_of(a), max_of(b)) + 1;
                    double vmin = value(set, c, a, b, k);
                    double vmax = vmin;
                    for (std::size_t j = lo; j < k; ++j) {
                        double v = value(set, c, a, b, j);
                        vmin = std::min(vmin, v);
                        vmax = std::max(vmax, v);
                    }
                    if (vmax - vmin > width(set, c, a, b)) return false;
                }
            }
        }
        return true;
    };
    SearchOutcome found = search_longest(iota1(cube.dim), cube.dim, min_length, accept, opts.limits);

    StepResult out;
    out.sigma = SubsetSelection::common(order, found.set);
    OperatorMatrix c = ops::compress_operator(phi, out.sigma);
    const std::size_t len = found.set.size();
    const Signature& small = c.domain();
    SliceBound bound;
    for (std::size_t f = 0; f < order; ++f) {
        for (const auto& a : grid(order - 1, len)) {
            for (const auto& b : grid(order - 1, len)) {
                const std::size_t lo = std::max(max_of(a), max_of(b)) + 1;
                if (lo > len) continue;
                std::vector<Eigen::Index> rows, cols;
                double vmin = 0.0, vmax = 0.0;
                for (std::size_t j = lo; j <= len; ++j) {
                    auto r = static_cast<Eigen::Index>(small.linear(insert_at(b, f, j)));
                    auto col = static_cast<Eigen::Index>(small.linear(insert_at(a, f, j)));
                    double v = c.entries()(r, col);
                    if (j == lo) vmin = vmax = v;
                    vmin = std::min(vmin, v);
                    vmax = std::max(vmax, v);
                    rows.push_back(r);
                    cols.push_back(col);
                }
                const double centre = 0.5 * (vmin + vmax);
                for (std::size_t t = 0; t < rows.size(); ++t) {
                    bound.add(f, a, b, c.entries()(rows[t], cols[t]) - centre);
                    c.entries()(rows[t], cols[t]) = centre;
                }
            }
        }
    }
    out.phi = std::move(c);
    out.perturbation = bound.total();
    out.success = found.found && out.perturbation <= sched.bound();
    out.trace.step = "stabilize_tail";
    out.trace.budget = sched.bound();
    out.trace.perturbation = out.perturbation;
    out.trace.ok = out.success;
    out.trace.detail = "common set " + set_str(found.set) + " of length " + std::to_string(len) + " (needed " +
                       std::to_string(min_length) + ")" + (found.exhaustive ? ", exhaustive search" : ", node cap reached");
    return out;
}

StepResult collapse_max_coordinate(const OperatorMatrix& phi, const EpsilonSchedule& sched, std::size_t min_length,
                                   const CompressOptions& opts) {
    const Cube cube = require_cube(phi, "collapse_max_coordinate");
    const std::size_t order = cube.order;
    const std::size_t last = cube.dim;
    const Signature& sig = phi.domain();
    const auto& m = phi.entries();
    if (last < 2) {
        throw DimensionError("collapse_max_coordinate needs dimension at least 2");
    }
    // Psi_c(b, a) = Phi(b (+)_c L, a (+)_c L), shells of Psi over a common set S of {1..L-1}.
    // Each (face, shell pair) gets a share of the cell.
    auto psi = [&](std::size_t c, const MultiIndex& b, const MultiIndex& a) {
        return m(static_cast<Eigen::Index>(sig.linear(insert_at(b, c, last))),
                 static_cast<Eigen::Index>(sig.linear(insert_at(a, c, last))));
    };
    auto lift = [](const std::vector<std::size_t>& set, const MultiIndex& h) {
        std::vector<std::size_t> e(h.size());
        for (std::size_t i = 0; i < h.size(); ++i) e[i] = set[h[i] - 1];
        return MultiIndex(std::move(e));
    };
    const std::size_t faces = order;
    ExtendFn accept = [&](const std::vector<std::size_t>& prefix, std::size_t cand) {
        std::vector<std::size_t> set(prefix);
        set.push_back(cand);
        const std::size_t k = set.size();
        for (std::size_t c = 0; c < order; ++c) {
            for (std::size_t s = 1; s < k; ++s) {
                double into = 0.0, out_of = 0.0;
                for (const auto& a : grid(order - 1, k)) {
                    for (const auto& b : grid(order - 1, k)) {
                        const std::size_t na = max_of(a), nb = max_of(b);
                        if (na == k && nb == s) into += std::abs(psi(c, lift(set, b), lift(set, a)));
                        if (na == s && nb == k) out_of += std::abs(psi(c, lift(set, b), lift(set, a)));
                    }
                }
                const double cell_ks = sched.cell(k, s) / static_cast<double>(faces);
                const double cell_sk = sched.cell(s, k) / static_cast<double>(faces);
                if (into > cell_ks || out_of > cell_sk) return false;
            }
        }
        return true;
    };
    SearchOutcome found = search_longest(iota1(last - 1), last - 1, min_length > 0 ? min_length - 1 : 0, accept,
                                         opts.limits);
    std::vector<std::size_t> set = found.set;
    set.push_back(last);

    StepResult out;
    out.sigma = SubsetSelection::common(order, set);
    const OperatorMatrix tilde = ops::compress_operator(phi, out.sigma);
    OperatorMatrix c = tilde;
    const std::size_t len = set.size();
    const Signature& small = c.domain();
    SliceBound bound;
    for (std::size_t f = 0; f < order; ++f) {
        for (const auto& a : grid(order - 1, len)) {
            const std::size_t na = max_of(a);
            for (std::size_t j = na + 1; j <= len; ++j) {
                auto col = static_cast<Eigen::Index>(small.linear(insert_at(a, f, j)));
                for (const auto& b : grid(order - 1, len)) {
                    if (max_of(b) >= j) continue;
                    auto row = static_cast<Eigen::Index>(small.linear(insert_at(b, f, j)));
                    // (Q_{|a|} Psi~ e_a)(b), read at the tail index.
                    double target = 0.0;
                    if (max_of(b) == na) {
                        target = tilde.entries()(static_cast<Eigen::Index>(small.linear(insert_at(b, f, len))),
                                                 static_cast<Eigen::Index>(small.linear(insert_at(a, f, len))));
                    }
                    bound.add(f, a, b, c.entries()(row, col) - target);
                    c.entries()(row, col) = target;
                }
            }
        }
    }
    out.phi = std::move(c);
    out.perturbation = bound.total();
    out.success = found.found && out.perturbation <= sched.bound();
    out.trace.step = "collapse_max_coordinate";
    out.trace.budget = sched.bound();
    out.trace.perturbation = out.perturbation;
    out.trace.ok = out.success;
    out.trace.detail = "reduced operator read at tail index " + std::to_string(last) + ", common set " + set_str(set) +
                       " (needed " + std::to_string(min_length) + ")" +
                       (found.exhaustive ? ", exhaustive search" : ", node cap reached");
    return out;
}

TriangleReport equalize_triangles(const OperatorMatrix& phi, const norms::NormOptions& opts, double gap_tol) {
    const Cube cube = require_cube(phi, "equalize_triangles");
    if (cube.order < 2) throw DimensionError("equalize_triangles needs at least two factors");
    const std::size_t order = cube.order;
    const std::size_t n = cube.dim;
    const Signature& sig = phi.domain();
    const auto& m = phi.entries();
    const std::size_t k = order - 2;

    TriangleReport rep;
    double worst_gap = -1.0;
    MultiIndex worst_a, worst_b;
    double worst_up = 0.0, worst_lo = 0.0;
    const auto prefixes = grid(order - 2, n);
    const auto pairs = grid(2, n);
    auto full = [&](const MultiIndex& pre, const MultiIndex& ij) {
        std::vector<std::size_t> e = pre.entries();
        e.push_back(ij[0]);
        e.push_back(ij[1]);
        return static_cast<Eigen::Index>(sig.linear(MultiIndex(std::move(e))));
    };
    for (const auto& a : prefixes) {
        for (const auto& b : prefixes) {
            double up = 0.0, lo = 0.0;
            std::size_t nu = 0, nl = 0;
            for (const auto& ij : pairs) {
                double v = m(full(b, ij), full(a, ij));
                if (ij[0] < ij[1]) up += v, ++nu;
                if (ij[0] > ij[1]) lo += v, ++nl;
            }
            up = nu ? up / static_cast<double>(nu) : 0.0;
            lo = nl ? lo / static_cast<double>(nl) : 0.0;
            double spread = 0.0;
            for (const auto& col : pairs) {
                for (const auto& row : pairs) {
                    double v = m(full(b, row), full(a, col));
                    if (row != col) {
                        spread = std::max(spread, std::abs(v));
                    } else if (col[0] < col[1]) {
                        spread = std::max(spread, std::abs(v - up));
                    } else if (col[0] > col[1]) {
                        spread = std::max(spread, std::abs(v - lo));
                    }
                }
            }
            rep.spread = std::max(rep.spread, spread);
            ++rep.slices;
            const double gap = std::abs(up - lo);
            if (gap > worst_gap) {
                worst_gap = gap;
                worst_a = a;
                worst_b = b;
                worst_up = up;
                worst_lo = lo;
            }
        }
    }
    rep.gap = std::max(worst_gap, 0.0);
    rep.upper_value = worst_up;
    rep.lower_value = worst_lo;
    if (rep.gap > gap_tol) {
        const std::size_t coords[2] = {k, k + 1};
        Signature pair = sig.restrict_to(coords);
        Eigen::MatrixXd t(pair.size(), pair.size());
        for (const auto& col : pairs) {
            for (const auto& row : pairs) {
                t(static_cast<Eigen::Index>(pair.linear(row)), static_cast<Eigen::Index>(pair.linear(col))) =
                    m(full(worst_b, row), full(worst_a, col));
            }
        }
        Eigen::MatrixXd p = (t - worst_lo * Eigen::MatrixXd::Identity(t.rows(), t.cols())) / (worst_up - worst_lo);
        rep.projection_norm = norms::operator_norm(OperatorMatrix(pair, pair, p), opts);
    }
    return rep;
}

namespace {

bool pairs_at_most_one(const Signature& sig) {
    for (std::size_t i = 0; i < sig.order(); ++i) {
        for (std::size_t j = i + 1; j < sig.order(); ++j) {
            if (sig.exponent(i).reciprocal() + sig.exponent(j).reciprocal() > 1) return false;
        }
    }
    return true;
}

norms::NormOptions cheap(const norms::NormOptions& o) {
    norms::NormOptions c = o;
    c.outer_starts = std::min(o.outer_starts, 3);
    c.outer_iter = std::min(o.outer_iter, 10);
    c.gap_tol = std::max(o.gap_tol, 1e-4);
    c.starts = std::min(o.starts, 8);
    return c;
}

double residual_upper(const OperatorMatrix& c, double lambda, const norms::NormOptions& o) {
    OperatorMatrix d = c - lambda * OperatorMatrix::identity(c.domain());
    return norms::operator_norm(d, o).upper;
}

void fail(CompressionResult& r, const std::string& step, const std::string& why) {
    r.success = false;
    r.deepest_step = step;
    r.failure = step + ": " + why;
}

}  // namespace

CompressionResult extract_multiplier(const OperatorMatrix& phi, double eps, const CompressOptions& opts) {
    const Cube cube = require_cube(phi, "extract_multiplier");
    if (phi.domain().tag() != NormTag::projective || phi.codomain().tag() != NormTag::projective) {
        throw DomainError("extract_multiplier works on projective tensor spaces");
    }
    if (!pairs_at_most_one(phi.domain())) {
        throw DomainError("extract_multiplier needs 1/p_i + 1/p_j <= 1 for every pair");
    }
    if (!(eps > 0.0)) throw DomainError("eps must be positive");
    const std::size_t order = cube.order;
    const std::size_t n = opts.n_target;
    if (n == 0) throw DomainError("n_target must be positive");

    CompressionResult r;
    r.seed = opts.norm.seed;
    const double share = opts.step_share * eps;
    double consumed = 0.0;

    // Step 1.
    const std::size_t shells = std::max<std::size_t>(cube.dim * (cube.dim - 1), 1);
    StepResult s1 = shell_localize(phi, EpsilonSchedule::uniform(share, shells), order * n, opts);
    r.trace.push_back(s1.trace);
    consumed += s1.perturbation;
    SubsetSelection sigma = s1.sigma;
    if (!s1.success) {
        fail(r, "shell_localize", "no admissible common set of length " + std::to_string(order * n));
        r.sigma = sigma;
        return r;
    }
    // Step 2.
    StepResult s2 = disjointify(s1.phi);
    r.trace.push_back(s2.trace);
    sigma = sigma.compose(s2.sigma);
    // Step 3.
    const std::size_t len2 = s2.phi.domain().dim(0);
    std::size_t keys = order;
    for (std::size_t i = 0; i + 1 < order; ++i) keys *= len2 * len2;
    StepResult s3 = stabilize_tail(s2.phi, EpsilonSchedule::uniform(share, std::max<std::size_t>(keys, 1)), n, opts);
    r.trace.push_back(s3.trace);
    consumed += s3.perturbation;
    sigma = sigma.compose(s3.sigma);
    if (!s3.success) {
        fail(r, "stabilize_tail", "no tail cluster of length " + std::to_string(n));
        r.sigma = sigma;
        return r;
    }
    // Step 4.
    const std::size_t len3 = s3.phi.domain().dim(0);
    StepResult s4;
    if (len3 >= 2) {
        const std::size_t cells = std::max<std::size_t>((len3 - 1) * (len3 - 1), 1);
        s4 = collapse_max_coordinate(s3.phi, EpsilonSchedule::uniform(share, cells), n, opts);
        r.trace.push_back(s4.trace);
        consumed += s4.perturbation;
        sigma = sigma.compose(s4.sigma);
        if (!s4.success) {
            fail(r, "collapse_max_coordinate", "reduced operator admits no common set of length " + std::to_string(n));
            r.sigma = sigma;
            return r;
        }
    } else {
        s4 = s3;
    }
    // Step 5: the triangle values of each slice should agree.
    if (order >= 2) {
        TriangleReport tri = equalize_triangles(s4.phi, cheap(opts.norm));
        TraceEntry t;
        t.step = "equalize_triangles";
        t.detail = "triangle values " + fmt(tri.upper_value) + " / " + fmt(tri.lower_value) + ", gap " + fmt(tri.gap) +
                   ", shape spread " + fmt(tri.spread);
        if (tri.projection_norm) t.detail += ", implied projection norm >= " + fmt(tri.projection_norm->lower);
        r.trace.push_back(t);
    }
    // Step 6: per-coordinate induction, carried out as a search for a common set on which
    // the stabilized values coincide; measured on Phi itself.
    const std::size_t len4 = s4.phi.domain().dim(0);
    std::vector<std::size_t> best_set;
    double best_proxy = 0.0;
    double best_lambda = 0.0;
    {
        std::vector<std::size_t> pick(n);
        std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t from) {
            if (pos == n) {
                SubsetSelection total = sigma.compose(SubsetSelection::common(order, pick));
                OperatorMatrix c = ops::compress_operator(phi, total);
                const double lam = mean_diagonal(c);
                const double proxy = (c - lam * OperatorMatrix::identity(c.domain())).mass();
                if (best_set.empty() || proxy < best_proxy) {
                    best_set = pick;
                    best_proxy = proxy;
                    best_lambda = lam;
                }
                return;
            }
            for (std::size_t v = from; v + (n - pos) <= len4 + 1; ++v) {
                pick[pos] = v;
                rec(pos + 1, v + 1);
            }
        };
        if (len4 >= n) rec(0, 1);
    }
    if (best_set.empty()) {
        fail(r, "induction", "only " + std::to_string(len4) + " indices remain");
        r.sigma = sigma;
        return r;
    }
    sigma = sigma.compose(SubsetSelection::common(order, best_set));
    r.sigma = sigma;
    {
        TraceEntry t;
        t.step = "induction";
        t.detail = "common set " + set_str(best_set) + " with lambda = mean diagonal " + fmt(best_lambda) +
                   ", coefficient mass of the remainder " + fmt(best_proxy);
        r.trace.push_back(t);
    }

    OperatorMatrix c = ops::compress_operator(phi, sigma);
    double lambda = best_lambda;
    if (best_proxy > 0.0) {
        // One-dimensional refinement of lambda between the extreme diagonal entries.
        double lo = c.entries().diagonal().minCoeff();
        double hi = c.entries().diagonal().maxCoeff();
        const auto quick = cheap(opts.norm);
        double f_best = residual_upper(c, lambda, quick);
        if (hi > lo) {
            const double g = 0.5 * (std::sqrt(5.0) - 1.0);
            double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
            double f1 = residual_upper(c, x1, quick), f2 = residual_upper(c, x2, quick);
            for (int it = 0; it < opts.lambda_evals; ++it) {
                if (f1 <= f2) {
                    hi = x2, x2 = x1, f2 = f1;
                    x1 = hi - g * (hi - lo);
                    f1 = residual_upper(c, x1, quick);
                } else {
                    lo = x1, x1 = x2, f1 = f2;
                    x2 = lo + g * (hi - lo);
                    f2 = residual_upper(c, x2, quick);
                }
            }
            const double x = f1 <= f2 ? x1 : x2;
            const double fx = std::min(f1, f2);
            if (fx < f_best) lambda = x;
        }
        TraceEntry t;
        t.step = "lambda";
        t.detail = "refined from " + fmt(best_lambda) + " to " + fmt(lambda);
        r.trace.push_back(t);
    }
    r.lambda = lambda;
    OperatorMatrix d = c - lambda * OperatorMatrix::identity(c.domain());
    r.residual = norms::entry_bounds(d);
    r.residual.seed = opts.norm.seed;
    r.residual_estimate = norms::operator_norm(d, opts.norm);
    r.residual_mass = d.mass();
    {
        TraceEntry t;
        t.step = "residual";
        t.budget = eps;
        t.perturbation = consumed;
        t.ok = r.residual.upper < eps;
        t.detail = "||K Phi J - lambda I|| in [" + fmt(r.residual.lower) + ", " + fmt(r.residual.upper) +
                   "], ascent value " + fmt(r.residual_estimate->lower) + ", steps consumed " + fmt(consumed);
        r.trace.push_back(t);
    }
    r.deepest_step = "residual";
    if (r.residual.upper < eps) {
        r.success = true;
    } else {
        fail(r, "residual", "measured residual " + fmt(r.residual.upper) + " is not below eps = " + fmt(eps));
    }
    return r;
}

}  // namespace lpt::compress
