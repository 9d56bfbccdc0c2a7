#include "detail.hpp"

#include "lptensor/core/error.hpp"
#include "lptensor/core/random.hpp"
#include "lptensor/operators/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace lpt::compress {

using namespace detail;

namespace {

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

// Relation between alpha_k and alpha'_k.
enum class Rel { less, equal, greater };

std::vector<std::vector<Rel>> interleavings(std::size_t order) {
    std::vector<std::vector<Rel>> out;
    std::size_t total = 1;
    for (std::size_t i = 0; i < order; ++i) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
        std::vector<Rel> p(order);
        std::size_t c = code;
        bool all_equal = true;
        for (std::size_t i = 0; i < order; ++i) {
            p[i] = static_cast<Rel>(c % 3);
            c /= 3;
            all_equal = all_equal && p[i] == Rel::equal;
        }
        if (!all_equal) out.push_back(std::move(p));
    }
    return out;
}

std::string pattern_str(const std::vector<Rel>& p) {
    std::string s;
    for (auto r : p) s += r == Rel::less ? '<' : r == Rel::equal ? '=' : '>';
    return s;
}

std::size_t pattern_size(const std::vector<Rel>& p) {
    std::size_t t = 0;
    for (auto r : p) t += r == Rel::equal ? 1 : 2;
    return t;
}

// Reads (alpha, alpha') off an increasing tuple, coordinate blocks in order.
void assign(const std::vector<Rel>& p, const std::vector<std::size_t>& x, std::vector<std::size_t>& a,
            std::vector<std::size_t>& b) {
    std::size_t pos = 0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (p[k] == Rel::equal) {
            a[k] = b[k] = x[pos++];
        } else if (p[k] == Rel::less) {
            a[k] = x[pos];
            b[k] = x[pos + 1];
            pos += 2;
        } else {
            b[k] = x[pos];
            a[k] = x[pos + 1];
            pos += 2;
        }
    }
}

template <class Fn>
bool each_combination(const std::vector<std::size_t>& items, std::size_t k, Fn&& fn) {
    if (k > items.size()) return true;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    std::vector<std::size_t> chosen(k);
    while (true) {
        for (std::size_t i = 0; i < k; ++i) chosen[i] = items[idx[i]];
        if (!fn(chosen)) return false;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == items.size() - k + (i - 1)) --i;
        if (i == 0) return true;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

double norm_upper_bound(const OperatorMatrix& t) {
    if (!t.is_endomorphism()) return t.mass();
    // Permuting coordinates with equal factors is an isometry under either tensor norm, so
    // ||T|| <= sum |c_pi| + mass(T - sum c_pi P_pi), c_pi the median entry along P_pi.
    const Signature& sig = t.domain();
    const std::size_t order = sig.order();
    std::vector<std::size_t> perm(order);
    for (std::size_t i = 0; i < order; ++i) perm[i] = i;
    Eigen::MatrixXd rest = t.entries();
    double weight = 0.0;
    do {
        bool iso = true;
        for (std::size_t i = 0; i < order; ++i) iso = iso && sig.factors()[perm[i]] == sig.factors()[i];
        if (!iso) continue;
        std::vector<std::pair<Eigen::Index, Eigen::Index>> cells;
        cells.reserve(sig.size());
        for (std::size_t a = 0; a < sig.size(); ++a) {
            MultiIndex alpha = sig.multi_index(a);
            MultiIndex beta = alpha;
            for (std::size_t i = 0; i < order; ++i) beta[perm[i]] = alpha[i];
            cells.emplace_back(static_cast<Eigen::Index>(sig.linear(beta)), static_cast<Eigen::Index>(a));
        }
        std::vector<double> v;
        for (auto [r, c] : cells) v.push_back(rest(r, c));
        std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2), v.end());
        const double c = v[v.size() / 2];
        if (c == 0.0) continue;
        for (auto [r, col] : cells) rest(r, col) -= c;
        weight += std::abs(c);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::min(t.mass(), weight + rest.cwiseAbs().sum());
}

CompressionResult ramsey_diagonalize(const OperatorMatrix& t, std::size_t n, double eps, double k_bound,
                                     const CompressOptions& opts) {
    const Cube cube = require_cube(t, "ramsey_diagonalize");
    if (t.domain().tag() != NormTag::injective || t.codomain().tag() != NormTag::injective) {
        throw DomainError("ramsey_diagonalize works on injective tensor spaces");
    }
    if (n == 0) throw DomainError("block length n must be positive");
    if (!(eps > 0.0) || !(k_bound > 0.0)) throw DomainError("eps and K must be positive");
    const std::size_t order = cube.order;
    const std::size_t m = cube.dim;
    const Signature& sig = t.domain();
    const auto& e = t.entries();

    CompressionResult r;
    r.seed = opts.norm.seed;
    {
        TraceEntry tr;
        tr.step = "norm_check";
        tr.budget = k_bound;
        const double ub = norm_upper_bound(t);
        if (ub <= k_bound) {
            tr.perturbation = ub;
            tr.detail = "coefficient bound " + fmt(ub);
        } else if (const double lo = e.cwiseAbs().maxCoeff(); lo > k_bound) {
            throw DomainError("||T|| <= K is false: some entry has modulus " + fmt(lo) + " > K = " + fmt(k_bound));
        } else {
            norms::NormEstimate est = norms::operator_norm(t, opts.norm);
            if (est.upper > k_bound * (1.0 + 1e-9)) {
                throw DomainError("||T|| <= K could not be verified: bracket [" + fmt(est.lower) + ", " + fmt(est.upper) +
                                  "] against K = " + fmt(k_bound));
            }
            tr.perturbation = est.upper;
            tr.detail = "operator norm bracket [" + fmt(est.lower) + ", " + fmt(est.upper) + "]";
        }
        r.trace.push_back(tr);
    }

    auto entry = [&](const std::vector<std::size_t>& row, const std::vector<std::size_t>& col) {
        return e(static_cast<Eigen::Index>(sig.linear(MultiIndex(row))), static_cast<Eigen::Index>(sig.linear(MultiIndex(col))));
    };
    const auto patterns = interleavings(order);
    double tol = eps;
    for (int attempt = 0; attempt <= opts.ramsey_retries; ++attempt) {
        // Phase 1: colour increasing N-tuples by the cell of the diagonal entry.
        const double width = tol * (1.0 - 1e-9);
        Coloring col = Coloring::from_function(m, order, [&](const std::vector<std::size_t>& s) {
            return static_cast<int>(std::floor(entry(s, s) / width));
        });
        MonochromaticResult psi = largest_monochromatic_subset(col, order * n, opts.limits);
        r.deepest_step = "phase1";
        if (!psi.set) {
            r.failure = "phase 1: no monochromatic set of size " + std::to_string(order * n) + " among M = " +
                        std::to_string(m) + (psi.exhaustive ? " (exhaustive)" : " (node cap reached)");
            return r;
        }
        double lo = 0.0, hi = 0.0;
        bool first = true;
        each_combination(*psi.set, order, [&](const std::vector<std::size_t>& s) {
            double v = entry(s, s);
            lo = first ? v : std::min(lo, v);
            hi = first ? v : std::max(hi, v);
            first = false;
            return true;
        });
        r.cluster = *psi.set;
        r.cluster_width = hi - lo;
        {
            TraceEntry tr;
            tr.step = "phase1";
            tr.budget = tol;
            tr.perturbation = r.cluster_width;
            tr.detail = "cluster " + set_str(*psi.set) + ", diagonal values within [" + fmt(lo) + ", " + fmt(hi) + "]";
            r.trace.push_back(tr);
        }

        // Phase 2: every interleaving pattern of (alpha, alpha') inside the set must be good.
        std::vector<std::size_t> rejected(patterns.size(), 0);
        ExtendFn accept = [&](const std::vector<std::size_t>& prefix, std::size_t cand) {
            std::vector<std::size_t> a(order), b(order), x;
            for (std::size_t pi = 0; pi < patterns.size(); ++pi) {
                const std::size_t size = pattern_size(patterns[pi]);
                if (size > prefix.size() + 1) continue;
                bool ok = each_combination(prefix, size - 1, [&](const std::vector<std::size_t>& part) {
                    x = part;
                    x.push_back(cand);
                    assign(patterns[pi], x, a, b);
                    return std::abs(entry(b, a)) < tol;
                });
                if (!ok) {
                    ++rejected[pi];
                    return false;
                }
            }
            return true;
        };
        SearchOutcome good = search_longest(*psi.set, order * n, order * n, accept, opts.limits);
        r.deepest_step = "phase2";
        if (!good.found) {
            std::size_t worst = static_cast<std::size_t>(std::max_element(rejected.begin(), rejected.end()) - rejected.begin());
            r.failure = "phase 2: no good set of size " + std::to_string(order * n) + " inside the cluster; pattern " +
                        pattern_str(patterns[worst]) + " rejected most candidates" +
                        (good.exhaustive ? " (exhaustive)" : " (node cap reached)");
            return r;
        }
        std::vector<std::vector<std::size_t>> maps(order);
        for (std::size_t k = 0; k < order; ++k) {
            maps[k].assign(good.set.begin() + static_cast<std::ptrdiff_t>(k * n),
                           good.set.begin() + static_cast<std::ptrdiff_t>((k + 1) * n));
        }
        r.sigma = SubsetSelection(maps);
        OperatorMatrix c = ops::compress_operator(t, r.sigma);
        r.lambda = mean_diagonal(c);
        OperatorMatrix d = c - r.lambda * OperatorMatrix::identity(c.domain());
        r.residual = norms::operator_norm(d, opts.norm);
        r.residual_mass = d.mass();
        TraceEntry tr;
        tr.step = "phase2";
        tr.budget = eps;
        tr.perturbation = r.residual.upper;
        tr.ok = r.residual.upper <= eps;
        tr.detail = "blocks " + r.sigma.str() + ", lambda " + fmt(r.lambda) + ", residual in [" + fmt(r.residual.lower) +
                    ", " + fmt(r.residual.upper) + "] at tolerance " + fmt(tol);
        r.trace.push_back(tr);
        r.deepest_step = "residual";
        if (r.residual.upper <= eps) {
            r.success = true;
            r.failure.clear();
            return r;
        }
        tol *= 0.5;
    }
    r.failure = "residual above eps after " + std::to_string(opts.ramsey_retries) + " tightenings";
    return r;
}

namespace {

// Unit coefficient vectors covering the sphere of an s-dimensional space; `offset` shifts
// the angles so two nets of the same size do not share points.
std::vector<Eigen::VectorXd> sphere_net(std::size_t s, std::size_t count, double offset, std::uint64_t seed) {
    std::vector<Eigen::VectorXd> out;
    if (s == 1) {
        out.push_back(Eigen::VectorXd::Ones(1));
        return out;
    }
    if (s == 2) {
        for (std::size_t i = 0; i < count; ++i) {
            double th = std::numbers::pi * (static_cast<double>(i) + offset) / static_cast<double>(count);
            Eigen::VectorXd c(2);
            c << std::cos(th), std::sin(th);
            out.push_back(c);
        }
        return out;
    }
    for (std::size_t i = 0; i < s; ++i) out.push_back(Eigen::VectorXd::Unit(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(i)));
    Rng rng(seed);
    while (out.size() < count) {
        Eigen::VectorXd c = gaussian_vector(rng, static_cast<Eigen::Index>(s));
        if (c.norm() > 0.0) out.push_back(c / c.norm());
    }
    return out;
}

}  // namespace

SubspaceBlock avoid_subspace_block(const std::vector<Tensor>& e, std::size_t n, double eps, const CompressOptions& opts) {
    if (e.empty()) throw DomainError("avoid_subspace_block needs at least one vector");
    if (!(eps > 0.0)) throw DomainError("eps must be positive");
    const Signature& sig = e.front().signature();
    for (const auto& x : e) {
        if (!(x.signature() == sig)) throw DimensionError("all vectors of E must share one signature");
    }
    OperatorMatrix probe(sig, sig);
    const Cube cube = require_cube(probe, "avoid_subspace_block");
    if (n == 0 || n > cube.dim) throw DomainError("block length must lie in 1..M");
    const std::size_t order = cube.order;
    const Signature isig = sig.with_tag(NormTag::injective);

    SubspaceBlock out;
    // Orthonormal coefficient basis of span(E).
    Eigen::MatrixXd v(static_cast<Eigen::Index>(sig.size()), static_cast<Eigen::Index>(e.size()));
    for (std::size_t i = 0; i < e.size(); ++i) v.col(static_cast<Eigen::Index>(i)) = e[i].coeffs();
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(v);
    qr.setThreshold(1e-12);
    const auto s = static_cast<std::size_t>(qr.rank());
    Eigen::MatrixXd basis = Eigen::MatrixXd(qr.householderQ()).leftCols(static_cast<Eigen::Index>(s));

    auto block_projection = [&](const std::vector<std::size_t>& block) {
        Eigen::VectorXd mult = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(sig.size()));
        for (const auto& a : grid(order, block.size())) {
            std::vector<std::size_t> big(order);
            for (std::size_t i = 0; i < order; ++i) big[i] = block[a[i] - 1];
            mult[static_cast<Eigen::Index>(sig.linear(MultiIndex(big)))] = 1.0;
        }
        return OperatorMatrix::multiplier(sig, mult);
    };

    if (s == 0) {
        out.success = true;
        out.block = iota1(n);
        out.q = block_projection(out.block);
        return out;
    }

    // Net points, normalized in the injective norm; a net of mesh eta leaves eps - eta for
    // the coefficient test, spread over the n^N coefficients of the block.
    const double eta = 0.25 * eps;
    const std::size_t count = std::max<std::size_t>(8, static_cast<std::size_t>(std::ceil(4.0 / eps))) * (s == 2 ? 1 : 8 * s);
    auto net = sphere_net(s, count, 0.0, derive_seed(opts.norm.seed, 51));
    out.net_points = net.size();
    out.rho = (eps - eta) / std::pow(static_cast<double>(n), static_cast<double>(order));
    Eigen::VectorXd amax = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(sig.size()));
    for (const auto& c : net) {
        Tensor x(isig, basis * c);
        const double nx = norms::injective_norm(x, opts.norm).lower;
        if (nx <= 0.0) continue;
        amax = amax.cwiseMax(x.coeffs().cwiseAbs() / nx);
    }

    ExtendFn accept = [&](const std::vector<std::size_t>& prefix, std::size_t cand) {
        std::vector<std::size_t> set(prefix);
        set.push_back(cand);
        const std::size_t k = set.size();
        for (const auto& a : grid(order, k)) {
            if (a.magnitude() != k) continue;
            std::vector<std::size_t> big(order);
            for (std::size_t i = 0; i < order; ++i) big[i] = set[a[i] - 1];
            if (amax[static_cast<Eigen::Index>(sig.linear(MultiIndex(big)))] >= out.rho) return false;
        }
        return true;
    };
    SearchOutcome found = search_longest(iota1(cube.dim), n, n, accept, opts.limits);
    out.exhaustive = found.exhaustive;
    if (!found.found) {
        out.failure = "no block of size " + std::to_string(n) + " keeps every net coefficient below rho = " + fmt(out.rho) +
                      (found.exhaustive ? " (exhaustive)" : " (node cap reached)");
        return out;
    }
    out.block = found.set;
    out.q = block_projection(out.block);

    // Certificate on a fresh, finer net.
    auto fresh = sphere_net(s, 4 * count, 0.5, derive_seed(opts.norm.seed, 52));
    double cert = 0.0;
    for (const auto& c : fresh) {
        Tensor x(isig, basis * c);
        Tensor qx(isig, out.q.entries() * x.coeffs());
        const double nx = norms::injective_norm(x, opts.norm).lower;
        if (nx <= 0.0) continue;
        const double nq = qx.is_zero() ? 0.0 : norms::injective_norm(qx, opts.norm).upper;
        cert = std::max(cert, nq / nx);
    }
    out.certificate = cert;
    out.success = cert < eps;
    if (!out.success) out.failure = "certificate " + fmt(cert) + " is not below eps";
    return out;
}

}  // namespace lpt::compress
