#include "lptensor/norms/multilinear.hpp"

#include <cmath>
#include <limits>

namespace lpt::norms {

namespace {

struct Candidates {
    std::vector<Eigen::VectorXd> points;
    double slack = 0.0;  // covering radius of the points on the unit sphere, in l_s
};

bool enumerable_exactly(std::size_t n, double s) { return n == 1 || s == 1.0 || (std::isinf(s) && n <= 20); }

Candidates exact_points(std::size_t n, double s) {
    Candidates c;
    const auto dim = static_cast<Eigen::Index>(n);
    if (n == 1) {
        c.points.push_back(Eigen::VectorXd::Ones(1));
    } else if (s == 1.0) {
        for (Eigen::Index j = 0; j < dim; ++j) c.points.push_back(Eigen::VectorXd::Unit(dim, j));
    } else {
        // Sign vectors up to a global sign.
        for (std::size_t mask = 0; mask < (std::size_t{1} << (n - 1)); ++mask) {
            Eigen::VectorXd v = Eigen::VectorXd::Ones(dim);
            for (std::size_t j = 1; j < n; ++j) {
                if (mask & (std::size_t{1} << (j - 1))) v[static_cast<Eigen::Index>(j)] = -1.0;
            }
            c.points.push_back(v);
        }
    }
    return c;
}

std::size_t grid_count(std::size_t n, std::size_t m) {
    // Half of the integer points on the boundary of [-m, m]^n.
    if (n == 2) return 4 * m;
    return 12 * m * m + 1;
}

// Boundary points of the cube with spacing 1/m, one per antipodal pair, pushed to
// the l_s sphere. Any unit u lies within n^{1/s}/m of one of them.
Candidates grid_points(std::size_t n, double s, std::size_t m) {
    Candidates c;
    const long mm = static_cast<long>(m);
    std::vector<long> k(n);
    auto emit = [&]() {
        for (long v : k) {
            if (v != 0) {
                if (v < 0) return;
                break;
            }
        }
        Eigen::VectorXd p(static_cast<Eigen::Index>(n));
        for (std::size_t i = 0; i < n; ++i) p[static_cast<Eigen::Index>(i)] = static_cast<double>(k[i]) / static_cast<double>(mm);
        c.points.push_back(normalize_in_ball(p, s));
    };
    for (std::size_t face = 0; face < n; ++face) {
        for (long sign : {1L, -1L}) {
            // Coordinates before `face` stay strictly inside to avoid duplicates.
            std::vector<std::size_t> free;
            for (std::size_t i = 0; i < n; ++i) {
                if (i != face) free.push_back(i);
            }
            k[face] = sign * mm;
            std::vector<long> cur(free.size(), -mm);
            while (true) {
                bool ok = true;
                for (std::size_t t = 0; t < free.size(); ++t) {
                    k[free[t]] = cur[t];
                    if (free[t] < face && std::abs(cur[t]) == mm) ok = false;
                }
                if (ok) emit();
                std::size_t t = 0;
                while (t < cur.size() && cur[t] == mm) cur[t++] = -mm;
                if (t == cur.size()) break;
                ++cur[t];
            }
        }
    }
    double h = 1.0 / static_cast<double>(m);
    c.slack = (std::isinf(s) ? 1.0 : std::pow(static_cast<double>(n), 1.0 / s)) * h;
    return c;
}

}  // namespace

CertifiedMax certified_form_max(const Eigen::VectorXd& coeffs, const FormShape& shape, std::size_t max_points) {
    CertifiedMax out;
    const std::size_t n = shape.dims.size();

    // Closed form on one factor: prefer the one that cannot be enumerated, then the largest.
    std::size_t closed = n;
    for (std::size_t i = 0; i < n; ++i) {
        if (!enumerable_exactly(shape.dims[i], shape.balls[i]) && shape.dims[i] > 3) {
            if (closed != n) return out;  // two factors need a fine grid
            closed = i;
        }
    }
    if (closed == n) {
        closed = 0;
        for (std::size_t i = 1; i < n; ++i) {
            if (shape.dims[i] > shape.dims[closed]) closed = i;
        }
    }

    std::vector<Candidates> cand(n);
    std::vector<std::size_t> grid;
    std::size_t exact_count = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == closed) continue;
        if (enumerable_exactly(shape.dims[i], shape.balls[i])) {
            cand[i] = exact_points(shape.dims[i], shape.balls[i]);
            exact_count *= cand[i].points.size();
        } else {
            grid.push_back(i);
        }
    }
    if (exact_count > max_points) return out;

    if (!grid.empty()) {
        std::size_t m = 1;
        auto total = [&](std::size_t mm) {
            double t = static_cast<double>(exact_count);
            for (auto i : grid) t *= static_cast<double>(grid_count(shape.dims[i], mm));
            return t;
        };
        if (total(1) > static_cast<double>(max_points)) return out;
        while (total(m * 2) <= static_cast<double>(max_points)) m *= 2;
        std::size_t lo = m;
        std::size_t hi = m * 2;
        while (hi - lo > 1) {
            std::size_t mid = (lo + hi) / 2;
            (total(mid) <= static_cast<double>(max_points) ? lo : hi) = mid;
        }
        for (auto i : grid) cand[i] = grid_points(shape.dims[i], shape.balls[i], lo);
    }

    double slack = 0.0;
    for (std::size_t i = 0; i < n; ++i) slack += cand[i].slack;

    Factors u(n);
    for (std::size_t i = 0; i < n; ++i) {
        u[i] = i == closed ? Eigen::VectorXd::Zero(static_cast<Eigen::Index>(shape.dims[i])) : cand[i].points.front();
    }
    std::vector<std::size_t> pos(n, 0);
    double best = -1.0;
    while (true) {
        Eigen::VectorXd g = contract_except(coeffs, shape.dims, u, closed);
        double v = dual_ball_norm(g, shape.balls[closed]);
        if (v > best) {
            best = v;
            out.witness = u;
            out.witness[closed] = holder_maximizer(g, shape.balls[closed]);
        }
        std::size_t i = 0;
        for (; i < n; ++i) {
            if (i == closed) continue;
            if (++pos[i] < cand[i].points.size()) {
                u[i] = cand[i].points[pos[i]];
                break;
            }
            pos[i] = 0;
            u[i] = cand[i].points.front();
        }
        if (i == n) break;
    }

    out.lower = best;
    if (slack >= 1.0) {
        out.upper = std::numeric_limits<double>::infinity();
        return out;
    }
    // |F(u) - F(w)| <= sum_i slack_i ||F|| for w the nearest enumerated point,
    // so ||F|| <= max / (1 - sum slack). The relative pad covers rounding.
    out.upper = best / (1.0 - slack) * (1.0 + 1e-12);
    out.available = true;
    return out;
}

}  // namespace lpt::norms
