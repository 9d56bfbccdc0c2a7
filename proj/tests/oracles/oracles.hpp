#pragma once
// Reference computations for the tests. None of these go through the library's
// norm, selection or classification code.

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

namespace oracle {

inline Eigen::MatrixXd as_matrix(const Eigen::VectorXd& v, Eigen::Index m, Eigen::Index n) {
    Eigen::MatrixXd a(m, n);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < n; ++j) a(i, j) = v[i * n + j];
    return a;
}

inline double trace_norm(const Eigen::MatrixXd& a) { return Eigen::JacobiSVD<Eigen::MatrixXd>(a).singularValues().sum(); }
inline double spectral_norm(const Eigen::MatrixXd& a) { return Eigen::JacobiSVD<Eigen::MatrixXd>(a).singularValues()(0); }

inline double lp(const Eigen::VectorXd& v, double p) {
    if (std::isinf(p)) return v.cwiseAbs().maxCoeff();
    double s = 0;
    for (double x : v) s += std::pow(std::abs(x), p);
    return std::pow(s, 1.0 / p);
}

// Injective norm on l_1^m (x) l_1^n: the dual balls are cubes, so the sup sits at sign vectors.
inline double injective_l1_l1(const Eigen::MatrixXd& a) {
    const auto m = a.rows(), n = a.cols();
    double best = 0;
    for (long s = 0; s < (1L << m); ++s)
        for (long t = 0; t < (1L << n); ++t) {
            double v = 0;
            for (Eigen::Index i = 0; i < m; ++i)
                for (Eigen::Index j = 0; j < n; ++j) v += a(i, j) * ((s >> i & 1) ? -1 : 1) * ((t >> j & 1) ? -1 : 1);
            best = std::max(best, std::abs(v));
        }
    return best;
}

// ||T|| on 2x2 matrices with the trace norm: the extreme points of the unit ball are
// rank-one u v^T, so a grid over both angles approaches the sup from below.
template <class Map>
double trace_class_operator_norm_2x2(Map&& apply, int grid = 720) {
    double best = 0;
    for (int a = 0; a < grid; ++a)
        for (int b = 0; b < grid; ++b) {
            double s = std::numbers::pi * a / grid, t = std::numbers::pi * b / grid;
            Eigen::Vector2d u(std::cos(s), std::sin(s)), v(std::cos(t), std::sin(t));
            Eigen::Matrix2d x = u * v.transpose();
            best = std::max(best, trace_norm(apply(x)));
        }
    return best;
}

// Largest subset of {0..n-1} all of whose edges (pairs) share one color; brute force.
template <class Color>
std::size_t largest_monochromatic_clique(std::size_t n, Color&& color) {
    std::size_t best = std::min<std::size_t>(n, 1);
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) s.push_back(i);
        if (s.size() <= best) continue;
        int c = color(s[0], s[1]);
        bool ok = true;
        for (std::size_t i = 0; i < s.size() && ok; ++i)
            for (std::size_t j = i + 1; j < s.size() && ok; ++j) ok = color(s[i], s[j]) == c;
        if (ok) best = s.size();
    }
    return best;
}

// Most values inside any window of the given width; O(n^2).
inline std::size_t densest_window(const std::vector<double>& v, double width) {
    std::size_t best = 0;
    for (double lo : v) {
        std::size_t k = 0;
        for (double x : v) k += (x >= lo && x <= lo + width);
        best = std::max(best, k);
    }
    return best;
}

}  // namespace oracle
