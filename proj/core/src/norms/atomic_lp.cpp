#include "atomic_lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lpt::norms::detail {

namespace {
constexpr double kPriceTol = 1e-11;
constexpr double kPivotTol = 1e-10;
constexpr std::size_t kRefactorEvery = 64;
}  // namespace

AtomicLp::AtomicLp(Eigen::VectorXd b) : b_(std::move(b)) {
    const Eigen::Index d = b_.size();
    binv_ = Eigen::MatrixXd::Zero(d, d);
    xb_ = b_.cwiseAbs();
    for (Eigen::Index i = 0; i < d; ++i) {
        cols_.push_back(Eigen::VectorXd::Unit(d, i));
        col_norm_.push_back(1.0);
        basis_col_.push_back(static_cast<std::size_t>(i));
        int s = b_[i] < 0 ? -1 : 1;
        basis_sign_.push_back(s);
        binv_(i, i) = s;
    }
}

std::size_t AtomicLp::add_column(Eigen::VectorXd a) {
    col_norm_.push_back(a.norm());
    cols_.push_back(std::move(a));
    return cols_.size() - 1;
}

bool AtomicLp::has_parallel(const Eigen::VectorXd& a) const {
    const double na = a.norm();
    for (std::size_t k = 0; k < cols_.size(); ++k) {
        if (std::abs(cols_[k].dot(a)) >= na * col_norm_[k] * (1.0 - 1e-12)) return true;
    }
    return false;
}

std::vector<std::size_t> AtomicLp::compact() {
    const std::size_t d = rows();
    std::vector<char> basic(cols_.size(), 0);
    for (auto c : basis_col_) basic[c] = 1;
    std::vector<std::size_t> kept;
    std::vector<std::size_t> remap(cols_.size(), 0);
    std::vector<Eigen::VectorXd> cols;
    std::vector<double> norms;
    for (std::size_t k = 0; k < cols_.size(); ++k) {
        if (k < d || basic[k]) {
            remap[k] = kept.size();
            kept.push_back(k);
            cols.push_back(std::move(cols_[k]));
            norms.push_back(col_norm_[k]);
        }
    }
    cols_ = std::move(cols);
    col_norm_ = std::move(norms);
    for (auto& c : basis_col_) c = remap[c];
    return kept;
}

Eigen::VectorXd AtomicLp::dual() const { return binv_.transpose() * Eigen::VectorXd::Ones(b_.size()); }

std::vector<std::pair<std::size_t, double>> AtomicLp::solution() const {
    std::vector<std::pair<std::size_t, double>> out;
    for (std::size_t i = 0; i < basis_col_.size(); ++i) {
        double v = xb_[static_cast<Eigen::Index>(i)];
        if (v > 0.0) out.emplace_back(basis_col_[i], basis_sign_[i] * v);
    }
    return out;
}

void AtomicLp::refactor() {
    const Eigen::Index d = b_.size();
    Eigen::MatrixXd bm(d, d);
    for (Eigen::Index i = 0; i < d; ++i) bm.col(i) = basis_sign_[static_cast<std::size_t>(i)] * cols_[basis_col_[static_cast<std::size_t>(i)]];
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(bm);
    binv_ = lu.inverse();
    xb_ = binv_ * b_;
    for (Eigen::Index i = 0; i < d; ++i) {
        if (xb_[i] < 0.0) xb_[i] = 0.0;  // round-off only; the basis stays primal feasible
    }
    since_refactor_ = 0;
}

bool AtomicLp::solve(std::size_t max_pivots) {
    const Eigen::Index d = b_.size();
    std::vector<char> in_basis(cols_.size(), 0);
    for (auto c : basis_col_) in_basis[c] = 1;
    double last_obj = objective();
    std::size_t stall = 0;
    for (std::size_t iter = 0; iter < max_pivots; ++iter) {
        Eigen::VectorXd y = dual();
        // Dantzig pricing, Bland's rule once the objective stalls.
        bool bland = stall > 40;
        std::size_t enter = cols_.size();
        double best = 1.0 + kPriceTol;
        for (std::size_t k = 0; k < cols_.size(); ++k) {
            if (in_basis[k]) continue;
            double t = std::abs(y.dot(cols_[k]));
            if (t > best) {
                enter = k;
                best = t;
                if (bland) break;
            }
        }
        if (enter == cols_.size()) return true;
        int sign = y.dot(cols_[enter]) > 0 ? 1 : -1;
        Eigen::VectorXd dcol = binv_ * (sign * cols_[enter]);

        Eigen::Index leave = -1;
        double min_ratio = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < d; ++i) {
            if (dcol[i] > kPivotTol) min_ratio = std::min(min_ratio, xb_[i] / dcol[i]);
        }
        if (!std::isfinite(min_ratio)) return true;  // cannot happen for a bounded objective
        double best_piv = 0.0;
        for (Eigen::Index i = 0; i < d; ++i) {
            if (dcol[i] > kPivotTol && xb_[i] / dcol[i] <= min_ratio + 1e-13) {
                if (bland) {
                    if (leave < 0 || basis_col_[static_cast<std::size_t>(i)] < basis_col_[static_cast<std::size_t>(leave)]) leave = i;
                } else if (dcol[i] > best_piv) {
                    best_piv = dcol[i];
                    leave = i;
                }
            }
        }
        const double piv = dcol[leave];
        Eigen::RowVectorXd prow = binv_.row(leave) / piv;
        binv_.noalias() -= dcol * prow;
        binv_.row(leave) = prow;
        const double theta = xb_[leave] / piv;
        xb_ -= theta * dcol;
        xb_[leave] = theta;
        for (Eigen::Index i = 0; i < d; ++i) {
            if (xb_[i] < 0.0) xb_[i] = 0.0;
        }
        in_basis[basis_col_[static_cast<std::size_t>(leave)]] = 0;
        basis_col_[static_cast<std::size_t>(leave)] = enter;
        basis_sign_[static_cast<std::size_t>(leave)] = sign;
        in_basis[enter] = 1;
        ++pivots_;
        if (++since_refactor_ >= kRefactorEvery) refactor();

        double obj = objective();
        if (obj < last_obj - 1e-14 * std::max(1.0, last_obj)) {
            last_obj = obj;
            stall = 0;
        } else {
            ++stall;
        }
    }
    return false;
}

}  // namespace lpt::norms::detail
