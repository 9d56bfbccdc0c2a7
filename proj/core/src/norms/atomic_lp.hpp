#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace lpt::norms::detail {

// min sum |lambda_k| subject to sum_k lambda_k a_k = b, over a growing set of
// columns a_k. Revised simplex on the split variables lambda = lambda+ - lambda-
// with an explicit basis inverse. The first columns must be the canonical basis,
// which gives a feasible starting basis without a phase one.
class AtomicLp {
public:
    explicit AtomicLp(Eigen::VectorXd b);

    std::size_t rows() const { return static_cast<std::size_t>(b_.size()); }
    std::size_t columns() const { return cols_.size(); }
    const Eigen::VectorXd& column(std::size_t k) const { return cols_[k]; }

    // Returns the column index; canonical columns 0..rows-1 exist from the start.
    std::size_t add_column(Eigen::VectorXd a);
    // True when a column parallel to a (up to sign) is already present.
    bool has_parallel(const Eigen::VectorXd& a) const;

    // Drops nonbasic non-canonical columns; returns the surviving old indices in order.
    std::vector<std::size_t> compact();

    // Pivots until no column prices out; returns false if the pivot cap was hit.
    bool solve(std::size_t max_pivots);

    double objective() const { return xb_.sum(); }
    // Simplex multipliers y = B^{-T} 1; |<y, a_k>| <= 1 at optimality.
    Eigen::VectorXd dual() const;
    // (column, signed weight) for positive basic variables.
    std::vector<std::pair<std::size_t, double>> solution() const;
    std::size_t pivots() const { return pivots_; }

private:
    void refactor();

    Eigen::VectorXd b_;
    std::vector<Eigen::VectorXd> cols_;
    std::vector<double> col_norm_;
    std::vector<std::size_t> basis_col_;
    std::vector<int> basis_sign_;
    Eigen::MatrixXd binv_;
    Eigen::VectorXd xb_;
    std::size_t pivots_ = 0;
    std::size_t since_refactor_ = 0;
};

}  // namespace lpt::norms::detail
