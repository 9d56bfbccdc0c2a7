#pragma once

#include <cstddef>

namespace lpt {

// Per-cell tolerances whose total is kept below fraction * budget.
class EpsilonSchedule {
public:
    enum class Kind { uniform, geometric };

    // `cells` is an upper bound on the number of cells that will be charged.
    static EpsilonSchedule uniform(double budget, std::size_t cells, double fraction = 0.5);
    // eps_{n,m} proportional to 2^{-(n+m)} over ordered pairs n != m.
    static EpsilonSchedule geometric(double budget, double fraction = 0.5);

    Kind kind() const { return kind_; }
    double budget() const { return budget_; }
    double fraction() const { return fraction_; }
    std::size_t cells() const { return cells_; }
    // Guaranteed bound on the sum of all cell tolerances.
    double bound() const { return budget_ * fraction_; }

    // eps_{n,m}, shells 1-based.
    double cell(std::size_t n, std::size_t m) const;
    // k-th cell of a flat enumeration (uniform only; geometric uses 2^{-k}).
    double cell(std::size_t k) const;

    // Same shape with budget scaled by share.
    EpsilonSchedule scaled(double share) const;
    EpsilonSchedule with_cells(std::size_t cells) const;

private:
    EpsilonSchedule(Kind kind, double budget, double fraction, std::size_t cells);

    Kind kind_;
    double budget_;
    double fraction_;
    std::size_t cells_;
};

}  // namespace lpt
