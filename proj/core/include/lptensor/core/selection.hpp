#pragma once

#include "lptensor/core/multi_index.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace lpt {

// sigma = (sigma_1, ..., sigma_N), each a strictly increasing map
// {1..n_i} -> {1..M_i}. Stored 1-based: maps()[i][j-1] = sigma_i(j).
class SubsetSelection {
public:
    SubsetSelection() = default;
    explicit SubsetSelection(std::vector<std::vector<std::size_t>> maps);

    static SubsetSelection identity(const std::vector<std::size_t>& dims);
    // Same index set on every coordinate.
    static SubsetSelection common(std::size_t order, std::vector<std::size_t> set);

    std::size_t order() const { return maps_.size(); }
    std::size_t length(std::size_t i) const { return maps_.at(i).size(); }
    std::vector<std::size_t> lengths() const;
    const std::vector<std::vector<std::size_t>>& maps() const { return maps_; }
    // sigma_i(j), j 1-based.
    std::size_t at(std::size_t i, std::size_t j) const { return maps_.at(i).at(j - 1); }

    MultiIndex apply(const MultiIndex& alpha) const;

    // Interlacing: i < j implies sigma_k(i) < sigma_l(j) for all k, l.
    bool preserves_order() const;
    void require_order_preserving() const;
    // Every sigma_i(n_i) <= big[i].
    bool fits(const std::vector<std::size_t>& big) const;

    // (this o inner)_i(j) = this_i(inner_i(j)).
    SubsetSelection compose(const SubsetSelection& inner) const;

    std::string str() const;

    friend bool operator==(const SubsetSelection&, const SubsetSelection&) = default;

private:
    std::vector<std::vector<std::size_t>> maps_;
};

}  // namespace lpt
