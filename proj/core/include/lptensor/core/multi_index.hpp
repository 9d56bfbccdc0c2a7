#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace lpt {

// alpha = (alpha_1, ..., alpha_k), 1-based.
class MultiIndex {
public:
    MultiIndex() = default;
    MultiIndex(std::initializer_list<std::size_t> entries);
    explicit MultiIndex(std::vector<std::size_t> entries);

    std::size_t size() const { return entries_.size(); }
    std::size_t operator[](std::size_t i) const { return entries_[i]; }
    std::size_t& operator[](std::size_t i) { return entries_[i]; }
    const std::vector<std::size_t>& entries() const { return entries_; }

    // |alpha| = max_i alpha_i
    std::size_t magnitude() const;
    std::size_t min() const;

    std::string str() const;

    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
    // Lexicographic, for containers. Not the block order; see precedes().
    friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;

private:
    std::vector<std::size_t> entries_;
};

// alpha < beta in the block sense: max(alpha) < min(beta). Lengths may differ.
bool precedes(const MultiIndex& alpha, const MultiIndex& beta);

// Row-major strides for 0-based linear indexing (last coordinate fastest).
std::vector<std::size_t> row_major_strides(std::span<const std::size_t> dims);
std::size_t product(std::span<const std::size_t> dims);

// Calls fn(alpha) for every alpha in [1..d_1] x ... x [1..d_N], lexicographic.
void for_each_multi_index(std::span<const std::size_t> dims,
                          const std::function<void(const MultiIndex&)>& fn);

}  // namespace lpt
