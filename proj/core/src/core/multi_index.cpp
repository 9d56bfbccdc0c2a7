#include "lptensor/core/multi_index.hpp"

#include "lptensor/core/error.hpp"

#include <algorithm>

namespace lpt {

MultiIndex::MultiIndex(std::initializer_list<std::size_t> entries) : MultiIndex(std::vector<std::size_t>(entries)) {}

MultiIndex::MultiIndex(std::vector<std::size_t> entries) : entries_(std::move(entries)) {
    for (auto a : entries_) {
        if (a == 0) throw DimensionError("multi-index entries are 1-based");
    }
}

std::size_t MultiIndex::magnitude() const {
    return entries_.empty() ? 0 : *std::max_element(entries_.begin(), entries_.end());
}

std::size_t MultiIndex::min() const {
    return entries_.empty() ? 0 : *std::min_element(entries_.begin(), entries_.end());
}

std::string MultiIndex::str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(entries_[i]);
    }
    return s + ")";
}

bool precedes(const MultiIndex& alpha, const MultiIndex& beta) {
    if (alpha.size() == 0 || beta.size() == 0) return true;
    return alpha.magnitude() < beta.min();
}

std::vector<std::size_t> row_major_strides(std::span<const std::size_t> dims) {
    std::vector<std::size_t> strides(dims.size(), 1);
    for (std::size_t i = dims.size(); i-- > 1;) strides[i - 1] = strides[i] * dims[i];
    return strides;
}

std::size_t product(std::span<const std::size_t> dims) {
    std::size_t p = 1;
    for (auto d : dims) p *= d;
    return p;
}

void for_each_multi_index(std::span<const std::size_t> dims, const std::function<void(const MultiIndex&)>& fn) {
    if (dims.empty()) return;
    for (auto d : dims) {
        if (d == 0) return;
    }
    std::vector<std::size_t> cur(dims.size(), 1);
    MultiIndex alpha(cur);
    while (true) {
        fn(alpha);
        std::size_t i = dims.size();
        while (i > 0) {
            --i;
            if (alpha[i] < dims[i]) {
                ++alpha[i];
                break;
            }
            alpha[i] = 1;
            if (i == 0) return;
        }
    }
}

}  // namespace lpt
