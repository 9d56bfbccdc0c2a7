#include "lptensor/core/selection.hpp"

#include "lptensor/core/error.hpp"

namespace lpt {

SubsetSelection::SubsetSelection(std::vector<std::vector<std::size_t>> maps) : maps_(std::move(maps)) {
    if (maps_.empty()) throw DimensionError("selection needs at least one coordinate map");
    for (const auto& m : maps_) {
        if (m.empty()) throw DimensionError("selection maps must be nonempty");
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (m[j] == 0) throw DimensionError("selection values are 1-based");
            if (j > 0 && m[j] <= m[j - 1]) throw DomainError("selection maps must be strictly increasing");
        }
    }
}

SubsetSelection SubsetSelection::identity(const std::vector<std::size_t>& dims) {
    std::vector<std::vector<std::size_t>> maps;
    for (auto d : dims) {
        std::vector<std::size_t> m(d);
        for (std::size_t j = 0; j < d; ++j) m[j] = j + 1;
        maps.push_back(std::move(m));
    }
    return SubsetSelection(std::move(maps));
}

SubsetSelection SubsetSelection::common(std::size_t order, std::vector<std::size_t> set) {
    return SubsetSelection(std::vector<std::vector<std::size_t>>(order, std::move(set)));
}

std::vector<std::size_t> SubsetSelection::lengths() const {
    std::vector<std::size_t> l;
    for (const auto& m : maps_) l.push_back(m.size());
    return l;
}

MultiIndex SubsetSelection::apply(const MultiIndex& alpha) const {
    if (alpha.size() != maps_.size()) throw DimensionError("selection order differs from multi-index order");
    std::vector<std::size_t> out(alpha.size());
    for (std::size_t i = 0; i < alpha.size(); ++i) out[i] = at(i, alpha[i]);
    return MultiIndex(std::move(out));
}

bool SubsetSelection::preserves_order() const {
    // sigma_k(i) < sigma_l(i+1) for all k, l is enough by monotonicity.
    std::size_t n = maps_.front().size();
    for (const auto& m : maps_) {
        if (m.size() != n) return false;
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        std::size_t hi = 0;
        std::size_t lo = SIZE_MAX;
        for (const auto& m : maps_) {
            hi = std::max(hi, m[i]);
            lo = std::min(lo, m[i + 1]);
        }
        if (hi >= lo) return false;
    }
    return true;
}

void SubsetSelection::require_order_preserving() const {
    if (!preserves_order()) throw DomainError("selection " + str() + " does not preserve the block order");
}

bool SubsetSelection::fits(const std::vector<std::size_t>& big) const {
    if (big.size() != maps_.size()) return false;
    for (std::size_t i = 0; i < maps_.size(); ++i) {
        if (maps_[i].back() > big[i]) return false;
    }
    return true;
}

SubsetSelection SubsetSelection::compose(const SubsetSelection& inner) const {
    if (inner.order() != order()) throw DimensionError("compose: selection orders differ");
    std::vector<std::vector<std::size_t>> maps(order());
    for (std::size_t i = 0; i < order(); ++i) {
        for (auto j : inner.maps_[i]) {
            if (j > maps_[i].size()) throw DimensionError("compose: inner selection leaves the outer domain");
            maps[i].push_back(maps_[i][j - 1]);
        }
    }
    return SubsetSelection(std::move(maps));
}

std::string SubsetSelection::str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < maps_.size(); ++i) {
        if (i) s += "; ";
        s += "{";
        for (std::size_t j = 0; j < maps_[i].size(); ++j) {
            if (j) s += ",";
            s += std::to_string(maps_[i][j]);
        }
        s += "}";
    }
    return s + ")";
}

}  // namespace lpt
