#include "lptensor/compress/compress.hpp"

#include "lptensor/core/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace lpt::compress {

namespace {

std::size_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// fn(chosen) for every k-subset of items, lexicographic.
template <class Fn>
bool for_each_combination(const std::vector<std::size_t>& items, std::size_t k, Fn&& fn) {
    std::vector<std::size_t> idx(k);
    std::vector<std::size_t> chosen(k);
    if (k > items.size()) return true;
    std::iota(idx.begin(), idx.end(), 0);
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

struct Dfs {
    const std::vector<std::size_t>& ground;
    std::size_t max_len;
    const ExtendFn& accept;
    bool capped_mode;
    std::size_t cap;

    std::vector<std::size_t> prefix;
    std::vector<std::size_t> best;
    std::size_t nodes = 0;
    bool capped = false;
    bool done = false;

    void run(std::size_t start) {
        if (prefix.size() > best.size()) best = prefix;
        if (best.size() >= max_len) {
            done = true;
            return;
        }
        for (std::size_t i = start; i < ground.size(); ++i) {
            if (done || capped) return;
            if (prefix.size() + (ground.size() - i) <= best.size()) return;
            ++nodes;
            if (capped_mode && nodes > cap) {
                capped = true;
                return;
            }
            if (!accept(prefix, ground[i])) continue;
            prefix.push_back(ground[i]);
            run(i + 1);
            prefix.pop_back();
        }
    }
};

}  // namespace

SearchOutcome search_longest(const std::vector<std::size_t>& ground, std::size_t max_len, std::size_t min_len,
                             const ExtendFn& accept, const SearchLimits& limits) {
    Dfs dfs{ground, std::min(max_len, ground.size()), accept, ground.size() > limits.exhaustive_limit,
            limits.node_cap, {}, {}};
    dfs.run(0);
    SearchOutcome out;
    out.set = dfs.best;
    out.found = out.set.size() >= min_len;
    out.exhaustive = !dfs.capped;
    out.nodes = dfs.nodes;
    return out;
}

Coloring::Coloring(std::size_t ground, std::size_t arity, std::vector<int> colors)
    : ground_(ground), arity_(arity), colors_(std::move(colors)) {
    if (arity == 0) throw DomainError("coloring arity must be positive");
    if (colors_.size() != binomial(ground, arity)) {
        throw DimensionError("coloring needs one color per " + std::to_string(arity) + "-subset of {1.." +
                             std::to_string(ground) + "}");
    }
}

Coloring Coloring::from_function(std::size_t ground, std::size_t arity,
                                 const std::function<int(const std::vector<std::size_t>&)>& fn) {
    std::vector<int> colors(binomial(ground, arity));
    std::vector<std::size_t> items(ground);
    std::iota(items.begin(), items.end(), 1);
    for_each_combination(items, arity, [&](const std::vector<std::size_t>& s) {
        colors[rank(s)] = fn(s);
        return true;
    });
    return Coloring(ground, arity, std::move(colors));
}

std::size_t Coloring::rank(const std::vector<std::size_t>& subset) {
    std::size_t r = 0;
    for (std::size_t i = 0; i < subset.size(); ++i) r += binomial(subset[i] - 1, i + 1);
    return r;
}

int Coloring::color(const std::vector<std::size_t>& subset) const {
    if (subset.size() != arity_) throw DimensionError("coloring queried with a subset of the wrong size");
    for (std::size_t i = 0; i < subset.size(); ++i) {
        if (subset[i] < 1 || subset[i] > ground_ || (i > 0 && subset[i] <= subset[i - 1])) {
            throw DomainError("coloring subsets must be increasing within {1..M}");
        }
    }
    return colors_[rank(subset)];
}

std::vector<int> Coloring::palette() const {
    std::vector<int> p(colors_);
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    return p;
}

namespace {

// Search restricted to one color; returns the longest set up to max_len.
SearchOutcome monochromatic_search(const Coloring& c, int color, std::size_t max_len, std::size_t min_len,
                                   const SearchLimits& limits) {
    std::vector<std::size_t> ground(c.ground());
    std::iota(ground.begin(), ground.end(), 1);
    const std::size_t t = c.arity();
    ExtendFn accept = [&](const std::vector<std::size_t>& prefix, std::size_t cand) {
        if (prefix.size() + 1 < t) return true;
        std::vector<std::size_t> sub;
        return for_each_combination(prefix, t - 1, [&](const std::vector<std::size_t>& part) {
            sub = part;
            sub.push_back(cand);
            return c.colors()[Coloring::rank(sub)] == color;
        });
    };
    return search_longest(ground, max_len, min_len, accept, limits);
}

std::vector<int> color_order(const Coloring& c, bool by_class_size) {
    std::vector<int> pal = c.palette();
    if (by_class_size) {
        std::map<int, std::size_t> count;
        for (int x : c.colors()) ++count[x];
        std::stable_sort(pal.begin(), pal.end(), [&](int a, int b) { return count[a] > count[b]; });
    }
    return pal;
}

MonochromaticResult best_over_colors(const Coloring& c, std::size_t max_len, std::size_t min_len,
                                     const SearchLimits& limits) {
    MonochromaticResult res;
    if (min_len > c.ground()) return res;
    if (max_len < c.arity() || c.colors().empty()) {
        // No t-subsets to constrain.
        std::vector<std::size_t> s(std::min(max_len, c.ground()));
        std::iota(s.begin(), s.end(), 1);
        if (s.size() >= min_len) res.set = s;
        return res;
    }
    const bool exhaustive_mode = c.ground() <= limits.exhaustive_limit;
    for (int color : color_order(c, !exhaustive_mode)) {
        SearchOutcome o = monochromatic_search(c, color, max_len, min_len, limits);
        res.nodes += o.nodes;
        res.exhaustive = res.exhaustive && o.exhaustive;
        if (!o.found) continue;
        bool better = !res.set || o.set.size() > res.set->size() ||
                      (o.set.size() == res.set->size() && o.set < *res.set);
        if (better) {
            res.set = o.set;
            res.color = color;
        }
        if (!exhaustive_mode) break;
    }
    return res;
}

}  // namespace

MonochromaticResult monochromatic_subset(const Coloring& c, std::size_t target_size, const SearchLimits& limits) {
    return best_over_colors(c, target_size, target_size, limits);
}

MonochromaticResult largest_monochromatic_subset(const Coloring& c, std::size_t min_size, const SearchLimits& limits) {
    return best_over_colors(c, c.ground(), min_size, limits);
}

std::vector<std::size_t> stable_cluster(const std::vector<double>& values, double width) {
    if (values.empty()) return {};
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });
    std::vector<std::size_t> best;
    std::size_t hi = 0;
    for (std::size_t lo = 0; lo < order.size(); ++lo) {
        hi = std::max(hi, lo);
        while (hi + 1 < order.size() && values[order[hi + 1]] - values[order[lo]] <= width) ++hi;
        std::vector<std::size_t> cand(order.begin() + static_cast<std::ptrdiff_t>(lo),
                                      order.begin() + static_cast<std::ptrdiff_t>(hi + 1));
        std::sort(cand.begin(), cand.end());
        if (cand.size() > best.size() || (cand.size() == best.size() && cand < best)) best = std::move(cand);
    }
    return best;
}

}  // namespace lpt::compress
