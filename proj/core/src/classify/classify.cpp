#include "lptensor/classify/classify.hpp"

#include "lptensor/core/error.hpp"

#include <json.hpp>

#include <algorithm>

namespace lpt::classify {

namespace {

void require_open_range(std::span<const Exponent> ps, bool allow_equal_ones) {
    if (ps.empty()) throw DomainError("classification needs at least one exponent");
    bool all_equal = std::all_of(ps.begin(), ps.end(), [&](const Exponent& p) { return p == ps.front(); });
    for (const auto& p : ps) {
        if (p.is_infinite()) throw DomainError("exponent inf is outside the supported range (1, inf)");
        if (p == Exponent(1) && !(allow_equal_ones && all_equal)) {
            throw DomainError("exponent 1 is outside the supported range (1, inf)");
        }
    }
}

Rational pair_sum(std::span<const Exponent> ps, std::size_t i, std::size_t j) {
    return ps[i].reciprocal() + ps[j].reciprocal();
}

// Smallest subsets first, then lexicographic.
std::vector<std::pair<IndexSet, Exponent>> ordered_subsets(std::span<const Exponent> ps) {
    auto m = subset_exponents(ps);
    std::vector<std::pair<IndexSet, Exponent>> v(m.begin(), m.end());
    std::stable_sort(v.begin(), v.end(), [](auto& a, auto& b) {
        if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
        return a.first < b.first;
    });
    return v;
}

// p_k avoids {r_A : k not in A}.
bool avoids(std::span<const Exponent> ps, std::size_t k, const std::vector<std::pair<IndexSet, Exponent>>& subsets) {
    for (const auto& [a, r] : subsets) {
        if (std::find(a.begin(), a.end(), k + 1) != a.end()) continue;
        if (r == ps[k]) return false;
    }
    return true;
}

std::optional<std::pair<std::size_t, std::size_t>> first_pair_above_one(std::span<const Exponent> ps) {
    for (std::size_t i = 0; i < ps.size(); ++i) {
        for (std::size_t j = i + 1; j < ps.size(); ++j) {
            if (pair_sum(ps, i, j) > 1) return std::make_pair(i, j);
        }
    }
    return std::nullopt;
}

std::optional<std::pair<std::size_t, std::size_t>> avoiding_pair(std::span<const Exponent> ps) {
    auto subsets = ordered_subsets(ps);
    for (std::size_t i = 0; i < ps.size(); ++i) {
        for (std::size_t j = i + 1; j < ps.size(); ++j) {
            if (pair_sum(ps, i, j) > 1 && avoids(ps, i, subsets) && avoids(ps, j, subsets)) return std::make_pair(i, j);
        }
    }
    return std::nullopt;
}

}  // namespace

std::string tag(Ground g) {
    switch (g) {
        case Ground::none: return "none";
        case Ground::pairwise_reciprocals_at_most_one: return "Thm3.1";
        case Ground::equal_exponents: return "Thm3.3";
        case Ground::dual_pairwise_reciprocals_at_least_one: return "Thm3.4";
        case Ground::subset_exponent_avoidance: return "Thm4.2";
        case Ground::dual_unit_diagonal_exponent: return "Thm5.1";
        case Ground::diagonal_exponent: return "Thm1.3";
        case Ground::subset_exponent_embedding: return "Thm4.1";
    }
    return "none";
}

std::string to_string(Answer a) {
    switch (a) {
        case Answer::yes: return "yes";
        case Answer::no: return "no";
        case Answer::unknown: return "unknown";
    }
    return "unknown";
}

std::string to_json(const Verdict& v, int indent) {
    nlohmann::json doc;
    doc["answer"] = to_string(v.answer);
    doc["justification"] = tag(v.ground);
    nlohmann::json sup = nlohmann::json::array();
    for (auto g : v.supporting) sup.push_back(tag(g));
    doc["supporting"] = sup;
    nlohmann::json w = nlohmann::json::object();
    if (v.pair) w["pair"] = {v.pair->first, v.pair->second};
    if (v.subset) w["subset"] = *v.subset;
    if (v.exponent) w["exponent"] = v.exponent->str();
    if (v.reciprocal_sum) w["reciprocal_sum"] = v.reciprocal_sum->str();
    doc["witness"] = w;
    doc["detail"] = v.detail;
    return doc.dump(indent);
}

Verdict embeds_lp(const Exponent& p, std::span<const Exponent> ps) {
    require_open_range(ps, false);
    require_open_range(std::span<const Exponent>(&p, 1), false);
    Verdict v;
    v.ground = Ground::subset_exponent_embedding;
    for (const auto& [a, r] : ordered_subsets(ps)) {
        if (r == p) {
            v.answer = Answer::yes;
            v.subset = a;
            v.exponent = r;
            v.detail = "p = r_A";
            return v;
        }
    }
    v.answer = Answer::no;
    v.detail = "p differs from every r_A";
    return v;
}

Verdict is_primary(std::span<const Exponent> ps) {
    require_open_range(ps, true);
    Verdict v;
    const std::size_t n = ps.size();
    bool all_equal = std::all_of(ps.begin(), ps.end(), [&](const Exponent& p) { return p == ps.front(); });
    bool pairwise = true;
    std::optional<std::pair<std::size_t, std::size_t>> tight;
    Rational worst = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            Rational s = pair_sum(ps, i, j);
            if (!tight || s > worst) {
                worst = s;
                tight = std::make_pair(i + 1, j + 1);
            }
            if (s > 1) pairwise = false;
        }
    }
    if (all_equal) {
        v.answer = Answer::yes;
        v.ground = Ground::equal_exponents;
        if (pairwise && n > 1) v.supporting.push_back(Ground::pairwise_reciprocals_at_most_one);
        v.exponent = ps.front();
        v.detail = "all exponents equal";
        return v;
    }
    if (pairwise) {
        v.answer = Answer::yes;
        v.ground = Ground::pairwise_reciprocals_at_most_one;
        v.pair = tight;
        v.reciprocal_sum = worst;
        v.detail = "largest pairwise reciprocal sum is at most 1";
        return v;
    }
    if (auto pr = avoiding_pair(ps)) {
        v.answer = Answer::no;
        v.ground = Ground::subset_exponent_avoidance;
        v.pair = std::make_pair(pr->first + 1, pr->second + 1);
        v.reciprocal_sum = pair_sum(ps, pr->first, pr->second);
        v.detail = "pair with reciprocal sum above 1 whose exponents avoid the r_A of complementary subsets";
        return v;
    }
    auto blocking = first_pair_above_one(ps);
    v.answer = Answer::unknown;
    v.pair = std::make_pair(blocking->first + 1, blocking->second + 1);
    v.reciprocal_sum = pair_sum(ps, blocking->first, blocking->second);
    // Report the subset whose r_A blocks the avoidance condition for this pair.
    auto subsets = ordered_subsets(ps);
    for (std::size_t k : {blocking->first, blocking->second}) {
        for (const auto& [a, r] : subsets) {
            if (std::find(a.begin(), a.end(), k + 1) == a.end() && r == ps[k]) {
                v.subset = a;
                v.exponent = r;
                break;
            }
        }
        if (v.subset) break;
    }
    v.detail = "a pair has reciprocal sum above 1, but no such pair avoids the r_A of complementary subsets";
    return v;
}

Verdict dual_is_primary(std::span<const Exponent> ps) {
    require_open_range(ps, false);
    Verdict v;
    Exponent r = diagonal_exponent(ps);
    v.exponent = r;
    if (r == Exponent(1)) {
        v.answer = Answer::yes;
        v.ground = Ground::dual_unit_diagonal_exponent;
        v.detail = "diagonal exponent r = 1";
        return v;
    }
    // r > 1: the space is reflexive and its dual is the injective product of the conjugates.
    bool ok = true;
    for (std::size_t i = 0; i < ps.size() && ok; ++i) {
        for (std::size_t j = i + 1; j < ps.size(); ++j) {
            Rational s = conjugate(ps[i]).reciprocal() + conjugate(ps[j]).reciprocal();
            if (s < 1) {
                ok = false;
                v.pair = std::make_pair(i + 1, j + 1);
                v.reciprocal_sum = s;
                break;
            }
        }
    }
    if (ok) {
        v.answer = Answer::yes;
        v.ground = Ground::dual_pairwise_reciprocals_at_least_one;
        v.detail = "reflexive, and all conjugate pairs satisfy 1/q_i + 1/q_j >= 1";
        return v;
    }
    v.answer = Answer::unknown;
    v.detail = "neither r = 1 nor the conjugate pair condition holds";
    return v;
}

Verdict is_reflexive(std::span<const Exponent> ps) {
    require_open_range(ps, false);
    Verdict v;
    v.ground = Ground::diagonal_exponent;
    Exponent r = diagonal_exponent(ps);
    v.exponent = r;
    v.answer = r > Exponent(1) ? Answer::yes : Answer::no;
    v.detail = v.answer == Answer::yes ? "r > 1" : "r = 1: the diagonal is l_1";
    return v;
}

Verdict triangular_bounded(const Exponent& pk, const Exponent& pj) {
    Exponent both[2] = {pk, pj};
    require_open_range(both, false);
    Verdict v;
    v.ground = Ground::diagonal_exponent;
    Rational s = pk.reciprocal() + pj.reciprocal();
    v.reciprocal_sum = s;
    v.answer = s > 1 ? Answer::yes : Answer::no;
    v.detail = v.answer == Answer::yes ? "1/p_k + 1/p_j > 1" : "1/p_k + 1/p_j <= 1";
    return v;
}

bool justification_holds(const Verdict& v, std::span<const Exponent> ps) {
    switch (v.ground) {
        case Ground::equal_exponents:
            return v.answer == Answer::yes &&
                   std::all_of(ps.begin(), ps.end(), [&](const Exponent& p) { return p == ps.front(); });
        case Ground::pairwise_reciprocals_at_most_one:
            if (v.answer != Answer::yes) return false;
            for (std::size_t i = 0; i < ps.size(); ++i) {
                for (std::size_t j = i + 1; j < ps.size(); ++j) {
                    if (pair_sum(ps, i, j) > 1) return false;
                }
            }
            return true;
        case Ground::subset_exponent_avoidance: {
            if (v.answer != Answer::no || !v.pair) return false;
            std::size_t i = v.pair->first - 1;
            std::size_t j = v.pair->second - 1;
            auto subsets = ordered_subsets(ps);
            return i != j && pair_sum(ps, i, j) > 1 && avoids(ps, i, subsets) && avoids(ps, j, subsets);
        }
        case Ground::none: return v.answer == Answer::unknown;
        default: return false;
    }
}

}  // namespace lpt::classify
