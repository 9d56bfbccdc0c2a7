#pragma once

#include "lptensor/core/exponent.hpp"

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace lpt::classify {

enum class Answer { yes, no, unknown };

// The result each verdict rests on. Wire tags are produced by tag().
enum class Ground {
    none,
    pairwise_reciprocals_at_most_one,   // all 1/p_i + 1/p_j <= 1: primary
    equal_exponents,                    // l_p (x)^ ... (x)^ l_p: primary
    dual_pairwise_reciprocals_at_least_one,  // injective predual form: primary
    subset_exponent_avoidance,          // a pair with sum > 1 avoiding the r_A: not primary
    dual_unit_diagonal_exponent,        // r = 1: the dual is primary
    diagonal_exponent,                  // reflexivity and triangular boundedness
    subset_exponent_embedding,          // l_p embeds iff p = r_A
};

std::string tag(Ground g);
std::string to_string(Answer a);

struct Verdict {
    Answer answer = Answer::unknown;
    Ground ground = Ground::none;
    std::vector<Ground> supporting;                            // further results giving the same answer
    std::optional<std::pair<std::size_t, std::size_t>> pair;  // 1-based (i, j)
    std::optional<IndexSet> subset;
    std::optional<Exponent> exponent;  // r_A, r or the reciprocal sum witness
    std::optional<Rational> reciprocal_sum;
    std::string detail;
};

std::string to_json(const Verdict& v, int indent = 2);

// Exponents must lie in (1, inf).
Verdict embeds_lp(const Exponent& p, std::span<const Exponent> ps);
// (1, inf), except that equal exponents may all be 1.
Verdict is_primary(std::span<const Exponent> ps);
Verdict dual_is_primary(std::span<const Exponent> ps);
Verdict is_reflexive(std::span<const Exponent> ps);
Verdict triangular_bounded(const Exponent& pk, const Exponent& pj);

// Re-evaluates the recorded witnesses of an is_primary verdict.
bool justification_holds(const Verdict& v, std::span<const Exponent> ps);

}  // namespace lpt::classify
