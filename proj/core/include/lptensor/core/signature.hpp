#pragma once

#include "lptensor/core/exponent.hpp"
#include "lptensor/core/multi_index.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace lpt {

enum class NormTag { projective, injective };

std::string to_string(NormTag tag);
NormTag parse_norm_tag(std::string_view text);
NormTag flip(NormTag tag);

struct Factor {
    std::size_t dim = 1;
    Exponent exp;

    friend bool operator==(const Factor&, const Factor&) = default;
};

// l_{p_1}^{n_1} (x) ... (x) l_{p_N}^{n_N} with a projective or injective norm.
class Signature {
public:
    Signature() = default;
    Signature(std::vector<Factor> factors, NormTag tag);

    // n^N with a common exponent.
    static Signature uniform(std::size_t order, std::size_t dim, const Exponent& p, NormTag tag);
    // Dimension n on every factor, exponents from ps.
    static Signature cube(std::span<const Exponent> ps, std::size_t dim, NormTag tag);

    std::size_t order() const { return factors_.size(); }
    const std::vector<Factor>& factors() const { return factors_; }
    std::size_t dim(std::size_t i) const { return factors_.at(i).dim; }
    const Exponent& exponent(std::size_t i) const { return factors_.at(i).exp; }
    NormTag tag() const { return tag_; }

    std::vector<std::size_t> dims() const;
    std::vector<Exponent> exponents() const;
    std::vector<double> exponents_double() const;
    std::size_t size() const;  // basis size prod n_i

    Signature with_tag(NormTag tag) const;
    Signature with_dims(std::span<const std::size_t> dims) const;
    // Dual space: conjugate exponents, flipped norm tag.
    Signature dual() const;
    // Factors in `coords` (0-based, increasing), same tag.
    Signature restrict_to(std::span<const std::size_t> coords) const;

    // 0-based linear position of a 1-based multi-index.
    std::size_t linear(const MultiIndex& alpha) const;
    MultiIndex multi_index(std::size_t linear) const;

    bool same_space(const Signature& other) const;  // dims and exponents, ignoring the tag
    std::string str() const;

    friend bool operator==(const Signature&, const Signature&) = default;

private:
    std::vector<Factor> factors_;
    NormTag tag_ = NormTag::projective;
    std::vector<std::size_t> strides_;
};

}  // namespace lpt
