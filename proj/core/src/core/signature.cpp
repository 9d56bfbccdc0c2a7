#include "lptensor/core/signature.hpp"

#include "lptensor/core/error.hpp"

namespace lpt {

std::string to_string(NormTag tag) { return tag == NormTag::projective ? "projective" : "injective"; }

NormTag parse_norm_tag(std::string_view text) {
    if (text == "projective" || text == "proj") return NormTag::projective;
    if (text == "injective" || text == "inj") return NormTag::injective;
    throw ParseError("unknown norm tag '" + std::string(text) + "'");
}

NormTag flip(NormTag tag) { return tag == NormTag::projective ? NormTag::injective : NormTag::projective; }

Signature::Signature(std::vector<Factor> factors, NormTag tag) : factors_(std::move(factors)), tag_(tag) {
    if (factors_.empty()) throw DimensionError("signature needs at least one factor");
    for (const auto& f : factors_) {
        if (f.dim == 0) throw DimensionError("factor dimensions must be positive");
    }
    strides_ = row_major_strides(dims());
}

Signature Signature::uniform(std::size_t order, std::size_t dim, const Exponent& p, NormTag tag) {
    return Signature(std::vector<Factor>(order, Factor{dim, p}), tag);
}

Signature Signature::cube(std::span<const Exponent> ps, std::size_t dim, NormTag tag) {
    std::vector<Factor> fs;
    for (const auto& p : ps) fs.push_back({dim, p});
    return Signature(std::move(fs), tag);
}

std::vector<std::size_t> Signature::dims() const {
    std::vector<std::size_t> d;
    d.reserve(factors_.size());
    for (const auto& f : factors_) d.push_back(f.dim);
    return d;
}

std::vector<Exponent> Signature::exponents() const {
    std::vector<Exponent> e;
    for (const auto& f : factors_) e.push_back(f.exp);
    return e;
}

std::vector<double> Signature::exponents_double() const {
    std::vector<double> e;
    for (const auto& f : factors_) e.push_back(f.exp.to_double());
    return e;
}

std::size_t Signature::size() const {
    std::size_t s = factors_.empty() ? 0 : 1;
    for (const auto& f : factors_) s *= f.dim;
    return s;
}

Signature Signature::with_tag(NormTag tag) const { return Signature(factors_, tag); }

Signature Signature::with_dims(std::span<const std::size_t> dims) const {
    if (dims.size() != factors_.size()) throw DimensionError("with_dims: order mismatch");
    auto fs = factors_;
    for (std::size_t i = 0; i < fs.size(); ++i) fs[i].dim = dims[i];
    return Signature(std::move(fs), tag_);
}

Signature Signature::dual() const {
    auto fs = factors_;
    for (auto& f : fs) f.exp = conjugate(f.exp);
    return Signature(std::move(fs), flip(tag_));
}

Signature Signature::restrict_to(std::span<const std::size_t> coords) const {
    std::vector<Factor> fs;
    for (auto c : coords) fs.push_back(factors_.at(c));
    return Signature(std::move(fs), tag_);
}

std::size_t Signature::linear(const MultiIndex& alpha) const {
    if (alpha.size() != factors_.size()) {
        throw DimensionError("multi-index " + alpha.str() + " has wrong order for " + str());
    }
    std::size_t k = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (alpha[i] < 1 || alpha[i] > factors_[i].dim) {
            throw DimensionError("multi-index " + alpha.str() + " out of range for " + str());
        }
        k += (alpha[i] - 1) * strides_[i];
    }
    return k;
}

MultiIndex Signature::multi_index(std::size_t linear) const {
    if (linear >= size()) throw DimensionError("linear index out of range");
    std::vector<std::size_t> a(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        a[i] = linear / strides_[i] + 1;
        linear %= strides_[i];
    }
    return MultiIndex(std::move(a));
}

bool Signature::same_space(const Signature& other) const { return factors_ == other.factors_; }

std::string Signature::str() const {
    std::string s;
    const char* op = tag_ == NormTag::projective ? " (x)^ " : " (x)v ";
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) s += op;
        s += "l_" + factors_[i].exp.str() + "^" + std::to_string(factors_[i].dim);
    }
    return s;
}

}  // namespace lpt
