#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lpt {

using Rational = boost::multiprecision::cpp_rational;

// p in [1, inf], kept exact. Infinity is a marker, never a huge rational.
class Exponent {
public:
    Exponent() : value_(Rational(1)) {}
    Exponent(long long p);  // NOLINT(google-explicit-constructor)
    explicit Exponent(const Rational& p);

    static Exponent infinity();
    // 1/p given; inv = 0 means p = inf.
    static Exponent from_reciprocal(const Rational& inv);
    // Accepts "3/2", "2", "1.5", "inf", "infinity", "∞".
    static Exponent parse(std::string_view text);

    bool is_infinite() const { return !value_.has_value(); }
    const Rational& value() const;
    Rational reciprocal() const;
    double to_double() const;

    // Display form: "3/2", "2", "inf".
    std::string str() const;
    // Interchange form: "3/2", "2/1", "inf".
    std::string interchange() const;

    friend bool operator==(const Exponent& a, const Exponent& b);
    friend std::strong_ordering operator<=>(const Exponent& a, const Exponent& b);

private:
    std::optional<Rational> value_;
};

Exponent conjugate(const Exponent& p);

// 1/r = min{1, sum 1/p_i}
Exponent diagonal_exponent(std::span<const Exponent> ps);

using IndexSet = std::vector<std::size_t>;  // 1-based, strictly increasing

// r_A for every nonempty A, 1/r_A = min{1, sum_{i in A} 1/p_i}.
std::map<IndexSet, Exponent> subset_exponents(std::span<const Exponent> ps);

double lp_norm(std::span<const double> v, const Exponent& p);
// p = +inf allowed.
double lp_norm(std::span<const double> v, double p);

std::vector<Exponent> parse_exponent_list(std::string_view csv);
std::string format_exponent_list(std::span<const Exponent> ps);

}  // namespace lpt
