#include "lptensor/core/exponent.hpp"

#include "lptensor/core/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

namespace lpt {

namespace {

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

boost::multiprecision::cpp_int parse_int(std::string_view s) {
    if (!all_digits(s)) throw ParseError("malformed exponent component '" + std::string(s) + "'");
    return boost::multiprecision::cpp_int(std::string(s));
}

Rational parse_rational(const std::string& t) {
    if (auto slash = t.find('/'); slash != std::string::npos) {
        auto num = parse_int(trim(std::string_view(t).substr(0, slash)));
        auto den = parse_int(trim(std::string_view(t).substr(slash + 1)));
        if (den == 0) throw ParseError("zero denominator in exponent '" + t + "'");
        return Rational(num, den);
    }
    if (auto dot = t.find('.'); dot != std::string::npos) {
        std::string whole = t.substr(0, dot);
        std::string frac = t.substr(dot + 1);
        if (whole.empty()) whole = "0";
        if (frac.empty()) frac = "0";
        boost::multiprecision::cpp_int scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        return Rational(parse_int(whole) * scale + parse_int(frac), scale);
    }
    return Rational(parse_int(t));
}

}  // namespace

Exponent::Exponent(long long p) : Exponent(Rational(p)) {}

Exponent::Exponent(const Rational& p) : value_(p) {
    if (p < 1) throw DomainError("exponent must be >= 1, got " + p.str());
}

Exponent Exponent::infinity() {
    Exponent e;
    e.value_.reset();
    return e;
}

Exponent Exponent::from_reciprocal(const Rational& inv) {
    if (inv < 0 || inv > 1) throw DomainError("reciprocal exponent must lie in [0,1], got " + inv.str());
    if (inv == 0) return infinity();
    return Exponent(Rational(1) / inv);
}

Exponent Exponent::parse(std::string_view text) {
    std::string t = trim(text);
    std::string lower = t;
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "inf" || lower == "infinity" || lower == "∞" || lower == "+inf") return infinity();
    if (t.empty()) throw ParseError("empty exponent");
    return Exponent(parse_rational(t));
}

const Rational& Exponent::value() const {
    if (!value_) throw DomainError("exponent is infinite");
    return *value_;
}

Rational Exponent::reciprocal() const {
    return value_ ? Rational(1) / *value_ : Rational(0);
}

double Exponent::to_double() const {
    return value_ ? value_->convert_to<double>() : std::numeric_limits<double>::infinity();
}

std::string Exponent::str() const {
    if (!value_) return "inf";
    if (denominator(*value_) == 1) return numerator(*value_).str();
    return numerator(*value_).str() + "/" + denominator(*value_).str();
}

std::string Exponent::interchange() const {
    if (!value_) return "inf";
    return numerator(*value_).str() + "/" + denominator(*value_).str();
}

bool operator==(const Exponent& a, const Exponent& b) { return a.value_ == b.value_; }

std::strong_ordering operator<=>(const Exponent& a, const Exponent& b) {
    if (a.is_infinite() || b.is_infinite()) {
        if (a.is_infinite() && b.is_infinite()) return std::strong_ordering::equal;
        return a.is_infinite() ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    if (*a.value_ < *b.value_) return std::strong_ordering::less;
    if (*a.value_ > *b.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

Exponent conjugate(const Exponent& p) {
    return Exponent::from_reciprocal(Rational(1) - p.reciprocal());
}

Exponent diagonal_exponent(std::span<const Exponent> ps) {
    if (ps.empty()) throw DomainError("diagonal_exponent needs at least one exponent");
    Rational s = 0;
    for (const auto& p : ps) s += p.reciprocal();
    return Exponent::from_reciprocal(s > 1 ? Rational(1) : s);
}

std::map<IndexSet, Exponent> subset_exponents(std::span<const Exponent> ps) {
    if (ps.empty()) throw DomainError("subset_exponents needs at least one exponent");
    if (ps.size() > 20) throw DomainError("subset_exponents supports at most 20 factors");
    std::map<IndexSet, Exponent> out;
    const std::size_t n = ps.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        IndexSet a;
        Rational s = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (std::size_t{1} << i)) {
                a.push_back(i + 1);
                s += ps[i].reciprocal();
            }
        }
        out.emplace(std::move(a), Exponent::from_reciprocal(s > 1 ? Rational(1) : s));
    }
    return out;
}

double lp_norm(std::span<const double> v, double p) {
    if (!(p >= 1.0)) throw DomainError("lp_norm needs p >= 1");
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    if (std::isinf(p) || m == 0.0) return m;
    if (p == 1.0) {
        double s = 0.0;
        for (double x : v) s += std::abs(x);
        return s;
    }
    if (p == 2.0) {
        double s = 0.0;
        for (double x : v) s += (x / m) * (x / m);
        return m * std::sqrt(s);
    }
    // Scale by the max entry to avoid overflow in |x|^p.
    double s = 0.0;
    for (double x : v) s += std::pow(std::abs(x) / m, p);
    return m * std::pow(s, 1.0 / p);
}

double lp_norm(std::span<const double> v, const Exponent& p) { return lp_norm(v, p.to_double()); }

std::vector<Exponent> parse_exponent_list(std::string_view csv) {
    std::vector<Exponent> out;
    std::size_t start = 0;
    while (start <= csv.size()) {
        auto comma = csv.find(',', start);
        auto piece = csv.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        out.push_back(Exponent::parse(piece));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::string format_exponent_list(std::span<const Exponent> ps) {
    std::string s;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (i) s += ",";
        s += ps[i].str();
    }
    return s;
}

}  // namespace lpt
