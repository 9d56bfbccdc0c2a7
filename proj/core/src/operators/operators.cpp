#include "lptensor/operators/operators.hpp"

#include "lptensor/core/error.hpp"
#include "lptensor/norms/norms.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

namespace lpt::ops {

namespace {

void check_selection(const SubsetSelection& sigma, const Signature& small, const Signature& big) {
    if (sigma.order() != big.order() || small.order() != big.order()) {
        throw DimensionError("selection order does not match the signatures");
    }
    if (!sigma.fits(big.dims())) throw DimensionError("selection " + sigma.str() + " leaves " + big.str());
    if (sigma.lengths() != small.dims()) throw DimensionError("selection lengths differ from the small signature dims");
    for (std::size_t i = 0; i < big.order(); ++i) {
        if (!(small.exponent(i) == big.exponent(i))) throw DimensionError("selection changes an exponent");
    }
}

std::vector<std::size_t> parse_list(std::string_view text) {
    std::vector<std::size_t> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto comma = text.find(',', start);
        auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        std::size_t v = 0;
        auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), v);
        if (ec != std::errc() || ptr != piece.data() + piece.size()) {
            throw ParseError("expected a positive integer list, got '" + std::string(text) + "'");
        }
        out.push_back(v);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::string join(const std::vector<std::size_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

}  // namespace

Signature compressed_signature(const Signature& big, const SubsetSelection& sigma) {
    if (sigma.order() != big.order()) throw DimensionError("selection order does not match the signature");
    if (!sigma.fits(big.dims())) throw DimensionError("selection " + sigma.str() + " leaves " + big.str());
    auto lengths = sigma.lengths();
    return big.with_dims(lengths);
}

OperatorMatrix embed_J(const SubsetSelection& sigma, const Signature& small, const Signature& big) {
    check_selection(sigma, small, big);
    OperatorMatrix j(small, big);
    for (std::size_t a = 0; a < small.size(); ++a) {
        auto b = big.linear(sigma.apply(small.multi_index(a)));
        j.entries()(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) = 1.0;
    }
    return j;
}

OperatorMatrix compress_K(const SubsetSelection& sigma, const Signature& big, const Signature& small) {
    check_selection(sigma, small, big);
    OperatorMatrix k(big, small);
    for (std::size_t b = 0; b < small.size(); ++b) {
        auto a = big.linear(sigma.apply(small.multi_index(b)));
        k.entries()(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) = 1.0;
    }
    return k;
}

OperatorMatrix compress_operator(const OperatorMatrix& phi, const SubsetSelection& sigma) {
    if (!phi.is_endomorphism()) throw DimensionError("compress_operator needs an endomorphism");
    Signature small = compressed_signature(phi.domain(), sigma);
    Signature small_cod = compressed_signature(phi.codomain(), sigma);
    std::vector<Eigen::Index> pos(small.size());
    for (std::size_t a = 0; a < small.size(); ++a) {
        pos[a] = static_cast<Eigen::Index>(phi.domain().linear(sigma.apply(small.multi_index(a))));
    }
    OperatorMatrix out(small, small_cod);
    for (std::size_t a = 0; a < small.size(); ++a) {
        for (std::size_t b = 0; b < small.size(); ++b) {
            out.entries()(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) = phi.entries()(pos[b], pos[a]);
        }
    }
    return out;
}

ProjectionSpec ProjectionSpec::diagonal() { return {}; }

ProjectionSpec ProjectionSpec::triangular(std::size_t k, std::size_t j, bool strict) {
    ProjectionSpec s;
    s.kind = Kind::triangular;
    s.k = k;
    s.j = j;
    s.strict = strict;
    return s;
}

ProjectionSpec ProjectionSpec::shell(std::size_t n) {
    ProjectionSpec s;
    s.kind = Kind::shell;
    s.n = n;
    return s;
}

ProjectionSpec ProjectionSpec::initial_block(std::size_t n) {
    ProjectionSpec s;
    s.kind = Kind::initial_block;
    s.n = n;
    return s;
}

ProjectionSpec ProjectionSpec::slice(std::vector<std::size_t> prefix) {
    ProjectionSpec s;
    s.kind = Kind::slice;
    s.prefix = std::move(prefix);
    return s;
}

ProjectionSpec ProjectionSpec::min_block(std::size_t n) {
    ProjectionSpec s;
    s.kind = Kind::min_block;
    s.n = n;
    return s;
}

ProjectionSpec ProjectionSpec::tetrahedral(std::vector<std::size_t> perm) {
    ProjectionSpec s;
    s.kind = Kind::tetrahedral;
    s.perm = std::move(perm);
    return s;
}

ProjectionSpec ProjectionSpec::parse(std::string_view text) {
    auto colon = text.find(':');
    std::string_view head = text.substr(0, colon);
    std::string_view rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
    auto need_args = [&]() {
        if (rest.empty()) throw ParseError("projection spec '" + std::string(text) + "' needs arguments");
    };
    auto single = [&]() {
        need_args();
        auto v = parse_list(rest);
        if (v.size() != 1) throw ParseError("projection spec '" + std::string(text) + "' takes one integer");
        return v.front();
    };
    if (head == "diagonal") {
        if (!rest.empty()) throw ParseError("diagonal takes no arguments");
        return diagonal();
    }
    if (head == "triangular") {
        need_args();
        bool strict = false;
        std::string_view args = rest;
        if (auto c2 = rest.find(':'); c2 != std::string_view::npos) {
            std::string_view flag = rest.substr(c2 + 1);
            if (flag == "strict") {
                strict = true;
            } else if (flag != "weak") {
                throw ParseError("triangular flag must be 'strict' or 'weak'");
            }
            args = rest.substr(0, c2);
        }
        auto v = parse_list(args);
        if (v.size() != 2) throw ParseError("triangular takes k,j");
        return triangular(v[0], v[1], strict);
    }
    if (head == "shell") return shell(single());
    if (head == "initial_block") return initial_block(single());
    if (head == "min_block") return min_block(single());
    if (head == "slice") {
        need_args();
        return slice(parse_list(rest));
    }
    if (head == "tetrahedral") {
        need_args();
        return tetrahedral(parse_list(rest));
    }
    throw UnsupportedError("unknown projection kind '" + std::string(head) + "'");
}

std::string ProjectionSpec::str() const {
    switch (kind) {
        case Kind::diagonal: return "diagonal";
        case Kind::triangular:
            return "triangular:" + std::to_string(k) + "," + std::to_string(j) + (strict ? ":strict" : "");
        case Kind::shell: return "shell:" + std::to_string(n);
        case Kind::initial_block: return "initial_block:" + std::to_string(n);
        case Kind::slice: return "slice:" + join(prefix);
        case Kind::min_block: return "min_block:" + std::to_string(n);
        case Kind::tetrahedral: return "tetrahedral:" + join(perm);
    }
    return {};
}

void ProjectionSpec::validate(const Signature& sig) const {
    const std::size_t order = sig.order();
    switch (kind) {
        case Kind::diagonal: return;
        case Kind::triangular:
            if (k < 1 || j < 1 || k > order || j > order || k == j) {
                throw DomainError("triangular coordinates must be distinct and within 1.." + std::to_string(order));
            }
            return;
        case Kind::shell:
        case Kind::initial_block:
        case Kind::min_block:
            if (n < 1) throw DomainError("block index must be positive");
            return;
        case Kind::slice:
            if (order < 2 || prefix.size() != order - 1) throw DomainError("slice needs a prefix over the first N-1 coordinates");
            for (std::size_t i = 0; i < prefix.size(); ++i) {
                if (prefix[i] < 1 || prefix[i] > sig.dim(i)) throw DomainError("slice prefix out of range");
            }
            return;
        case Kind::tetrahedral: {
            auto sorted = perm;
            std::sort(sorted.begin(), sorted.end());
            std::vector<std::size_t> ident(order);
            std::iota(ident.begin(), ident.end(), 1);
            if (sorted != ident) throw DomainError("tetrahedral needs a permutation of 1..N");
            return;
        }
    }
}

bool ProjectionSpec::keeps(const MultiIndex& alpha) const {
    switch (kind) {
        case Kind::diagonal:
            return std::all_of(alpha.entries().begin(), alpha.entries().end(), [&](auto a) { return a == alpha[0]; });
        case Kind::triangular: return strict ? alpha[k - 1] > alpha[j - 1] : alpha[k - 1] >= alpha[j - 1];
        case Kind::shell: return alpha.magnitude() == n;
        case Kind::initial_block: return alpha.magnitude() <= n;
        case Kind::min_block: return alpha.min() <= n;
        case Kind::slice:
            for (std::size_t i = 0; i < prefix.size(); ++i) {
                if (alpha[i] != prefix[i]) return false;
            }
            return true;
        case Kind::tetrahedral:
            for (std::size_t t = 0; t + 1 < perm.size(); ++t) {
                if (alpha[perm[t] - 1] >= alpha[perm[t + 1] - 1]) return false;
            }
            return true;
    }
    return false;
}

OperatorMatrix projection(const ProjectionSpec& spec, const Signature& sig) {
    spec.validate(sig);
    if (spec.kind == ProjectionSpec::Kind::diagonal) {
        OperatorMatrix composed = diagonal_projection_composed(sig);
        OperatorMatrix direct = diagonal_projection_direct(sig);
        if (composed.entries() != direct.entries()) {
            throw Error("diagonal projection: composed and direct constructions disagree");
        }
        return direct;
    }
    OperatorMatrix p(sig, sig);
    for (std::size_t a = 0; a < sig.size(); ++a) {
        if (spec.keeps(sig.multi_index(a))) p.entries()(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(a)) = 1.0;
    }
    return p;
}

OperatorMatrix pair_diagonal(const Signature& pair) {
    if (pair.order() != 2) throw DimensionError("pair_diagonal needs a two-factor signature");
    OperatorMatrix p(pair, pair);
    for (std::size_t a = 0; a < pair.size(); ++a) {
        auto alpha = pair.multi_index(a);
        if (alpha[0] == alpha[1]) p.entries()(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(a)) = 1.0;
    }
    return p;
}

OperatorMatrix diagonal_projection_composed(const Signature& sig) {
    OperatorMatrix p = OperatorMatrix::identity(sig);
    for (std::size_t k = 1; k < sig.order(); ++k) {
        std::vector<std::size_t> coords{0, k};
        OperatorMatrix factor = norms::tensor_op({norms::Placement{pair_diagonal(sig.restrict_to(coords)), coords}}, sig);
        p = compose(p, factor);
    }
    return p;
}

OperatorMatrix diagonal_projection_direct(const Signature& sig) {
    OperatorMatrix p(sig, sig);
    for (std::size_t a = 0; a < sig.size(); ++a) {
        if (ProjectionSpec::diagonal().keeps(sig.multi_index(a))) {
            p.entries()(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(a)) = 1.0;
        }
    }
    return p;
}

OperatorMatrix transpose_operator(const Signature& sig) {
    if (sig.order() != 2 || !(sig.factors()[0] == sig.factors()[1])) {
        throw DimensionError("transpose needs two identical factors");
    }
    OperatorMatrix t(sig, sig);
    for (std::size_t a = 0; a < sig.size(); ++a) {
        auto alpha = sig.multi_index(a);
        auto b = sig.linear(MultiIndex{alpha[1], alpha[0]});
        t.entries()(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) = 1.0;
    }
    return t;
}

std::int64_t factorial(std::size_t m) {
    std::int64_t f = 1;
    for (std::size_t i = 2; i <= m; ++i) f *= static_cast<std::int64_t>(i);
    return f;
}

IntMatrix symmetrizer_counts(std::size_t m, const Signature& sig) {
    if (sig.order() != m) throw DimensionError("symmetrizer order differs from the number of factors");
    if (m > 8) throw DomainError("symmetrizer supports at most 8 factors");
    for (const auto& f : sig.factors()) {
        if (f.dim != sig.dim(0)) throw DimensionError("symmetrizer needs equal factor dimensions");
        if (!(f.exp == sig.exponent(0))) throw DomainError("symmetrizer needs equal exponents");
    }
    const auto d = static_cast<Eigen::Index>(sig.size());
    IntMatrix c = IntMatrix::Zero(d, d);
    std::vector<std::size_t> pi(m);
    for (std::size_t a = 0; a < sig.size(); ++a) {
        auto alpha = sig.multi_index(a);
        std::iota(pi.begin(), pi.end(), 0);
        do {
            std::vector<std::size_t> beta(m);
            for (std::size_t i = 0; i < m; ++i) beta[i] = alpha[pi[i]];
            c(static_cast<Eigen::Index>(sig.linear(MultiIndex(beta))), static_cast<Eigen::Index>(a)) += 1;
        } while (std::next_permutation(pi.begin(), pi.end()));
    }
    return c;
}

OperatorMatrix symmetrizer(std::size_t m, const Signature& sig) {
    IntMatrix c = symmetrizer_counts(m, sig);
    const double f = static_cast<double>(factorial(m));
    return OperatorMatrix(sig, sig, c.cast<double>() / f);
}

SubsetSelection disjointify_selection(std::size_t order, std::size_t n, std::size_t target_dim) {
    if (order == 0 || n == 0) throw DimensionError("disjointify_selection needs N >= 1 and n >= 1");
    if (target_dim != 0 && order * n > target_dim) {
        throw DimensionError("disjointify_selection: N*n = " + std::to_string(order * n) + " exceeds target dimension " +
                             std::to_string(target_dim));
    }
    std::vector<std::vector<std::size_t>> maps(order);
    for (std::size_t i = 1; i <= order; ++i) {
        for (std::size_t j = 1; j <= n; ++j) maps[i - 1].push_back(order * (j - 1) + i);
    }
    return SubsetSelection(std::move(maps));
}

std::vector<std::vector<double>> constant_average_coeffs(const std::vector<std::vector<std::size_t>>& blocks,
                                                         const Exponent& p) {
    std::vector<std::vector<double>> out;
    for (const auto& b : blocks) {
        double a = p.is_infinite() ? 1.0 : std::pow(1.0 / static_cast<double>(b.size()), 1.0 / p.to_double());
        out.emplace_back(b.size(), a);
    }
    return out;
}

OperatorMatrix lp_average_isometry(const std::vector<std::vector<std::size_t>>& blocks,
                                   const std::vector<std::vector<double>>& coeffs, const Exponent& p,
                                   std::size_t target_dim) {
    if (blocks.empty()) throw DimensionError("lp_average_isometry needs at least one block");
    if (coeffs.size() != blocks.size()) throw DimensionError("one coefficient list per block");
    std::size_t last = 0;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const auto& b = blocks[i];
        if (b.empty() || coeffs[i].size() != b.size()) throw DimensionError("block " + std::to_string(i + 1) + " is empty or mismatched");
        for (std::size_t t = 0; t < b.size(); ++t) {
            if (b[t] <= last) throw DomainError("blocks must be increasing and successive");
            last = b[t];
        }
        double norm = lp_norm(std::span<const double>(coeffs[i].data(), coeffs[i].size()), p);
        if (std::abs(norm - 1.0) > 1e-12) {
            throw DomainError("block " + std::to_string(i + 1) + " is not normalized in l_" + p.str());
        }
    }
    std::size_t big = target_dim == 0 ? last : target_dim;
    if (big < last) throw DimensionError("blocks exceed the target dimension");
    Signature dom({Factor{blocks.size(), p}}, NormTag::projective);
    Signature cod({Factor{big, p}}, NormTag::projective);
    OperatorMatrix psi(dom, cod);
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        for (std::size_t t = 0; t < blocks[i].size(); ++t) {
            psi.entries()(static_cast<Eigen::Index>(blocks[i][t] - 1), static_cast<Eigen::Index>(i)) = coeffs[i][t];
        }
    }
    return psi;
}

}  // namespace lpt::ops
