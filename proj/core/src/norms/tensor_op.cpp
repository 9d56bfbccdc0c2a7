#include "lptensor/core/error.hpp"
#include "lptensor/norms/norms.hpp"

#include <set>

namespace lpt::norms {

OperatorMatrix tensor_op(const std::vector<Placement>& parts, const Signature& sig) {
    std::set<std::size_t> used;
    auto cod_factors = sig.factors();
    for (const auto& p : parts) {
        if (p.coords.size() != p.op.domain().order() || p.op.codomain().order() != p.coords.size()) {
            throw DimensionError("tensor_op: placement coordinates do not match the factor operator order");
        }
        for (std::size_t t = 0; t < p.coords.size(); ++t) {
            std::size_t c = p.coords[t];
            if (c >= sig.order()) throw DimensionError("tensor_op: coordinate out of range");
            if (!used.insert(c).second) throw DimensionError("tensor_op: coordinates overlap");
            if (p.op.domain().dim(t) != sig.dim(c) || !(p.op.domain().exponent(t) == sig.exponent(c))) {
                throw DimensionError("tensor_op: factor operator domain differs from coordinate " + std::to_string(c + 1));
            }
            cod_factors[c] = p.op.codomain().factors()[t];
        }
    }
    Signature cod(cod_factors, sig.tag());
    OperatorMatrix out(sig, cod);
    const std::size_t n = sig.order();
    for (std::size_t a = 0; a < sig.size(); ++a) {
        MultiIndex alpha = sig.multi_index(a);
        for (std::size_t b = 0; b < cod.size(); ++b) {
            MultiIndex beta = cod.multi_index(b);
            double v = 1.0;
            for (std::size_t c = 0; c < n && v != 0.0; ++c) {
                if (!used.count(c) && alpha[c] != beta[c]) v = 0.0;
            }
            for (const auto& p : parts) {
                if (v == 0.0) break;
                std::vector<std::size_t> sa;
                std::vector<std::size_t> sb;
                for (auto c : p.coords) {
                    sa.push_back(alpha[c]);
                    sb.push_back(beta[c]);
                }
                v *= p.op.entry(MultiIndex(sb), MultiIndex(sa));
            }
            if (v != 0.0) out.entries()(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) = v;
        }
    }
    return out;
}

OperatorMatrix tensor_op(const OperatorMatrix& s, std::size_t i, const OperatorMatrix& t, std::size_t j,
                         const Signature& sig) {
    return tensor_op({Placement{s, {i}}, Placement{t, {j}}}, sig);
}

}  // namespace lpt::norms
