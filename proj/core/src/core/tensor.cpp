#include "lptensor/core/tensor.hpp"

#include "lptensor/core/error.hpp"

namespace lpt {

Tensor::Tensor(Signature sig) : sig_(std::move(sig)), coeffs_(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(sig_.size()))) {}

Tensor::Tensor(Signature sig, Eigen::VectorXd coeffs) : sig_(std::move(sig)), coeffs_(std::move(coeffs)) {
    if (static_cast<std::size_t>(coeffs_.size()) != sig_.size()) {
        throw DimensionError("coefficient count " + std::to_string(coeffs_.size()) + " does not match " + sig_.str());
    }
}

Tensor Tensor::basis(const Signature& sig, const MultiIndex& alpha) {
    Tensor t(sig);
    t.at(alpha) = 1.0;
    return t;
}

Eigen::VectorXd outer_product(const std::vector<Eigen::VectorXd>& factors) {
    Eigen::VectorXd out = Eigen::VectorXd::Ones(1);
    for (const auto& u : factors) {
        Eigen::VectorXd next(out.size() * u.size());
        for (Eigen::Index a = 0; a < out.size(); ++a) next.segment(a * u.size(), u.size()) = out[a] * u;
        out = std::move(next);
    }
    return out;
}

Tensor Tensor::elementary(const Signature& sig, const std::vector<Eigen::VectorXd>& factors) {
    if (factors.size() != sig.order()) throw DimensionError("elementary tensor: wrong number of factors");
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (static_cast<std::size_t>(factors[i].size()) != sig.dim(i)) {
            throw DimensionError("elementary tensor: factor " + std::to_string(i + 1) + " has wrong length");
        }
    }
    return Tensor(sig, outer_product(factors));
}

bool Tensor::is_zero() const { return coeffs_.size() == 0 || coeffs_.cwiseAbs().maxCoeff() == 0.0; }

Tensor Tensor::with_tag(NormTag tag) const { return Tensor(sig_.with_tag(tag), coeffs_); }

OperatorMatrix::OperatorMatrix(Signature domain, Signature codomain)
    : domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      entries_(Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(codomain_.size()), static_cast<Eigen::Index>(domain_.size()))) {}

OperatorMatrix::OperatorMatrix(Signature domain, Signature codomain, Eigen::MatrixXd entries)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), entries_(std::move(entries)) {
    if (static_cast<std::size_t>(entries_.rows()) != codomain_.size() ||
        static_cast<std::size_t>(entries_.cols()) != domain_.size()) {
        throw DimensionError("operator matrix is " + std::to_string(entries_.rows()) + "x" +
                             std::to_string(entries_.cols()) + ", expected " + std::to_string(codomain_.size()) +
                             "x" + std::to_string(domain_.size()));
    }
}

OperatorMatrix OperatorMatrix::identity(const Signature& sig) {
    auto d = static_cast<Eigen::Index>(sig.size());
    return OperatorMatrix(sig, sig, Eigen::MatrixXd::Identity(d, d));
}

OperatorMatrix OperatorMatrix::multiplier(const Signature& sig, const Eigen::VectorXd& m) {
    if (static_cast<std::size_t>(m.size()) != sig.size()) throw DimensionError("multiplier length mismatch");
    return OperatorMatrix(sig, sig, m.asDiagonal().toDenseMatrix());
}

double OperatorMatrix::entry(const MultiIndex& beta, const MultiIndex& alpha) const {
    return entries_(static_cast<Eigen::Index>(codomain_.linear(beta)), static_cast<Eigen::Index>(domain_.linear(alpha)));
}

double& OperatorMatrix::entry(const MultiIndex& beta, const MultiIndex& alpha) {
    return entries_(static_cast<Eigen::Index>(codomain_.linear(beta)), static_cast<Eigen::Index>(domain_.linear(alpha)));
}

Tensor OperatorMatrix::apply(const Tensor& x) const {
    if (!x.signature().same_space(domain_)) throw DimensionError("apply: tensor is not in the operator domain");
    return Tensor(codomain_, entries_ * x.coeffs());
}

OperatorMatrix OperatorMatrix::adjoint() const {
    return OperatorMatrix(codomain_.dual(), domain_.dual(), entries_.transpose());
}

OperatorMatrix OperatorMatrix::with_tags(NormTag domain_tag, NormTag codomain_tag) const {
    return OperatorMatrix(domain_.with_tag(domain_tag), codomain_.with_tag(codomain_tag), entries_);
}

double OperatorMatrix::mass() const { return entries_.cwiseAbs().sum(); }

OperatorMatrix compose(const OperatorMatrix& a, const OperatorMatrix& b) {
    if (!a.domain().same_space(b.codomain())) throw DimensionError("compose: inner codomain differs from outer domain");
    return OperatorMatrix(b.domain(), a.codomain(), a.entries() * b.entries());
}

OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b) {
    if (!a.domain().same_space(b.domain()) || !a.codomain().same_space(b.codomain())) {
        throw DimensionError("operator difference: spaces differ");
    }
    return OperatorMatrix(a.domain(), a.codomain(), a.entries() - b.entries());
}

OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b) {
    if (!a.domain().same_space(b.domain()) || !a.codomain().same_space(b.codomain())) {
        throw DimensionError("operator sum: spaces differ");
    }
    return OperatorMatrix(a.domain(), a.codomain(), a.entries() + b.entries());
}

OperatorMatrix operator*(double c, const OperatorMatrix& a) {
    return OperatorMatrix(a.domain(), a.codomain(), c * a.entries());
}

}  // namespace lpt
