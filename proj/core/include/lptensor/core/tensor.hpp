#pragma once

#include "lptensor/core/signature.hpp"

#include <Eigen/Dense>

#include <vector>

namespace lpt {

class Tensor {
public:
    Tensor() = default;
    explicit Tensor(Signature sig);  // zero tensor
    Tensor(Signature sig, Eigen::VectorXd coeffs);

    static Tensor basis(const Signature& sig, const MultiIndex& alpha);
    // u_1 (x) ... (x) u_N
    static Tensor elementary(const Signature& sig, const std::vector<Eigen::VectorXd>& factors);

    const Signature& signature() const { return sig_; }
    const Eigen::VectorXd& coeffs() const { return coeffs_; }
    Eigen::VectorXd& coeffs() { return coeffs_; }

    double at(const MultiIndex& alpha) const { return coeffs_[sig_.linear(alpha)]; }
    double& at(const MultiIndex& alpha) { return coeffs_[sig_.linear(alpha)]; }

    bool is_zero() const;
    Tensor with_tag(NormTag tag) const;

private:
    Signature sig_;
    Eigen::VectorXd coeffs_;
};

// Outer product in row-major order.
Eigen::VectorXd outer_product(const std::vector<Eigen::VectorXd>& factors);

// entry(beta, alpha) = coefficient of e_beta in Phi e_alpha.
class OperatorMatrix {
public:
    OperatorMatrix() = default;
    OperatorMatrix(Signature domain, Signature codomain);  // zero map
    OperatorMatrix(Signature domain, Signature codomain, Eigen::MatrixXd entries);

    static OperatorMatrix identity(const Signature& sig);
    // Coefficient multiplier e_alpha -> m_alpha e_alpha.
    static OperatorMatrix multiplier(const Signature& sig, const Eigen::VectorXd& m);

    const Signature& domain() const { return domain_; }
    const Signature& codomain() const { return codomain_; }
    const Eigen::MatrixXd& entries() const { return entries_; }
    Eigen::MatrixXd& entries() { return entries_; }

    double entry(const MultiIndex& beta, const MultiIndex& alpha) const;
    double& entry(const MultiIndex& beta, const MultiIndex& alpha);

    Tensor apply(const Tensor& x) const;
    // The adjoint acting between dual spaces: matrix transpose, signatures dualized and swapped.
    OperatorMatrix adjoint() const;
    OperatorMatrix with_tags(NormTag domain_tag, NormTag codomain_tag) const;

    bool is_endomorphism() const { return domain_.same_space(codomain_); }
    // sum |entries|; an upper bound for the norm from a projective domain.
    double mass() const;

private:
    Signature domain_;
    Signature codomain_;
    Eigen::MatrixXd entries_;
};

// this = a o b
OperatorMatrix compose(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator*(double c, const OperatorMatrix& a);

}  // namespace lpt
