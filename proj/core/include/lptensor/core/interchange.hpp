#pragma once

#include "lptensor/core/selection.hpp"
#include "lptensor/core/tensor.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace lpt {

// Tensor: {"signature": [[dim, "p/q" | "inf"], ...], "norm": "projective" | "injective",
//          "coeffs": [...]} with coefficients row-major in lexicographic alpha order.
std::string tensor_to_json(const Tensor& x, int indent = 2);
Tensor tensor_from_json(std::string_view text);

// Accepts a tensor document; "coeffs" is ignored when present.
Signature signature_from_json(std::string_view text);
std::string signature_to_json(const Signature& sig, int indent = 2);

// Operator: the domain in "signature"/"norm", an optional "codomain" object of the
// same shape (defaults to the domain), and "coeffs" holding the codomain x domain
// matrix row-major, so coeffs[row(beta) * dim(domain) + col(alpha)] = entry(beta, alpha).
std::string operator_to_json(const OperatorMatrix& op, int indent = 2);
OperatorMatrix operator_from_json(std::string_view text);

std::string selection_to_json(const SubsetSelection& sigma);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace lpt
