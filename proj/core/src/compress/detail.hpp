#pragma once

#include "lptensor/compress/compress.hpp"

#include <vector>

namespace lpt::compress::detail {

struct Cube {
    std::size_t order = 0;
    std::size_t dim = 0;
};

// Endomorphism whose factors all have the same dimension.
Cube require_cube(const OperatorMatrix& op, const char* what);

// All multi-indices over positions 1..len in each of `order` coordinates, row-major.
std::vector<MultiIndex> grid(std::size_t order, std::size_t len);

// alpha_hat with `j` inserted at coordinate c.
MultiIndex insert_at(const MultiIndex& hat, std::size_t c, std::size_t j);
MultiIndex remove_at(const MultiIndex& alpha, std::size_t c);

double mean_diagonal(const OperatorMatrix& op);
// K_S Phi J_S for a common index set S.
OperatorMatrix compress_common(const OperatorMatrix& op, const std::vector<std::size_t>& set);

std::vector<std::size_t> iota1(std::size_t n);

}  // namespace lpt::compress::detail
