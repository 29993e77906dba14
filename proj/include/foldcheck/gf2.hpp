#pragma once

#include <optional>
#include <vector>

#include "foldcheck/bitvec.hpp"

namespace foldcheck::gf2 {

// Rows all share one length.
using Matrix = std::vector<BitVec>;

std::size_t rank(Matrix rows);

bool invertible(const Matrix& square);

// Solves A x = b where A is given by rows (A.size() equations, columns unknowns).
// Returns nullopt when the system is inconsistent or underdetermined.
std::optional<BitVec> solve_unique(const Matrix& a, const BitVec& b, std::size_t columns);

}  // namespace foldcheck::gf2
