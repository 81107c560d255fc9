#pragma once

#include <string>
#include <vector>

#include "wzcert/multipoly.hpp"

namespace wzcert {

using PolyMatrix = std::vector<std::vector<MultiPoly>>;

struct Echelon {
  PolyMatrix rows;                        // nonzero rows only, in echelon order
  std::vector<std::size_t> pivot_columns;  // one per row
};

/// Fraction-free (Bareiss) forward elimination over the polynomial ring.
/// Every intermediate division is exact.
Echelon fraction_free_echelon(PolyMatrix m, std::size_t columns);

/// Basis of the right nullspace over the fraction field, one vector per
/// free column (in increasing column order), each with polynomial entries,
/// denominators cleared and common content removed.
std::vector<std::vector<MultiPoly>> nullspace(const PolyMatrix& m, std::size_t columns);

MultiPoly determinant(PolyMatrix m);

/// Sylvester resultant of p and q with respect to `var`.
MultiPoly resultant(const MultiPoly& p, const MultiPoly& q, const std::string& var);

}  // namespace wzcert
