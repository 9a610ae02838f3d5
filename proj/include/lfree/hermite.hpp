#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

namespace lfree {

using IntVector = std::vector<mpz_class>;
using IntMatrix = std::vector<IntVector>;

/// Row-style Hermite normal form:  transform * input == form, where transform
/// is unimodular, the first `rank` rows of form are nonzero with strictly
/// increasing positive pivots, entries above each pivot are reduced into
/// [0, pivot), and the remaining rows are zero.
struct HermiteForm {
  IntMatrix form;
  IntMatrix transform;
  std::vector<std::size_t> pivots;  // pivot column per nonzero row
  std::size_t rank = 0;
};

HermiteForm hermite(const IntMatrix& rows, std::size_t columns);

std::size_t integer_rank(const IntMatrix& rows, std::size_t columns);

/// Integer x with x * rows == target, or none.  `unique` reports whether the
/// rows are independent (so the solution is the only one).
struct IntegerSolution {
  IntVector coefficients;
  bool unique = false;
};
std::optional<IntegerSolution> solve_left(const IntMatrix& rows, std::size_t columns, const IntVector& target);
std::optional<IntegerSolution> solve_left(const HermiteForm& h, const IntVector& target);

/// For independent rows spanning L inside Z^columns: whether Z^columns / L is
/// torsion-free, i.e. L is saturated (gcd of maximal minors is 1).
bool saturated(const IntMatrix& rows, std::size_t columns);

}  // namespace lfree
