#pragma once

#include "adic/gen_matrix.hpp"
#include "adic/numeric.hpp"

#include <optional>
#include <vector>

namespace adic {

using RMatrix = std::vector<RVector>;  // row major

RMatrix to_rational(const GenMatrix& m);
RVector mat_vec(const RMatrix& a, const RVector& x);

// basis of {x : a x = 0}, exact; each basis vector has a 1 at its free column
std::vector<RVector> null_space(RMatrix a);
std::size_t rank(RMatrix a);

// some x >= 0 with a x = b, found by phase-one simplex with Bland's rule
std::optional<RVector> nonnegative_solution(const RMatrix& a, const RVector& b);

// p as a convex combination of pts
bool in_convex_hull(const RVector& p, const std::vector<RVector>& pts);

}  // namespace adic
