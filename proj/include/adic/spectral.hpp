#pragma once

#include "adic/frobenius.hpp"
#include "adic/polynomial.hpp"

#include <optional>
#include <string>
#include <vector>

namespace adic {

// The Perron root of a square nonnegative matrix: the largest real root of its
// characteristic polynomial, held as an isolating interval (lo, hi] of the
// squarefree part, or exactly when it is an integer.
struct PerronRoot {
  Poly poly;
  Interval box;
  std::optional<BigInt> exact;

  void refine(const Rational& width);
  Rational lower() const { return exact ? Rational(*exact) : box.lo; }
  Rational upper() const { return exact ? Rational(*exact) : box.hi; }
  std::string to_string() const;
};

PerronRoot perron_root(const GenMatrix& g);
PerronRoot perron_root(const RMatrix& g);
// exact sign of a - b
int compare_perron(PerronRoot& a, PerronRoot& b);

// [min (gx)_i/x_i, max (gx)_i/x_i] over the support of a positive x
Interval collatz_wielandt(const GenMatrix& g, const RVector& x);

// A nonnegative eigenvector for a simple root, normalised to coordinate sum
// one; exact when the root is an integer, else per-coordinate intervals.
struct EigenRay {
  bool exact = false;
  RVector value;                 // exact case
  std::vector<Interval> box;     // always filled (degenerate when exact)
  std::vector<bool> zero;        // coordinates known to vanish
  RVector midpoint() const;
};
EigenRay eigen_ray(const RMatrix& a, PerronRoot& lambda, const Rational& eps);

struct PfEnclosure {
  PerronRoot lambda;
  EigenRay vector;
};
// Perron data of an irreducible square matrix (NotIrreducible otherwise)
PfEnclosure pf_enclosure(const GenMatrix& g, const Rational& eps);

// one-cycle product of a primitive stream's diagonal block, rows/cols = the
// stream's members at dec.valid_from
GenMatrix stream_block(const StreamDecomposition& dec, std::size_t stream);
// NotPrimitive when `stream` is not a primitive stream of the decomposition
PfEnclosure periodic_pf(const MatrixSequence& seq, std::size_t stream, const Rational& eps);

bool is_irreducible(const GenMatrix& g);

}  // namespace adic
