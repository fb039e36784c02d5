#pragma once

#include "adic/linear_algebra.hpp"
#include "adic/numeric.hpp"

#include <string>
#include <vector>

namespace adic {

// Rational polynomial, coefficients from the constant term up, no trailing zeros.
class Poly {
 public:
  Poly() = default;
  explicit Poly(RVector coeffs);
  static Poly constant(const Rational& c);
  static Poly x();

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const RVector& coeffs() const { return c_; }
  Rational lead() const { return c_.empty() ? Rational(0) : c_.back(); }
  Rational operator()(const Rational& x) const;
  Poly derivative() const;
  Poly monic() const;
  std::string to_string() const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

 private:
  RVector c_;
  void trim();
};

struct DivMod {
  Poly q, r;
};
DivMod divmod(const Poly& a, const Poly& b);
Poly gcd(Poly a, Poly b);   // monic, gcd(0,0) = 0
Poly squarefree(const Poly& p);

// det(tI - A) and adj(tI - A) = sum_k adj[k] t^k, by Faddeev-LeVerrier
struct CharData {
  Poly charpoly;
  std::vector<RMatrix> adj;
};
CharData characteristic(const RMatrix& a);

// number of distinct real roots in (lo, hi]; requires p(lo) != 0
std::size_t count_roots(const Poly& p, const Rational& lo, const Rational& hi);
// every real root lies in (-bound, bound)
Rational root_bound(const Poly& p);

struct Interval {
  Rational lo, hi;
  Rational width() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
};
Interval operator+(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
Interval eval(const Poly& p, const Interval& x);

}  // namespace adic
