#include "adic/polynomial.hpp"

#include "adic/errors.hpp"

#include <algorithm>
#include <sstream>

namespace adic {

Poly::Poly(RVector coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::constant(const Rational& c) { return Poly(RVector{c}); }
Poly Poly::x() { return Poly(RVector{0, 1}); }

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational Poly::operator()(const Rational& x) const {
  Rational y = 0;
  for (std::size_t i = c_.size(); i-- > 0;) y = y * x + c_[i];
  return y;
}

Poly Poly::derivative() const {
  RVector d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<long>(i));
  return Poly(std::move(d));
}

Poly Poly::monic() const {
  if (c_.empty()) return *this;
  RVector d = c_;
  Rational l = c_.back();
  for (auto& x : d) x /= l;
  return Poly(std::move(d));
}

std::string Poly::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    Rational a = c_[i];
    if (!first) out << (a < 0 ? " - " : " + ");
    else if (a < 0) out << "-";
    first = false;
    Rational m = abs(a);
    if (i == 0 || m != 1) out << m.get_str();
    if (i > 0) out << "x";
    if (i > 1) out << "^" << i;
  }
  return out.str();
}

Poly operator+(const Poly& a, const Poly& b) {
  RVector c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return Poly(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) {
  RVector c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
  return Poly(std::move(c));
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  RVector c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return Poly(std::move(c));
}

DivMod divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) fail(ErrorKind::Internal, "polynomial division by zero");
  RVector r = a.coeffs();
  const auto& bc = b.coeffs();
  int db = b.degree();
  RVector q(std::max(0, a.degree() - db + 1));
  for (int k = a.degree() - db; k >= 0; --k) {
    Rational f = r[k + db] / bc[db];
    q[k] = f;
    for (int j = 0; j <= db; ++j) r[k + j] -= f * bc[j];
  }
  return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = divmod(a, b).r;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Poly squarefree(const Poly& p) {
  if (p.degree() <= 0) return p.monic();
  Poly g = gcd(p, p.derivative());
  return divmod(p, g).q.monic();
}

CharData characteristic(const RMatrix& a) {
  const std::size_t n = a.size();
  CharData out;
  RVector c(n + 1);
  c[n] = 1;
  // M_1 = I, M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k
  RMatrix mk(n, RVector(n));
  for (std::size_t i = 0; i < n; ++i) mk[i][i] = 1;
  out.adj.assign(n, RMatrix(n, RVector(n)));
  for (std::size_t k = 1; k <= n; ++k) {
    out.adj[n - k] = mk;  // coefficient of t^{n-k}
    RMatrix am(n, RVector(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) {
        if (a[i][l] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) am[i][j] += a[i][l] * mk[l][j];
      }
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += am[i][i];
    c[n - k] = -tr / static_cast<long>(k);
    for (std::size_t i = 0; i < n; ++i) am[i][i] += c[n - k];
    mk = std::move(am);
  }
  out.charpoly = Poly(std::move(c));
  return out;
}

namespace {

std::vector<Poly> sturm_chain(const Poly& p) {
  std::vector<Poly> chain{p, p.derivative()};
  while (!chain.back().is_zero()) {
    Poly r = divmod(chain[chain.size() - 2], chain.back()).r;
    chain.push_back(Poly() - r);
  }
  chain.pop_back();
  return chain;
}

std::size_t variations(const std::vector<Poly>& chain, const Rational& x) {
  std::size_t v = 0;
  int last = 0;
  for (const auto& q : chain) {
    int s = sgn(q(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

}  // namespace

std::size_t count_roots(const Poly& p, const Rational& lo, const Rational& hi) {
  if (p.degree() <= 0 || hi <= lo) return 0;
  auto chain = sturm_chain(p);
  std::size_t a = variations(chain, lo), b = variations(chain, hi);
  return a > b ? a - b : 0;
}

Rational root_bound(const Poly& p) {
  Rational m = 0;
  const auto& c = p.coeffs();
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, Rational(abs(c[i] / p.lead())));
  return m + 1;
}

Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }

Interval operator*(const Interval& a, const Interval& b) {
  Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

Interval eval(const Poly& p, const Interval& x) {
  Interval y{0, 0};
  const auto& c = p.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) y = y * x + Interval{c[i], c[i]};
  return y;
}

}  // namespace adic
