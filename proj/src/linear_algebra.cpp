#include "adic/linear_algebra.hpp"

#include "adic/errors.hpp"

namespace adic {

RMatrix to_rational(const GenMatrix& m) {
  RMatrix a(m.nrows(), RVector(m.ncols()));
  for (std::size_t i = 0; i < m.nrows(); ++i)
    for (std::size_t j = 0; j < m.ncols(); ++j) a[i][j] = Rational(m(i, j));
  return a;
}

RVector mat_vec(const RMatrix& a, const RVector& x) {
  RVector y(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j)
      if (a[i][j] != 0) y[i] += a[i][j] * x[j];
  return y;
}

namespace {

// reduced row echelon form in place; returns pivot columns
std::vector<std::size_t> rref(RMatrix& a) {
  std::vector<std::size_t> piv;
  if (a.empty()) return piv;
  const std::size_t n = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    Rational inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = 0; j < n; ++j) a[i][j] -= f * a[r][j];
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

}  // namespace

std::vector<RVector> null_space(RMatrix a) {
  if (a.empty()) return {};
  const std::size_t n = a[0].size();
  auto piv = rref(a);
  std::vector<bool> is_piv(n, false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<RVector> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_piv[f]) continue;
    RVector x(n);
    x[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = -a[r][f];
    basis.push_back(std::move(x));
  }
  return basis;
}

std::size_t rank(RMatrix a) { return rref(a).size(); }

std::optional<RVector> nonnegative_solution(const RMatrix& a, const RVector& b) {
  const std::size_t m = a.size();
  const std::size_t n = m ? a[0].size() : 0;
  // tableau: n original columns, m artificial columns, rhs
  const std::size_t w = n + m;
  RMatrix t(m, RVector(w + 1));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    int s = b[i] < 0 ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) t[i][j] = s * a[i][j];
    t[i][n + i] = 1;
    t[i][w] = s * b[i];
    basis[i] = n + i;
  }
  // reduced costs of the phase-one objective: minimise the sum of artificials
  auto cost = [&](std::size_t j) {
    if (j >= n) return Rational(0);
    Rational c = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (basis[i] >= n) c -= t[i][j];
    return c;
  };
  for (;;) {
    std::size_t enter = w;
    for (std::size_t j = 0; j < w && enter == w; ++j) {
      bool in_basis = false;
      for (auto bj : basis) in_basis = in_basis || bj == j;
      if (!in_basis && cost(j) < 0) enter = j;
    }
    if (enter == w) break;
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational ratio = t[i][w] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) fail(ErrorKind::Internal, "phase-one simplex is unbounded");
    Rational inv = 1 / t[leave][enter];
    for (auto& x : t[leave]) x *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      Rational f = t[i][enter];
      for (std::size_t j = 0; j <= w; ++j) t[i][j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }
  RVector x(n);
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] >= n) {
      if (t[i][w] != 0) return std::nullopt;
    } else {
      x[basis[i]] = t[i][w];
    }
  }
  return x;
}

bool in_convex_hull(const RVector& p, const std::vector<RVector>& pts) {
  if (pts.empty()) return false;
  RMatrix a(p.size() + 1, RVector(pts.size()));
  RVector b(p.size() + 1);
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < pts.size(); ++j) a[i][j] = pts[j][i];
    b[i] = p[i];
  }
  for (std::size_t j = 0; j < pts.size(); ++j) a[p.size()][j] = 1;
  b[p.size()] = 1;
  return nonnegative_solution(a, b).has_value();
}

}  // namespace adic
