#include "adic/spectral.hpp"

#include "adic/errors.hpp"
#include "adic/graph.hpp"

#include <algorithm>

namespace adic {

namespace {

Rational split_point(const Poly& p, const Rational& lo, const Rational& hi) {
  Rational mid = (lo + hi) / 2;
  while (p(mid) == 0) mid = (mid + hi) / 2;
  return mid;
}

void check_integer(PerronRoot& r) {
  if (r.exact || r.box.width() >= 1) return;
  BigInt k;
  mpz_fdiv_q(k.get_mpz_t(), r.box.hi.get_num_mpz_t(), r.box.hi.get_den_mpz_t());
  if (Rational(k) > r.box.lo && r.poly(Rational(k)) == 0) r.exact = k;
}

void bisect(PerronRoot& r) {
  Rational mid = split_point(r.poly, r.box.lo, r.box.hi);
  if (count_roots(r.poly, mid, r.box.hi) >= 1) r.box.lo = mid;
  else r.box.hi = mid;
  check_integer(r);
}

}  // namespace

void PerronRoot::refine(const Rational& width) {
  while (!exact && box.width() > width) bisect(*this);
}

std::string PerronRoot::to_string() const {
  if (exact) return exact->get_str();
  return "root of " + poly.to_string() + " in (" + box.lo.get_str() + ", " + box.hi.get_str() + "]";
}

PerronRoot perron_root(const RMatrix& g) {
  PerronRoot r;
  r.poly = squarefree(characteristic(g).charpoly);
  if (r.poly.degree() == 0) fail(ErrorKind::Internal, "empty matrix has no Perron root");
  Rational b = root_bound(r.poly);
  r.box = {-b, b};
  // isolate: the box holds the largest root and no other
  while (count_roots(r.poly, r.box.lo, r.box.hi) > 1) bisect(r);
  while (!r.exact && r.box.width() >= 1) bisect(r);
  check_integer(r);
  return r;
}

PerronRoot perron_root(const GenMatrix& g) {
  if (g.nrows() != g.ncols()) fail(ErrorKind::ShapeMismatch, "Perron root needs a square matrix");
  return perron_root(to_rational(g));
}

int compare_perron(PerronRoot& a, PerronRoot& b) {
  for (;;) {
    if (a.exact && b.exact) return cmp(*a.exact, *b.exact) < 0 ? -1 : (*a.exact == *b.exact ? 0 : 1);
    if (b.exact && !a.exact) return -compare_perron(b, a);
    if (a.exact) {
      Rational r(*a.exact);
      if (r <= b.box.lo) return -1;
      if (r > b.box.hi) return 1;
      if (b.poly(r) == 0) return 0;
      bisect(b);
      continue;
    }
    if (a.box.hi <= b.box.lo) return -1;
    if (b.box.hi <= a.box.lo) return 1;
    Rational lo = std::max(a.box.lo, b.box.lo), hi = std::min(a.box.hi, b.box.hi);
    Poly g = gcd(a.poly, b.poly);
    if (g.degree() >= 1 && count_roots(g, lo, hi) >= 1) return 0;
    if (a.box.width() >= b.box.width()) bisect(a);
    else bisect(b);
  }
}

Interval collatz_wielandt(const GenMatrix& g, const RVector& x) {
  Interval out;
  bool first = true;
  for (std::size_t i = 0; i < g.nrows(); ++i) {
    if (x[i] <= 0) continue;
    Rational s = 0;
    for (std::size_t j = 0; j < g.ncols(); ++j) s += Rational(g(i, j)) * x[j];
    Rational q = s / x[i];
    if (first || q < out.lo) out.lo = q;
    if (first || q > out.hi) out.hi = q;
    first = false;
  }
  return out;
}

RVector EigenRay::midpoint() const {
  if (exact) return value;
  RVector m;
  for (const auto& b : box) m.push_back((b.lo + b.hi) / 2);
  return m;
}

EigenRay eigen_ray(const RMatrix& a, PerronRoot& lambda, const Rational& eps) {
  const std::size_t n = a.size();
  auto cd = characteristic(a);
  auto entry = [&](std::size_t i, std::size_t j) {
    RVector c;
    for (const auto& m : cd.adj) c.push_back(m[i][j]);
    return Poly(std::move(c));
  };
  EigenRay ray;
  if (lambda.exact) {
    Rational l(*lambda.exact);
    RVector v;
    for (std::size_t j = 0; j < n && is_zero(v); ++j) {
      v.assign(n, 0);
      for (std::size_t i = 0; i < n; ++i) v[i] = entry(i, j)(l);
    }
    if (is_zero(v)) {
      RMatrix m = a;
      for (std::size_t i = 0; i < n; ++i) {
        for (auto& x : m[i]) x = -x;
        m[i][i] += l;
      }
      auto ns = null_space(m);
      if (ns.size() != 1) fail(ErrorKind::Internal, "eigenvalue is not simple");
      v = ns[0];
    }
    if (l1_norm(v) == 0) fail(ErrorKind::Internal, "zero eigenvector");
    Rational s = 0;
    for (auto& x : v) s += x;
    for (auto& x : v) x /= s;
    for (auto& x : v)
      if (x < 0) fail(ErrorKind::Internal, "eigenvector is not nonnegative");
    ray.exact = true;
    ray.value = v;
    for (auto& x : v) ray.box.push_back({x, x});
    for (auto& x : v) ray.zero.push_back(x == 0);
    return ray;
  }
  // column of adj(lambda I - a) that does not vanish at lambda
  std::vector<Poly> col;
  std::vector<bool> zero(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Poly> c;
    bool nonzero = false;
    std::vector<bool> z(n);
    for (std::size_t i = 0; i < n; ++i) {
      c.push_back(entry(i, j));
      Poly g = gcd(c.back(), lambda.poly);
      z[i] = c.back().is_zero() || (g.degree() >= 1 && count_roots(g, lambda.box.lo, lambda.box.hi) >= 1);
      nonzero = nonzero || !z[i];
    }
    if (nonzero) {
      col = std::move(c);
      zero = z;
      break;
    }
  }
  if (col.empty()) fail(ErrorKind::Internal, "eigenvalue is not simple");
  for (int iter = 0; iter < 4000; ++iter) {
    std::vector<Interval> v(n);
    bool pos = true, neg = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (zero[i]) continue;
      v[i] = eval(col[i], lambda.box);
      pos = pos && v[i].lo > 0;
      neg = neg && v[i].hi < 0;
    }
    if (pos || neg) {
      if (neg)
        for (auto& x : v) x = {-x.hi, -x.lo};
      Rational slo = 0, shi = 0;
      for (std::size_t i = 0; i < n; ++i) {
        slo += v[i].lo;
        shi += v[i].hi;
      }
      std::vector<Interval> nb(n, Interval{0, 0});
      bool ok = true;
      for (std::size_t i = 0; i < n; ++i) {
        if (zero[i]) continue;
        nb[i] = {v[i].lo / (shi - v[i].hi + v[i].lo), v[i].hi / (slo - v[i].lo + v[i].hi)};
        ok = ok && nb[i].width() <= eps;
      }
      if (ok) {
        ray.box = nb;
        ray.zero = zero;
        return ray;
      }
    }
    bisect(lambda);
    if (lambda.exact) return eigen_ray(a, lambda, eps);
  }
  fail(ErrorKind::Internal, "eigenvector enclosure did not converge");
}

bool is_irreducible(const GenMatrix& g) {
  if (g.nrows() != g.ncols() || g.nrows() == 0) return false;
  Adjacency adj(g.nrows());
  for (std::size_t i = 0; i < g.nrows(); ++i)
    for (std::size_t j = 0; j < g.ncols(); ++j)
      if (g(i, j) != 0) adj[i].push_back(j);
  auto scc = strongly_connected(adj);
  return scc.count == 1 && scc.nontrivial[0];
}

PfEnclosure pf_enclosure(const GenMatrix& g, const Rational& eps) {
  if (!is_irreducible(g)) fail(ErrorKind::NotIrreducible, "Perron-Frobenius data needs an irreducible matrix");
  PfEnclosure out;
  out.lambda = perron_root(g);
  out.lambda.refine(eps);
  out.vector = eigen_ray(to_rational(g), out.lambda, eps);
  return out;
}

GenMatrix stream_block(const StreamDecomposition& dec, std::size_t stream) {
  const std::size_t v = dec.valid_from, c = dec.seq.cycle_length();
  GenMatrix g = product_range(dec.seq, v, v + c);
  std::vector<std::size_t> idx(dec.members_at(stream, v).begin(), dec.members_at(stream, v).end());
  Alphabet a = dec.seq.alphabet(v).subset(idx);
  return g.restricted(a, a);
}

PfEnclosure periodic_pf(const MatrixSequence& seq, std::size_t stream, const Rational& eps) {
  if (!seq.is_periodic()) fail(ErrorKind::Undecided, "Perron data needs an eventually periodic sequence");
  auto dec = stream_decompose(seq);
  if (stream >= dec.streams.size()) fail(ErrorKind::NotPrimitive, "no primitive stream " + std::to_string(stream));
  GenMatrix b = stream_block(dec, stream);
  if (!is_primitive(MatrixSequence::constant(b)).is_yes()) fail(ErrorKind::NotPrimitive, "stream block is not primitive");
  return pf_enclosure(b, eps);
}

}  // namespace adic
