#include "doctest.h"
#include "oracles.hpp"

#include "adic/errors.hpp"
#include "adic/frobenius.hpp"
#include "adic/polynomial.hpp"
#include "adic/spectral.hpp"

#include <cmath>
#include <numeric>

using namespace adic;
using oracle::Rng;

namespace {

// det(xI - A) by permutation expansion
Rational det_oracle(const GenMatrix& a, long x) {
  const std::size_t n = a.nrows();
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  Rational total = 0;
  do {
    Rational term = 1;
    for (std::size_t i = 0; i < n; ++i) term *= (i == p[i] ? Rational(x) : Rational(0)) - Rational(a(i, p[i]));
    int inv = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inv += p[i] > p[j];
    total += inv % 2 ? -term : term;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

double power_iteration(const GenMatrix& a) {
  const std::size_t n = a.nrows();
  std::vector<double> v(n, 1.0);
  double lam = 0;
  for (int it = 0; it < 3000; ++it) {
    std::vector<double> w(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) w[i] += a(i, j).get_d() * v[j];
    double s = 0;
    for (double x : w) s += x;
    lam = s / std::accumulate(v.begin(), v.end(), 0.0);
    for (auto& x : w) x /= s;
    v = w;
  }
  return lam;
}

}  // namespace

TEST_CASE("characteristic polynomial against the determinant") {
  Rng r(41);
  for (int t = 0; t < 60; ++t) {
    std::size_t n = r.uniform(1, 4);
    auto a = oracle::random_matrix(r, n, n, 4, 0.6);
    auto cd = characteristic(to_rational(a));
    CHECK(cd.charpoly.degree() == static_cast<int>(n));
    for (long x = -3; x <= 3; ++x) CHECK(cd.charpoly(Rational(x)) == det_oracle(a, x));
  }
}

TEST_CASE("Sturm counts") {
  Poly p = (Poly::x() - Poly::constant(1)) * (Poly::x() - Poly::constant(2)) * (Poly::x() - Poly::constant(3));
  CHECK(count_roots(p, 0, 10) == 3);
  CHECK(count_roots(p, Rational(3, 2), 3) == 2);
  CHECK(count_roots(p, Rational(7, 2), 100) == 0);
  CHECK(root_bound(p) > 3);
  // x^2 - 2
  Poly q = Poly::x() * Poly::x() - Poly::constant(2);
  CHECK(count_roots(q, 0, 2) == 1);
  CHECK(count_roots(q, -2, 2) == 2);
}

TEST_CASE("interval evaluation encloses point values") {
  Poly q = Poly::x() * Poly::x() - Poly::constant(2);
  Interval x{Rational(7, 5), Rational(3, 2)};
  Interval y = eval(q, x);
  for (Rational t : {Rational(7, 5), Rational(29, 20), Rational(3, 2)}) CHECK(y.contains(q(t)));
}

TEST_CASE("Perron roots: exact cases") {
  auto r1 = perron_root(GenMatrix::of({{2, 0}, {0, 3}}));
  REQUIRE(r1.exact);
  CHECK(*r1.exact == 3);
  auto r2 = perron_root(GenMatrix::of({{1, 1}, {0, 3}}));
  CHECK(*r2.exact == 3);
  auto r3 = perron_root(GenMatrix::of({{0, 1}, {1, 0}}));
  CHECK(*r3.exact == 1);
  auto r4 = perron_root(GenMatrix::of({{1, 1}, {1, 1}}));
  CHECK(*r4.exact == 2);
}

TEST_CASE("Perron roots against power iteration") {
  Rng r(42);
  for (int t = 0; t < 40; ++t) {
    std::size_t n = r.uniform(1, 4);
    auto a = oracle::random_matrix(r, n, n, 5, 1.0);
    auto root = perron_root(a);
    root.refine(Rational(1, 1000000000));
    double est = power_iteration(a);
    CHECK(root.lower().get_d() <= est + 1e-6);
    CHECK(root.upper().get_d() >= est - 1e-6);
    CHECK((root.upper() - root.lower()) <= Rational(1, 1000000000));
  }
}

TEST_CASE("golden mean root") {
  auto r = perron_root(GenMatrix::of({{1, 1}, {1, 0}}));
  CHECK_FALSE(r.exact);
  r.refine(Rational(1, BigInt("1000000000000")));
  double phi = (1 + std::sqrt(5.0)) / 2;
  CHECK(r.lower().get_d() <= phi + 1e-12);
  CHECK(r.upper().get_d() >= phi - 1e-12);
}

TEST_CASE("exact comparison") {
  auto a = perron_root(GenMatrix::of({{1, 1}, {1, 2}}));
  auto b = perron_root(GenMatrix::of({{2, 1}, {1, 1}}));
  CHECK(compare_perron(a, b) == 0);
  auto c = perron_root(GenMatrix::of({{1, 2}, {2, 5}}));
  CHECK(compare_perron(a, c) == -1);
  CHECK(compare_perron(c, a) == 1);
  auto two = perron_root(GenMatrix::of({{2}}));
  auto three = perron_root(GenMatrix::of({{3}}));
  CHECK(compare_perron(two, three) == -1);
}

TEST_CASE("eigenvector rays") {
  SUBCASE("exact") {
    auto g = GenMatrix::of({{1, 1}, {0, 3}});
    auto lam = perron_root(g);
    auto ray = eigen_ray(to_rational(g), lam, Rational(1, 1000000));
    REQUIRE(ray.exact);
    CHECK(ray.value == RVector{Rational(1, 3), Rational(2, 3)});
    CHECK(adic::apply(g, ray.value) == RVector{Rational(1), Rational(2)});
  }
  SUBCASE("irrational") {
    auto g = GenMatrix::of({{1, 1}, {1, 0}});
    auto lam = perron_root(g);
    auto ray = eigen_ray(to_rational(g), lam, Rational(1, BigInt("1000000000000")));
    CHECK_FALSE(ray.exact);
    auto mid = ray.midpoint();
    double phi = (1 + std::sqrt(5.0)) / 2;
    CHECK(std::abs(mid[0].get_d() - phi / (1 + phi)) < 1e-9);
    auto cw = collatz_wielandt(g, mid);
    CHECK(cw.lo.get_d() <= phi + 1e-9);
    CHECK(cw.hi.get_d() >= phi - 1e-9);
  }
}

TEST_CASE("Collatz-Wielandt brackets the root for any positive vector") {
  Rng r(43);
  for (int t = 0; t < 40; ++t) {
    std::size_t n = r.uniform(1, 4);
    auto a = oracle::random_matrix(r, n, n, 4, 1.0);
    RVector x(n);
    for (auto& v : x) v = r.uniform(1, 9);
    auto cw = collatz_wielandt(a, x);
    auto root = perron_root(a);
    CHECK(cw.lo <= root.upper());
    CHECK(cw.hi >= root.lower());
  }
}

TEST_CASE("Perron data needs irreducibility") {
  CHECK(is_irreducible(GenMatrix::of({{1, 1}, {1, 0}})));
  CHECK_FALSE(is_irreducible(GenMatrix::of({{1, 1}, {0, 1}})));
  CHECK_THROWS_AS(pf_enclosure(GenMatrix::of({{1, 1}, {0, 1}}), Rational(1, 100)), Error);
  auto pf = pf_enclosure(GenMatrix::of({{2, 1}, {1, 2}}), Rational(1, 100));
  CHECK(*pf.lambda.exact == 3);
}

TEST_CASE("stream blocks of a periodic sequence") {
  auto s = MatrixSequence::periodic({}, {GenMatrix::of({{1, 1}, {0, 1}}), GenMatrix::of({{1, 0}, {1, 1}})});
  auto pf = periodic_pf(s, 0, Rational(1, 1000000));
  // product [[2,1],[1,1]] has root phi^2
  double phi2 = std::pow((1 + std::sqrt(5.0)) / 2, 2);
  CHECK(pf.lambda.lower().get_d() <= phi2 + 1e-6);
  CHECK(pf.lambda.upper().get_d() >= phi2 - 1e-6);
}
