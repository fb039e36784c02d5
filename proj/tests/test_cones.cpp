#include "doctest.h"
#include "oracles.hpp"

#include "adic/cones.hpp"
#include "adic/errors.hpp"
#include "adic/linear_algebra.hpp"
#include "adic/measures.hpp"

using namespace adic;
using oracle::Rng;

namespace {

RVector normalized_column(const GenMatrix& m, std::size_t j) {
  RVector v(m.nrows());
  Rational s = 0;
  for (std::size_t i = 0; i < m.nrows(); ++i) s += v[i] = m(i, j);
  for (auto& x : v) x /= s;
  return v;
}

MatrixSequence constant(std::initializer_list<std::initializer_list<long>> m) {
  return MatrixSequence::constant(GenMatrix::of(m));
}

}  // namespace

TEST_CASE("extreme points are normalized columns and the simplices nest") {
  Rng r(51);
  for (int t = 0; t < 40; ++t) {
    auto s = oracle::random_reduced(r, 4, 2, 2);
    for (std::size_t n = 0; n < 4; ++n) {
      auto a = simplex_image(s, 0, n), b = simplex_image(s, 0, n + 1);
      GenMatrix p = product_range(s, 0, n + 1);
      REQUIRE(a.extreme_points.size() == a.columns.size());
      for (std::size_t e = 0; e < a.extreme_points.size(); ++e) {
        CHECK(a.extreme_points[e] == normalized_column(p, a.columns[e]));
        CHECK(l1_norm(a.extreme_points[e]) == 1);
      }
      // no extreme point is a mix of the others
      for (std::size_t e = 0; e < a.extreme_points.size(); ++e) {
        auto others = a.extreme_points;
        others.erase(others.begin() + static_cast<long>(e));
        if (!others.empty()) CHECK_FALSE(in_convex_hull(a.extreme_points[e], others));
      }
      for (const auto& x : b.extreme_points) CHECK(in_convex_hull(x, a.extreme_points));
      CHECK(b.diameter <= a.diameter);
    }
  }
}

TEST_CASE("simplex examples") {
  CHECK(simplex_image(constant({{2, 1}, {0, 3}}), 0, 12).extreme_points.size() == 2);
  CHECK(simplex_image(constant({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), 0, 5).extreme_points.size() == 3);
  auto s = simplex_image(constant({{1, 1}, {1, 1}}), 0, 3);
  CHECK(s.extreme_points.size() == 1);
  CHECK(s.diameter == 0);
}

TEST_CASE("ergodic counts") {
  CHECK(*extreme_count(constant({{1, 1}, {0, 3}}), 6).exact == 2);
  CHECK(*extreme_count(constant({{1, 1}, {1, 1}}), 6).exact == 1);
  CHECK(*extreme_count(constant({{2, 0}, {0, 3}}), 6).exact == 2);
  CHECK(*extreme_count(constant({{3, 1}, {0, 2}}), 6).exact == 1);
  CHECK_THROWS_AS(extreme_count(constant({{1, 1}, {0, 0}}), 3), Error);
}

TEST_CASE("extreme count never exceeds liminf of alphabet sizes") {
  Rng r(52);
  for (int t = 0; t < 100; ++t) {
    auto s = oracle::random_reduced(r);
    std::size_t lim = s.alphabet(s.prefix_length()).size();
    for (std::size_t k = s.prefix_length(); k < s.rep_length(); ++k) lim = std::min(lim, s.alphabet(k).size());
    for (std::size_t depth = 0; depth <= 6; ++depth) {
      auto ec = extreme_count(s, depth);
      CHECK(ec.liminf_bound == lim);
      // the image of the level-(depth+1) simplex needs at most that many points
      CHECK(ec.count <= s.alphabet(depth + 1).size());
      REQUIRE(ec.exact);
      CHECK(*ec.exact <= lim);
      CHECK(*ec.exact >= 1);
    }
  }
}

TEST_CASE("positive matrices have one ergodic measure") {
  Rng r(53);
  for (int t = 0; t < 30; ++t) {
    std::size_t n = r.uniform(1, 4);
    auto s = MatrixSequence::constant(oracle::random_matrix(r, n, n, 3, 1.0));
    const std::size_t wielandt = (n - 1) * (n - 1) + 1;
    for (std::size_t depth = 1; depth <= wielandt; ++depth) CHECK(*extreme_count(s, depth).exact == 1);
  }
}

TEST_CASE("eigenvector sequences satisfy the eigen relation exactly") {
  Rng r(54);
  for (int t = 0; t < 40; ++t) {
    auto s = oracle::random_reduced(r);
    for (const auto& w : eigvec_sequences(s, 7)) {
      CHECK(eigen_relation_holds(s, w));
      REQUIRE(w.w.size() == w.depth + 1);
      for (std::size_t i = 0; i < w.depth; ++i) CHECK(adic::apply(s[i], w.w[i + 1]) == w.w[i]);
      CHECK(l1_norm(w.w[0]) == 1);
      CHECK(w.stream.has_value());
    }
  }
}

TEST_CASE("primitive sequences have strictly positive eigenvector sequences") {
  // finite-depth columns are positive far too often; the limit sequences are
  // the classified ergodic rays
  Rng r(55);
  int seen_primitive = 0, seen_other = 0;
  for (int t = 0; t < 60; ++t) {
    auto s = oracle::random_reduced(r, 3, 1, 2);
    auto c = classify_measures(s);
    bool positive = true;
    for (std::size_t k = 0; k < c.records.size(); ++k) {
      if (c.records[k].verdict != Finiteness::Finite) continue;
      auto mu = record_measure(c, k, s.rep_length());
      for (const auto& lvl : mu.levels)
        for (const auto& v : lvl) positive = positive && v.box.lo > 0;
    }
    if (is_primitive(s).is_yes()) {
      ++seen_primitive;
      CHECK(c.finite_count() == 1);
      CHECK(positive);
    } else {
      ++seen_other;
      CHECK_FALSE(positive);
    }
  }
  CHECK(seen_primitive > 0);
  CHECK(seen_other > 0);
}

TEST_CASE("stream spectrum and self-distinguishedness") {
  auto dec = stream_decompose(constant({{2, 1}, {0, 3}}));
  auto sp = stream_spectrum(dec);
  REQUIRE(sp.lambda.size() == 2);
  CHECK(sp.distinguished == std::vector<bool>{true, true});
  auto dec2 = stream_decompose(constant({{3, 1}, {0, 2}}));
  auto sp2 = stream_spectrum(dec2);
  CHECK(std::count(sp2.distinguished.begin(), sp2.distinguished.end(), true) == 1);
}

TEST_CASE("truncated data stop at the horizon") {
  auto s = MatrixSequence::truncated({GenMatrix::of({{1, 1}, {1, 1}}), GenMatrix::of({{1, 1}, {1, 1}})});
  auto ws = eigvec_sequences(s, 10);
  REQUIRE_FALSE(ws.empty());
  CHECK(ws[0].horizon_limited);
  CHECK_FALSE(extreme_count(s, 1).exact);
}
