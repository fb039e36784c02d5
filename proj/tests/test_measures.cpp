#include "doctest.h"
#include "oracles.hpp"

#include "adic/errors.hpp"
#include "adic/gallery.hpp"
#include "adic/measures.hpp"

#include <cmath>

using namespace adic;
using oracle::Rng;

namespace {

MatrixSequence constant(std::initializer_list<std::initializer_list<long>> m) {
  return MatrixSequence::constant(GenMatrix::of(m));
}

std::size_t count(const Classification& c, Finiteness f) {
  std::size_t n = 0;
  for (const auto& r : c.records) n += r.verdict == f;
  return n;
}

std::size_t atomic(const Classification& c) {
  std::size_t n = 0;
  for (const auto& r : c.records) n += r.verdict == Finiteness::Finite && r.atomic;
  return n;
}

// ambient random periodic, base entrywise below it on the same alphabets
std::pair<MatrixSequence, MatrixSequence> nested_pair(Rng& r, bool reduced_ambient) {
  auto amb = reduced_ambient ? oracle::random_reduced(r) : oracle::random_periodic(r);
  std::vector<GenMatrix> pre, cyc;
  for (std::size_t k = 0; k < amb.rep_length(); ++k) {
    const GenMatrix& h = amb.terms()[k];
    std::vector<std::vector<BigInt>> e(h.nrows(), std::vector<BigInt>(h.ncols(), 0));
    for (std::size_t i = 0; i < h.nrows(); ++i)
      for (std::size_t j = 0; j < h.ncols(); ++j) e[i][j] = r.uniform(0, h(i, j).get_si());
    (k < amb.prefix_length() ? pre : cyc).emplace_back(h.rows(), h.cols(), e);
  }
  return {MatrixSequence::periodic(pre, cyc), amb};
}

BigInt entry_sum(const GenMatrix& m) {
  BigInt t = 0;
  for (std::size_t i = 0; i < m.nrows(); ++i)
    for (std::size_t j = 0; j < m.ncols(); ++j) t += m(i, j);
  return t;
}

Rational value(const MeasureValue& v) {
  REQUIRE(v.is_exact());
  return v.box.lo;
}

}  // namespace

TEST_CASE("Chacon: two ergodic measures, one atomic") {
  auto ch = chacon();
  auto c = classify_measures(ch.diagram.seq());
  CHECK(c.finite_count() == 2);
  CHECK(count(c, Finiteness::Infinite) == 0);
  REQUIRE(c.records.size() == 2);
  int seen_atom = 0, seen_other = 0;
  for (const auto& r : c.records) {
    REQUIRE(r.ray.exact);
    if (r.atomic) {
      ++seen_atom;
      CHECK(r.ray.value == RVector{1, 0});
      REQUIRE(r.atom_cycle.size() == 1);
      CHECK(ch.diagram.edge_name(r.atom_level, r.atom_cycle[0]) == "0>0#0");
    } else {
      ++seen_other;
      CHECK(r.ray.value == RVector{Rational(1, 3), Rational(2, 3)});
    }
  }
  CHECK(seen_atom == 1);
  CHECK(seen_other == 1);
}

TEST_CASE("three upper triangular matrices") {
  auto a = classify_measures(constant({{2, 1}, {0, 3}}));
  CHECK(count(a, Finiteness::Finite) == 2);
  CHECK(count(a, Finiteness::Infinite) == 0);
  auto b = classify_measures(constant({{3, 1}, {0, 2}}));
  CHECK(count(b, Finiteness::Finite) == 1);
  CHECK(count(b, Finiteness::Infinite) == 1);
  auto c = classify_measures(constant({{1, 1}, {0, 3}}));
  CHECK(count(c, Finiteness::Finite) == 2);
  CHECK(atomic(c) == 1);
  // the infinite one lives on vertex 1 with mass on both level-0 vertices
  for (const auto& r : b.records)
    if (r.verdict == Finiteness::Infinite) CHECK_FALSE(r.infinite_at_zero.empty());
}

TEST_CASE("canonical cover of [2] in [3]") {
  auto cc = canonical_cover(constant({{2}}), constant({{3}}));
  CHECK(oracle::dense(cc.cover.terms()[0]) == oracle::Dense{{3, 1}, {0, 2}});
  CHECK(cc.cover.terms()[0].rows().label(0) == "0'");
  CHECK_THROWS_AS(canonical_cover(constant({{1, 1}, {1, 1}}), constant({{2}})), Error);
}

TEST_CASE("the cover doubles entry sums") {
  Rng r(61);
  for (int t = 0; t < 100; ++t) {
    auto [m, mhat] = nested_pair(r, false);
    auto cc = canonical_cover(m, mhat);
    for (std::size_t n = 1; n <= 5; ++n)
      CHECK(entry_sum(product_range(cc.cover, 0, n)) == 2 * entry_sum(product_range(mhat, 0, n)));
  }
}

TEST_CASE("the cover's upper right block") {
  Rng r(62);
  for (int t = 0; t < 30; ++t) {
    auto [m, mhat] = nested_pair(r, false);
    auto cc = canonical_cover(m, mhat);
    std::vector<GenMatrix> cs;
    for (std::size_t k = 0; k < cc.ambient.rep_length(); ++k) cs.push_back(subtract(cc.ambient.terms()[k], cc.base.terms()[k]));
    MatrixSequence c = MatrixSequence::periodic(
        std::vector<GenMatrix>(cs.begin(), cs.begin() + cc.ambient.prefix_length()),
        std::vector<GenMatrix>(cs.begin() + cc.ambient.prefix_length(), cs.end()));
    for (std::size_t n = 0; n < 4; ++n) {
      GenMatrix chat = chat_block(cc.ambient, cc.base, c, 0, n);
      GenMatrix full = product_range(cc.cover, 0, n + 1);
      const std::size_t r0 = cc.ambient[0].nrows(), cn = cc.ambient[n].ncols();
      for (std::size_t i = 0; i < r0; ++i)
        for (std::size_t j = 0; j < cn; ++j) CHECK(chat(i, j) == full(i, cn + j));
    }
  }
}

TEST_CASE("two by two series") {
  auto two = ScalarSeq::constant(2), three = ScalarSeq::constant(3), one = ScalarSeq::constant(1);
  auto s = two_by_two_series(two, three, one, 60);
  REQUIRE(s.partial.size() == 61);
  for (std::size_t n = 0; n < s.partial.size(); ++n) {
    if (n) CHECK(s.partial[n] > s.partial[n - 1]);
    Rational gap = Rational(3, 2) - s.partial[n];
    CHECK(gap > 0);
    Rational bound(3, 2);
    for (std::size_t k = 0; k < n; ++k) bound *= Rational(2, 3);
    CHECK(gap <= bound);
  }
  CHECK(s.converges == Decision::Yes);
  REQUIRE(s.limit);
  CHECK(*s.limit == Rational(3, 2));

  auto d = two_by_two_series(three, two, one, 40);
  CHECK(d.converges == Decision::No);
  CHECK(d.partial[40] > 1000000);
  // and the first crossing
  std::size_t n = 0;
  while (d.partial[n] <= 1000000) ++n;
  CHECK(n <= 40);
}

TEST_CASE("nested odometers") {
  auto bruin = nested_odometer(ScalarSeq{{}, {BigInt(2), BigInt(1)}}, ScalarSeq::constant(2));
  auto t = classify_subdiagram(*bruin.base, bruin.diagram.seq());
  REQUIRE(t.records.size() == 1);
  CHECK(t.records[0].verdict == Finiteness::Infinite);
  // the iterates double over each period
  auto ws = eigvec_sequences(*bruin.base, 30);
  REQUIRE(ws.size() == 1);
  auto dv = is_distinguished(ws[0], *bruin.base, bruin.diagram.seq());
  CHECK(dv.decision == Decision::No);
  CHECK(verify(dv, bruin.diagram.seq()));
  REQUIRE(dv.partial_norms.size() >= 20);
  for (std::size_t n = 0; n + 2 < dv.partial_norms.size(); ++n) CHECK(dv.partial_norms[n + 2] == 2 * dv.partial_norms[n]);

  for (auto [b, a] : {std::pair{ScalarSeq{{BigInt(1)}, {BigInt(2)}}, ScalarSeq::constant(2)},
                      std::pair{ScalarSeq{{BigInt(1), BigInt(3)}, {BigInt(2)}}, ScalarSeq{{BigInt(2), BigInt(3)}, {BigInt(2)}}},
                      std::pair{ScalarSeq::constant(3), ScalarSeq::constant(3)}}) {
    auto e = nested_odometer(b, a);
    auto f = classify_subdiagram(*e.base, e.diagram.seq());
    REQUIRE(f.records.size() == 1);
    CHECK(f.records[0].verdict == Finiteness::Finite);
  }
  CHECK_THROWS_AS(nested_odometer(ScalarSeq::constant(3), ScalarSeq::constant(2)), Error);
}

TEST_CASE("additivity, invariance and total mass of central measures") {
  Rng r(63);
  int tested = 0;
  for (int t = 0; t < 100; ++t) {
    // 0-1 entries keep every depth-8 cylinder listable
    auto s = oracle::random_reduced(r, 4, 2, 3, 1, 0.6);
    BratteliDiagram d(s);
    for (const auto& w : eigvec_sequences(s, 7)) {
      auto mu = central_measure(w);
      REQUIRE(mu.depth() == 8);
      for (std::size_t n = 0; n <= 8; ++n) {
        Rational total = 0;
        std::map<std::uint32_t, Rational> by_vertex;
        const auto words = n ? enumerate_paths(d, n) : std::vector<Word>{};
        for (const auto& x : words) {
          Rational v = value(measure_of_cylinder(mu, d, {0, x}));
          total += v;
          // FC invariance: only the final vertex matters
          auto [it, fresh] = by_vertex.emplace(x.back().tgt, v);
          if (!fresh) CHECK(it->second == v);
          CHECK(v == w.w[n][x.back().tgt]);
          if (n < 8) {
            Rational split = 0;
            const GenMatrix& m = s[n];
            for (std::uint32_t b = 0; b < m.ncols(); ++b)
              for (std::uint32_t i = 0; i < m(x.back().tgt, b).get_ui(); ++i) {
                Word y = x;
                y.push_back({x.back().tgt, b, i});
                split += value(measure_of_cylinder(mu, d, {0, y}));
              }
            CHECK(split == v);
          }
        }
        if (n) CHECK(total == 1);
      }
      ++tested;
    }
  }
  CHECK(tested >= 100);
}

TEST_CASE("gathering leaves cylinder values unchanged") {
  Rng r(64);
  for (int t = 0; t < 30; ++t) {
    auto s = oracle::random_reduced(r);
    std::vector<std::size_t> times{0};
    for (int j = 0; j < 3; ++j) times.push_back(times.back() + r.uniform(1, 3));
    auto g = gather(s, times);
    BratteliDiagram dg(g), d(s);
    for (const auto& w : eigvec_sequences(s, times.back())) {
      EigvecSeqApprox wg;
      wg.depth = times.size() - 1;
      for (auto k : times) wg.w.push_back(w.w[k]);
      auto mug = central_measure(wg);
      auto mu = central_measure(w);
      for (std::size_t n = 1; n < times.size(); ++n) {
        if (oracle::entry_sum_product(g, 0, n) > 2000) break;
        for (const auto& x : enumerate_paths(dg, n)) {
          Word orig;
          for (std::size_t k = 0; k < n; ++k) {
            Word seg = gathered_edge_path(s, times[k], times[k + 1], x[k].src, x[k].tgt, x[k].idx);
            orig.insert(orig.end(), seg.begin(), seg.end());
          }
          CHECK(value(measure_of_cylinder(mug, dg, {0, x})) == value(measure_of_cylinder(mu, d, {0, orig})));
        }
      }
    }
  }
}

TEST_CASE("distinguished verdicts carry a certificate that re-verifies") {
  Rng r(65);
  int decided = 0;
  for (int t = 0; t < 60; ++t) {
    auto [m0, mhat] = nested_pair(r, true);
    auto red = reduce(m0);
    if (red.empty_path_space) continue;
    for (const auto& w : eigvec_sequences(red.seq, 10)) {
      auto v = is_distinguished(w, red.seq, mhat);
      CHECK(verify(v, mhat));
      if (v.decision == Decision::Undecided) continue;
      ++decided;
      auto flipped = v;
      flipped.decision = v.decision == Decision::Yes ? Decision::No : Decision::Yes;
      CHECK_FALSE(verify(flipped, mhat));
    }
  }
  CHECK(decided > 20);
}

TEST_CASE("not an eigenvector sequence") {
  EigvecSeqApprox w;
  w.depth = 1;
  w.w = {{Rational(1)}, {Rational(1)}};
  CHECK_THROWS_AS(is_distinguished(w, constant({{2}}), constant({{3}})), Error);
}

TEST_CASE("tower records agree with the cover classification") {
  // [2] in [3]: the base measure's tower is infinite, [3] in [3] finite
  auto inf = classify_subdiagram(constant({{2}}), constant({{3}}));
  REQUIRE(inf.records.size() == 1);
  CHECK(inf.records[0].verdict == Finiteness::Infinite);
  auto fin = classify_subdiagram(constant({{3}}), constant({{3}}));
  CHECK(fin.records[0].verdict == Finiteness::Finite);
  // the cover of [2] in [3] has one finite and one infinite measure
  auto cc = canonical_cover(constant({{2}}), constant({{3}}));
  auto c = classify_measures(cc.cover);
  CHECK(count(c, Finiteness::Finite) == 1);
  CHECK(count(c, Finiteness::Infinite) == 1);
}

TEST_CASE("record measures satisfy the eigen relation level by level") {
  for (const auto& s : {constant({{1, 1}, {0, 3}}), constant({{2, 1}, {0, 3}}), frobenius_seven()}) {
    auto c = classify_measures(s);
    for (std::size_t k = 0; k < c.records.size(); ++k) {
      if (c.records[k].verdict != Finiteness::Finite || !c.records[k].ray.exact) continue;
      auto mu = record_measure(c, k, 6);
      REQUIRE(mu.levels.size() == 7);
      Rational total = 0;
      for (const auto& v : mu.levels[0]) total += value(v);
      CHECK(total == 1);
      for (std::size_t n = 0; n < 6; ++n) {
        RVector next;
        for (const auto& v : mu.levels[n + 1]) next.push_back(value(v));
        RVector here;
        for (const auto& v : mu.levels[n]) here.push_back(value(v));
        CHECK(adic::apply(c.seq[n], next) == here);
      }
    }
  }
}

TEST_CASE("frobenius-seven measures") {
  auto c = classify_measures(frobenius_seven());
  CHECK(count(c, Finiteness::Finite) == 2);
  CHECK(count(c, Finiteness::Infinite) == 1);
  // the source vertex carries the atom; the middle stream is swamped
  CHECK(atomic(c) == 1);
}

TEST_CASE("Parry measure of the golden mean shift") {
  auto g = GenMatrix::of({{1, 1}, {1, 0}});
  const double phi = (1 + std::sqrt(5.0)) / 2;
  auto c0 = parry_measure_stationary(g, {0});
  CHECK(c0.lo.get_d() <= phi * phi / (phi * phi + 1) + 1e-12);
  CHECK(c0.hi.get_d() >= phi * phi / (phi * phi + 1) - 1e-12);
  CHECK((c0.hi - c0.lo) < Rational(1, 1000000));
  auto c00 = parry_measure_stationary(g, {0, 0}), c01 = parry_measure_stationary(g, {0, 1});
  CHECK(c00.lo.get_d() <= phi / (phi * phi + 1) + 1e-12);
  CHECK(c00.hi.get_d() >= phi / (phi * phi + 1) - 1e-12);
  // [0] = [00] + [01]
  CHECK(c00.lo + c01.lo <= c0.hi);
  CHECK(c00.hi + c01.hi >= c0.lo);
  auto c11 = parry_measure_stationary(g, {1, 1});
  CHECK(c11.hi == 0);
  CHECK_THROWS_AS(parry_measure_stationary(GenMatrix::of({{2}}), {0}), Error);
}

TEST_CASE("measure value strings") {
  CHECK(MeasureValue::exact(Rational(2, 27)).to_string() == "2/27");
  CHECK(MeasureValue::inf().to_string() == "Infinite");
}
