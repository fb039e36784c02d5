// One line per acceptance criterion. Exit status is the number of failures.

#include "oracles.hpp"

#include "adic/cones.hpp"
#include "adic/errors.hpp"
#include "adic/frobenius.hpp"
#include "adic/gallery.hpp"
#include "adic/measures.hpp"
#include "adic/vershik.hpp"

#include <functional>
#include <iostream>
#include <sstream>

using namespace adic;
using oracle::Rng;

namespace {

struct Fail {
  std::string why;
};

void need(bool ok, const std::string& why) {
  if (!ok) throw Fail{why};
}

MatrixSequence constant(std::initializer_list<std::initializer_list<long>> m) {
  return MatrixSequence::constant(GenMatrix::of(m));
}

std::size_t count(const Classification& c, Finiteness f) {
  std::size_t n = 0;
  for (const auto& r : c.records) n += r.verdict == f;
  return n;
}

std::size_t count_atomic(const Classification& c) {
  std::size_t n = 0;
  for (const auto& r : c.records) n += r.verdict == Finiteness::Finite && r.atomic;
  return n;
}

BigInt entry_sum(const GenMatrix& m) {
  BigInt t = 0;
  for (std::size_t i = 0; i < m.nrows(); ++i)
    for (std::size_t j = 0; j < m.ncols(); ++j) t += m(i, j);
  return t;
}

Rational exact(const MeasureValue& v) {
  need(v.is_exact(), "cylinder value is not exact");
  return v.box.lo;
}

// x^2 - b x - 1 changes sign across the box
bool encloses_root(const Interval& box, long b) {
  auto f = [&](const Rational& x) -> Rational { return x * x - b * x - 1; };
  return f(box.lo) <= 0 && f(box.hi) >= 0;
}

std::string chacon_classification() {
  auto ch = chacon();
  auto c = classify_measures(ch.diagram.seq());
  need(c.finite_count() == 2 && c.records.size() == 2, "expected exactly two finite measures");
  bool atom = false, third = false;
  for (const auto& r : c.records) {
    need(r.ray.exact, "ray not exact");
    if (r.atomic) {
      need(r.ray.value == RVector{1, 0}, "atomic ray is not (1,0)");
      need(r.atom_cycle.size() == 1 && ch.diagram.edge_name(r.atom_level, r.atom_cycle[0]) == "0>0#0",
           "atom is not the loop e");
      atom = true;
    } else {
      need(r.ray.value == RVector{Rational(1, 3), Rational(2, 3)}, "distinguished ray is not (1/3, 2/3)");
      third = true;
    }
  }
  need(atom && third, "missing ray");
  return "2 finite; rays (1,0) atomic at e and (1/3,2/3)";
}

std::string three_matrices() {
  auto a = classify_measures(constant({{2, 1}, {0, 3}}));
  need(count(a, Finiteness::Finite) == 2 && count(a, Finiteness::Infinite) == 0, "[[2,1],[0,3]]");
  auto b = classify_measures(constant({{3, 1}, {0, 2}}));
  need(count(b, Finiteness::Finite) == 1 && count(b, Finiteness::Infinite) == 1, "[[3,1],[0,2]]");
  auto c = classify_measures(constant({{1, 1}, {0, 3}}));
  need(count(c, Finiteness::Finite) == 2 && count_atomic(c) == 1, "[[1,1],[0,3]]");
  return "2 Finite; 1 Finite + 1 Infinite; 2 Finite (1 atomic)";
}

std::string canonical_cover_check() {
  auto cc = canonical_cover(constant({{2}}), constant({{3}}));
  need(oracle::dense(cc.cover.terms()[0]) == oracle::Dense{{3, 1}, {0, 2}}, "cover of [2] in [3]");
  Rng r(101);
  for (int t = 0; t < 100; ++t) {
    auto amb = oracle::random_periodic(r, 4, 2, 3);
    std::vector<GenMatrix> pre, cyc;
    for (std::size_t k = 0; k < amb.rep_length(); ++k) {
      const GenMatrix& h = amb.terms()[k];
      std::vector<std::vector<BigInt>> e(h.nrows(), std::vector<BigInt>(h.ncols(), 0));
      for (std::size_t i = 0; i < h.nrows(); ++i)
        for (std::size_t j = 0; j < h.ncols(); ++j) e[i][j] = r.uniform(0, h(i, j).get_si());
      (k < amb.prefix_length() ? pre : cyc).emplace_back(h.rows(), h.cols(), e);
    }
    auto c = canonical_cover(MatrixSequence::periodic(pre, cyc), amb);
    for (std::size_t n = 1; n <= 6; ++n)
      need(entry_sum(product_range(c.cover, 0, n)) == 2 * entry_sum(product_range(amb, 0, n)), "entry sums");
  }
  return "[[3,1],[0,2]]; doubling on 100 pairs";
}

std::string series() {
  auto two = ScalarSeq::constant(2), three = ScalarSeq::constant(3), one = ScalarSeq::constant(1);
  auto s = two_by_two_series(two, three, one, 80);
  Rational bound(3, 2);
  for (std::size_t n = 0; n < s.partial.size(); ++n) {
    if (n) need(s.partial[n] > s.partial[n - 1], "not monotone");
    Rational gap = Rational(3, 2) - s.partial[n];
    need(gap >= 0 && gap <= bound, "gap bound fails at n = " + std::to_string(n));
    bound *= Rational(2, 3);
  }
  need(s.limit && *s.limit == Rational(3, 2), "limit is not 3/2");
  auto d = two_by_two_series(three, two, one, 40);
  std::size_t n = 0;
  while (n <= 40 && d.partial[n] <= 1000000) ++n;
  need(n <= 40, "(3,2,1) stays below 1e6");
  return "(2,3,1) -> 3/2; (3,2,1) > 1e6 at n = " + std::to_string(n);
}

std::string nested_odometers() {
  auto e = nested_odometer(ScalarSeq{{}, {BigInt(2), BigInt(1)}}, ScalarSeq::constant(2));
  auto t = classify_subdiagram(*e.base, e.diagram.seq());
  need(t.records.size() == 1 && t.records[0].verdict == Finiteness::Infinite, "(2,1) in 2 is not Infinite");
  auto ws = eigvec_sequences(*e.base, 40);
  auto dv = is_distinguished(ws.at(0), *e.base, e.diagram.seq());
  need(verify(dv, e.diagram.seq()), "certificate does not verify");
  for (std::size_t n = 0; n + 2 < dv.partial_norms.size(); ++n)
    need(dv.partial_norms[n + 2] == 2 * dv.partial_norms[n], "iterates do not double per period");
  auto f = nested_odometer(ScalarSeq{{BigInt(1), BigInt(1)}, {BigInt(2)}}, ScalarSeq::constant(2));
  auto tf = classify_subdiagram(*f.base, f.diagram.seq());
  need(tf.records.size() == 1 && tf.records[0].verdict == Finiteness::Finite, "finite change is not Finite");
  return "(2,1) in 2 Infinite, norms x2 per period; (1,1|2) in 2 Finite";
}

std::string rotations() {
  auto r = nested_rotation(ScalarSeq::constant(1), ScalarSeq::constant(2));
  need(r.verdict.verdict == Finiteness::Infinite, "(1, 2) is not Infinite");
  auto phi = cf_enclosure(ScalarSeq::constant(1), 0, 20), silver = cf_enclosure(ScalarSeq::constant(2), 0, 20);
  need(encloses_root(phi.box, 1) && encloses_root(silver.box, 2), "enclosures miss the limits");
  need(phi.box.width() <= Rational(1, 1000000) && silver.box.width() <= Rational(1, 1000000), "too wide at 20");
  need(encloses_root(r.verdict.lambda.at(0), 1) && encloses_root(r.verdict.lambda_hat.at(0), 2),
       "verdict intervals miss the limits");
  for (long n : {1, 2, 3}) {
    auto s = nested_rotation(ScalarSeq::constant(n), ScalarSeq::constant(n));
    need(s.verdict.verdict == Finiteness::Finite, "n = nhat is not Finite");
  }
  std::ostringstream o;
  o << "(1,2) Infinite; widths at 20: " << phi.box.width().get_d() << ", " << silver.box.width().get_d()
    << "; n = nhat Finite";
  return o.str();
}

std::string golden_streams() {
  auto dec = stream_decompose(frobenius_seven());
  need(dec.streams.size() == 3, "not three streams");
  for (const auto& s : dec.streams) need(s.kind == StreamKind::Primitive, "stream not primitive");
  const std::vector<oracle::Dense> want = {
      {{1}},
      {{1, 1}},
      {{1, 0, 1}, {0, 1, 1}},
      {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
      {{1, 0, 1}, {0, 1, 1}, {0, 0, 1}},
      {{1, 0, 1}, {0, 1, 0}, {0, 0, 1}},
      {{1, 1, 0}, {0, 1, 1}, {0, 0, 1}},
  };
  need(dec.block_matrices.size() == want.size(), "number of block matrices");
  for (std::size_t i = 0; i < want.size(); ++i)
    need(oracle::dense(dec.block_matrices[i]) == want[i], "B" + std::to_string(i) + " differs");
  return "3 primitive streams; B0..B6 as listed";
}

bool is_max(const BratteliDiagram& d, std::size_t level, const Edge& e) {
  return oracle::order_pos(d, level, e) + 1 == d.order().incoming[d.seq().rep_index(level)][e.tgt].size();
}

std::string vershik() {
  Rng r(108);
  std::size_t compared = 0, maximal = 0;
  for (int t = 0; t < 50; ++t) {
    auto s = oracle::random_reduced(r, 4, 2, 3, 2, 0.6);
    BratteliDiagram d(s, oracle::random_order(r, s));
    for (std::size_t n = 1; n <= 6; ++n) {
      if (oracle::entry_sum_product(s, 0, n) > 400) break;
      for (const auto& w : enumerate_paths(d, n)) {
        LazyPath x = oracle::periodic_extension(s, w);
        std::optional<std::size_t> k;
        for (std::size_t i = 0; i < x.prefix.size() + x.cycle.size() && !k; ++i)
          if (!is_max(d, i, x.at(i))) k = i;
        auto y = successor(d, x);
        if (!k) {
          need(!y, "maximal path has a successor");
          ++maximal;
          continue;
        }
        if (*k >= 8) continue;
        Word head;
        for (std::size_t i = 0; i <= *k; ++i) head.push_back(x.at(i));
        auto next = oracle::brute_successor(d, head);
        need(next && y, "missing successor");
        for (std::size_t i = 0; i <= *k; ++i) need(y->at(i) == (*next)[i], "successor differs from enumeration");
        for (std::size_t i = *k + 1; i < *k + x.prefix.size() + 2 * x.cycle.size(); ++i)
          need(y->at(i) == x.at(i), "successor changes the tail");
        ++compared;
      }
    }
  }
  return std::to_string(compared) + " successors match, " + std::to_string(maximal) + " maximal";
}

std::string measure_properties() {
  Rng r(109);
  std::size_t cylinders = 0;
  for (int t = 0; t < 100; ++t) {
    auto s = oracle::random_reduced(r, 4, 2, 3, 1, 0.6);
    BratteliDiagram d(s);
    for (const auto& w : eigvec_sequences(s, 7)) {
      auto mu = central_measure(w);
      for (std::size_t n = 1; n <= 8; ++n) {
        std::map<std::uint32_t, Rational> seen;
        for (const auto& x : enumerate_paths(d, n)) {
          Rational v = exact(measure_of_cylinder(mu, d, {0, x}));
          auto [it, fresh] = seen.emplace(x.back().tgt, v);
          need(fresh || it->second == v, "not FC invariant");
          if (n < 8) {
            Rational split = 0;
            const GenMatrix& m = s[n];
            for (std::uint32_t b = 0; b < m.ncols(); ++b)
              for (std::uint32_t i = 0; i < m(x.back().tgt, b).get_ui(); ++i) {
                Word y = x;
                y.push_back({x.back().tgt, b, i});
                split += exact(measure_of_cylinder(mu, d, {0, y}));
              }
            need(split == v, "not additive");
          }
          ++cylinders;
        }
      }
    }
  }
  std::size_t gathered = 0;
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
      auto mug = central_measure(wg), mu = central_measure(w);
      for (std::size_t n = 1; n < times.size(); ++n) {
        if (oracle::entry_sum_product(g, 0, n) > 2000) break;
        for (const auto& x : enumerate_paths(dg, n)) {
          Word orig;
          for (std::size_t k = 0; k < n; ++k) {
            Word seg = gathered_edge_path(s, times[k], times[k + 1], x[k].src, x[k].tgt, x[k].idx);
            orig.insert(orig.end(), seg.begin(), seg.end());
          }
          need(exact(measure_of_cylinder(mug, dg, {0, x})) == exact(measure_of_cylinder(mu, d, {0, orig})),
               "gathering changes a cylinder value");
          ++gathered;
        }
      }
    }
  }
  return std::to_string(cylinders) + " cylinders, " + std::to_string(gathered) + " gathered cylinders";
}

std::string extreme_counts() {
  Rng r(110);
  for (int t = 0; t < 100; ++t) {
    auto s = oracle::random_reduced(r);
    std::size_t lim = s.alphabet(s.prefix_length()).size();
    for (std::size_t k = s.prefix_length(); k < s.rep_length(); ++k) lim = std::min(lim, s.alphabet(k).size());
    for (std::size_t depth = 0; depth <= 8; ++depth) {
      auto ec = extreme_count(s, depth);
      need(ec.exact && *ec.exact <= lim, "ergodic count above liminf");
    }
  }
  for (int t = 0; t < 30; ++t) {
    std::size_t n = r.uniform(1, 4);
    auto s = MatrixSequence::constant(oracle::random_matrix(r, n, n, 3, 1.0));
    bool hit = false;
    for (std::size_t depth = 1; depth <= (n - 1) * (n - 1) + 1 && !hit; ++depth) hit = *extreme_count(s, depth).exact == 1;
    need(hit, "positive matrix without a unique measure");
  }
  return "bounded on 100 sequences; 1 for 30 positive matrices";
}

std::string kac() {
  auto ic = ics(IcsModel::Triadic);
  auto ws = eigvec_sequences(*ic.base, 25);
  Rational prev = 0;
  std::optional<std::size_t> crossed;
  for (std::size_t d = 0; d <= 25; ++d) {
    Rational k = kac_partial_sum(*ic.base, ic.diagram.seq(), ws.at(0), d);
    need(k >= prev, "partial sums decrease");
    if (d <= 5) need(kac_brute_force(ic.diagram, *ic.base, ic.embedding, ws[0], d) == k, "brute force disagrees");
    prev = k;
    if (!crossed && k > 1000) crossed = d;
  }
  need(crossed.has_value(), "tower sums stay below 1000");
  auto f = nested_odometer(ScalarSeq{{BigInt(1)}, {BigInt(2)}}, ScalarSeq::constant(2));
  auto tf = classify_subdiagram(*f.base, f.diagram.seq());
  need(tf.records.at(0).verdict == Finiteness::Finite, "pair is not Finite");
  const std::size_t depth = f.base->rep_length() * 10;
  auto wf = eigvec_sequences(*f.base, depth);
  Rational mass = kac_partial_sum(*f.base, f.diagram.seq(), wf.at(0), depth);
  need(mass == 2, "finite tower mass is not 2");
  need(kac_partial_sum(*f.base, f.diagram.seq(), wf[0], depth - 1) == mass, "not stable");
  return "[2] in [3] > 1000 at depth " + std::to_string(*crossed) + "; (1|2) in 2 stable at " + fraction_string(mass) +
         " by depth " + std::to_string(depth);
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<std::string()>>> criteria = {
      {"Chacon classification", chacon_classification},
      {"three-matrix family", three_matrices},
      {"canonical cover", canonical_cover_check},
      {"distinguished series", series},
      {"nested odometers", nested_odometers},
      {"nested rotations", rotations},
      {"stream decomposition", golden_streams},
      {"Vershik oracle", vershik},
      {"measure properties", measure_properties},
      {"extreme-count bounds", extreme_counts},
      {"Kac cross-check", kac},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string status = "PASS", detail;
    try {
      detail = criteria[i].second();
    } catch (const Fail& f) {
      status = "FAIL";
      detail = f.why;
    } catch (const std::exception& e) {
      status = "FAIL";
      detail = std::string("error: ") + e.what();
    }
    if (status == "FAIL") ++failed;
    std::cout << "AC" << i + 1 << " " << status << "  " << criteria[i].first << ": " << detail << "\n";
  }
  return failed;
}
