#include "doctest.h"
#include "oracles.hpp"

#include "adic/errors.hpp"
#include "adic/frobenius.hpp"
#include "adic/gallery.hpp"
#include "adic/graph.hpp"

using namespace adic;
using oracle::Rng;

namespace {

using Bool = std::vector<std::vector<bool>>;

Bool bmul(const Bool& a, const Bool& b) {
  Bool c(a.size(), std::vector<bool>(b[0].size(), false));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      if (a[i][k])
        for (std::size_t j = 0; j < b[0].size(); ++j)
          if (b[k][j]) c[i][j] = true;
  return c;
}

Bool pattern(const GenMatrix& m) {
  Bool b(m.nrows(), std::vector<bool>(m.ncols()));
  for (std::size_t i = 0; i < m.nrows(); ++i)
    for (std::size_t j = 0; j < m.ncols(); ++j) b[i][j] = m(i, j) != 0;
  return b;
}

// nontrivial strongly connected classes of a boolean square matrix, by
// transitive closure
std::size_t recurrent_classes(const Bool& g) {
  const std::size_t n = g.size();
  Bool reach = g;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (reach[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (reach[k][j]) reach[i][j] = true;
  std::vector<bool> done(n, false);
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (done[i] || !reach[i][i]) continue;
    ++count;
    for (std::size_t j = 0; j < n; ++j)
      if (reach[i][j] && reach[j][i]) done[j] = true;
  }
  return count;
}

bool primitive_oracle(const GenMatrix& m) {
  const std::size_t n = m.nrows();
  Bool p = pattern(m), q = p;
  for (std::size_t k = 1; k <= (n - 1) * (n - 1) + 1; ++k) {
    bool all = true;
    for (const auto& row : q)
      for (bool x : row) all = all && x;
    if (all) return true;
    q = bmul(q, p);
  }
  return false;
}

std::vector<std::vector<long>> rows_long(const GenMatrix& m) {
  std::vector<std::vector<long>> out;
  for (const auto& r : m.to_rows()) {
    out.emplace_back();
    for (const auto& x : r) out.back().push_back(x.get_si());
  }
  return out;
}

}  // namespace

TEST_CASE("seven listed matrices: three streams and the listed block matrices") {
  auto s = frobenius_seven();
  REQUIRE(is_reduced(s));
  auto dec = stream_decompose(s);
  CHECK(dec.streams.size() == 3);
  for (const auto& st : dec.streams) CHECK(st.kind == StreamKind::Primitive);
  CHECK(dec.valid_from == 5);
  CHECK_FALSE(dec.provisional);
  const std::vector<std::vector<std::vector<long>>> expected = {
      {{1}},
      {{1, 1}},
      {{1, 0, 1}, {0, 1, 1}},
      {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
      {{1, 0, 1}, {0, 1, 1}, {0, 0, 1}},
      {{1, 0, 1}, {0, 1, 0}, {0, 0, 1}},
      {{1, 1, 0}, {0, 1, 1}, {0, 0, 1}},
  };
  REQUIRE(dec.block_matrices.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    INFO("B" << i);
    CHECK(rows_long(dec.block_matrices[i]) == expected[i]);
  }
  // top stream from vertex 0 at level 0, the other two start later
  CHECK(dec.streams[0].starting_time == 0);
  CHECK(dec.members_at(0, 0) == std::vector<std::uint32_t>{0});
  CHECK(dec.streams[1].starting_time <= dec.streams[2].starting_time);
  CHECK(dec.initial[0]);
  CHECK(dec.final[2]);
}

TEST_CASE("communication") {
  auto s = frobenius_seven();
  CHECK(communicates(s, 0, 0, 0, 5));
  CHECK_FALSE(communicates(s, 0, 3, 1, 4));
  CHECK_THROWS_AS(communicates(s, 0, 1, 0, 0), Error);
}

TEST_CASE("stream count equals recurrent classes of a high power of the period product") {
  Rng r(31);
  for (int t = 0; t < 60; ++t) {
    auto s = oracle::random_reduced(r);
    auto dec = stream_decompose(s);
    // periods of classes on at most four vertices divide 12
    const std::size_t p = s.prefix_length() + 4, c = s.cycle_length();
    Bool g = pattern(product_range(s, p, p + c)), q = g;
    for (int k = 1; k < 12; ++k) q = bmul(q, g);
    CHECK(dec.streams.size() == recurrent_classes(q));
  }
}

TEST_CASE("owners partition every level and repeat with the cycle") {
  Rng r(32);
  for (int t = 0; t < 40; ++t) {
    auto s = oracle::random_reduced(r);
    auto dec = stream_decompose(s);
    const auto& ds = dec.seq;
    const std::size_t v = dec.valid_from, c = ds.cycle_length();
    REQUIRE(same_sequence(ds, s));
    for (std::size_t l = 0; l < v + 2 * c; ++l) {
      const std::size_t n = ds.alphabet(l).size();
      std::vector<int> hits(n, 0);
      for (std::size_t k = 0; k < dec.streams.size(); ++k)
        for (auto x : dec.members_at(k, l)) ++hits[x];
      for (std::uint32_t x = 0; x < n; ++x) {
        long o = dec.owner_at(l, x);
        CHECK(hits[x] == (o >= 0 ? 1 : 0));
        if (l >= v) CHECK(dec.owner_at(l + c, x) == o);
      }
    }
    // block matrices record exactly which blocks are joined by edges
    for (std::size_t l = 0; l + 1 < ds.rep_length() + 1 && l < dec.block_matrices.size(); ++l) {
      const auto& bl = dec.blocks[l];
      const auto& br = dec.blocks[l + 1 < dec.blocks.size() ? l + 1 : ds.rep_index(l + 1)];
      const GenMatrix& b = dec.block_matrices[l];
      REQUIRE(b.nrows() == bl.size());
      REQUIRE(b.ncols() == br.size());
      for (std::size_t i = 0; i < bl.size(); ++i)
        for (std::size_t j = 0; j < br.size(); ++j) {
          bool edge = false;
          for (auto x : dec.block_members(l, bl[i]))
            for (auto y : dec.block_members(l + 1, br[j])) edge = edge || ds[l](x, y) != 0;
          CHECK((b(i, j) != 0) == edge);
        }
    }
  }
}

TEST_CASE("Frobenius form: block upper triangular, primitive or zero diagonal") {
  Rng r(33);
  for (int t = 0; t < 40; ++t) {
    auto s = oracle::random_reduced(r);
    auto f = frobenius_form(s);
    const GenMatrix& m = f.gathered.terms().back();
    const auto& spans = f.spans.back();
    for (std::size_t p = 0; p < spans.size(); ++p)
      for (std::size_t q = 0; q < spans.size(); ++q) {
        bool zero = true;
        for (std::size_t i = 0; i < spans[p].size; ++i)
          for (std::size_t j = 0; j < spans[q].size; ++j) zero = zero && m(spans[p].offset + i, spans[q].offset + j) == 0;
        if (q < p) CHECK(zero);
        if (p == q) {
          std::vector<std::size_t> idx(spans[p].size);
          for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = spans[p].offset + i;
          auto sub = f.permutation.back().subset(idx);
          GenMatrix blk = m.restricted(sub, sub);
          if (spans[p].ref.pool) CHECK(zero);
          else CHECK(primitive_oracle(blk));
        }
      }
    // gathering is a telescoping of the original
    auto times = f.times(4);
    for (std::size_t k = 0; k + 1 < times.size(); ++k)
      CHECK(f.gathered[k] == product_range(s, times[k], times[k + 1]));
  }
}

TEST_CASE("truncated input is provisional") {
  auto s = MatrixSequence::truncated({GenMatrix::of({{1, 1}, {0, 1}}), GenMatrix::of({{1, 1}, {0, 1}})});
  auto dec = stream_decompose(s);
  CHECK(dec.provisional);
  CHECK_THROWS_AS(frobenius_form(s), Error);
}

TEST_CASE("stationary Frobenius form") {
  auto sf = stationary_frobenius(GenMatrix::of({{1, 1, 0}, {0, 0, 1}, {0, 1, 0}}));
  CHECK(sf.power == 2);
  Rng r(34);
  for (int t = 0; t < 60; ++t) {
    std::size_t n = r.uniform(1, 5);
    auto m = oracle::random_matrix(r, n, n, 2, 0.35);
    auto f = stationary_frobenius(m);
    std::size_t covered = 0;
    for (const auto& b : f.blocks) {
      for (std::size_t i = 0; i < f.powered.nrows(); ++i)
        for (std::size_t j = 0; j < b.offset; ++j)
          if (i >= b.offset && i < b.offset + b.size) CHECK(f.powered(i, j) == 0);
      covered += b.size;
    }
    CHECK(covered == n);
  }
}
