#include "adic/cones.hpp"

#include "adic/errors.hpp"
#include "adic/linear_algebra.hpp"

#include <algorithm>

namespace adic {

SimplexApprox simplex_image(const MatrixSequence& seq, std::size_t k, std::size_t n) {
  if (n < k) fail(ErrorKind::InvalidInput, "simplex image needs k <= n");
  if (!seq.has_level(n)) fail(ErrorKind::HorizonExceeded, "simplex depth beyond horizon");
  GenMatrix p = product_range(seq, k, n + 1);
  std::vector<std::pair<RVector, std::uint32_t>> cand;
  for (std::uint32_t j = 0; j < p.ncols(); ++j) {
    RVector c(p.nrows());
    for (std::size_t i = 0; i < p.nrows(); ++i) c[i] = Rational(p(i, j));
    if (is_zero(c)) continue;
    c = normalized(c);
    bool dup = std::any_of(cand.begin(), cand.end(), [&](const auto& x) { return x.first == c; });
    if (!dup) cand.emplace_back(std::move(c), j);
  }
  std::sort(cand.begin(), cand.end());
  SimplexApprox out;
  out.level = k;
  out.depth = n;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    std::vector<RVector> others;
    for (std::size_t j = 0; j < cand.size(); ++j)
      if (j != i) others.push_back(cand[j].first);
    if (in_convex_hull(cand[i].first, others)) continue;
    out.extreme_points.push_back(cand[i].first);
    out.columns.push_back(cand[i].second);
  }
  for (std::size_t i = 0; i < out.extreme_points.size(); ++i)
    for (std::size_t j = i + 1; j < out.extreme_points.size(); ++j) {
      Rational d = 0;
      for (std::size_t c = 0; c < out.extreme_points[i].size(); ++c) d += abs(out.extreme_points[i][c] - out.extreme_points[j][c]);
      out.diameter = std::max(out.diameter, d);
    }
  return out;
}

StreamSpectrum stream_spectrum(const StreamDecomposition& dec) {
  const std::size_t d = dec.streams.size();
  StreamSpectrum s;
  for (std::size_t k = 0; k < d; ++k) s.lambda.push_back(perron_root(stream_block(dec, k)));
  s.distinguished.assign(d, true);
  s.versus.assign(d, std::vector<int>(d, 2));
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t j = 0; j < d; ++j) {
      if (j == k || !dec.reaches[j][k]) continue;
      int c = compare_perron(s.lambda[k], s.lambda[j]);
      s.versus[k][j] = c;
      if (c <= 0) s.distinguished[k] = false;
    }
  return s;
}

ExtremeCount extreme_count(const MatrixSequence& seq, std::size_t depth) {
  if (!is_reduced(seq)) fail(ErrorKind::NotReduced, "extreme count needs a reduced sequence");
  ExtremeCount out;
  out.depth = depth;
  out.count = simplex_image(seq, 0, depth).extreme_points.size();
  out.liminf_bound = seq.liminf_alphabet_size();
  if (seq.is_periodic()) {
    auto dec = stream_decompose(seq);
    auto sp = stream_spectrum(dec);
    out.exact = static_cast<std::size_t>(std::count(sp.distinguished.begin(), sp.distinguished.end(), true));
  }
  return out;
}

std::vector<EigvecSeqApprox> eigvec_sequences(const MatrixSequence& seq, std::size_t depth) {
  if (!is_reduced(seq)) fail(ErrorKind::NotReduced, "eigenvector sequences need a reduced sequence");
  std::size_t n = depth;
  bool limited = false;
  if (!seq.is_periodic() && n + 1 > seq.rep_length()) {
    n = seq.rep_length() - 1;
    limited = true;
  }
  auto simplex = simplex_image(seq, 0, n);
  if (simplex.extreme_points.empty()) fail(ErrorKind::EmptyCone, "the cone collapses to zero");
  std::optional<StreamDecomposition> dec;
  if (seq.is_periodic()) dec = stream_decompose(seq);
  std::vector<EigvecSeqApprox> out;
  for (std::size_t e = 0; e < simplex.columns.size(); ++e) {
    std::uint32_t j = simplex.columns[e];
    EigvecSeqApprox a;
    a.depth = n + 1;
    a.horizon_limited = limited;
    a.w.resize(n + 2);
    a.w[n + 1].assign(seq.alphabet(n + 1).size(), 0);
    a.w[n + 1][j] = 1;
    for (std::size_t i = n + 1; i-- > 0;) a.w[i] = adic::apply(seq[i], a.w[i + 1]);
    Rational s = l1_norm(a.w[0]);
    for (auto& v : a.w)
      for (auto& x : v) x /= s;
    if (dec) {
      long o = dec->owner_at(n + 1, j);
      if (o >= 0) a.stream = static_cast<std::size_t>(o);
    }
    out.push_back(std::move(a));
  }
  return out;
}

bool eigen_relation_holds(const MatrixSequence& seq, const EigvecSeqApprox& w) {
  for (std::size_t i = 0; i < w.depth; ++i) {
    std::size_t l = w.start + i;
    if (!seq.has_level(l)) return false;
    if (w.w[i].size() != seq[l].nrows() || w.w[i + 1].size() != seq[l].ncols()) return false;
    if (adic::apply(seq[l], w.w[i + 1]) != w.w[i]) return false;
  }
  return true;
}

}  // namespace adic
