#include "adic/measures.hpp"

#include "adic/errors.hpp"
#include "adic/graph.hpp"
#include "adic/linear_algebra.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace adic {

std::string MeasureValue::to_string() const {
  if (infinite) return "Infinite";
  if (box.lo == box.hi) return fraction_string(box.lo);
  return "[" + fraction_string(box.lo) + ", " + fraction_string(box.hi) + "]";
}

const char* finiteness_name(Finiteness f) {
  switch (f) {
    case Finiteness::Finite: return "Finite";
    case Finiteness::Infinite: return "Infinite";
    default: return "Undecided";
  }
}

CentralMeasure central_measure(const EigvecSeqApprox& w) {
  CentralMeasure mu;
  mu.start = w.start;
  for (const auto& v : w.w) {
    std::vector<MeasureValue> level;
    for (const auto& x : v) level.push_back(MeasureValue::exact(x));
    mu.levels.push_back(std::move(level));
  }
  return mu;
}

MeasureValue measure_of_cylinder(const CentralMeasure& mu, const BratteliDiagram& d, const Cylinder& cyl) {
  check_word(d, cyl.start, cyl.word);
  if (cyl.start < mu.start) fail(ErrorKind::InvalidInput, "cylinder starts before the measure's component");
  std::size_t i = cyl.start - mu.start + cyl.word.size();
  if (i > mu.depth()) fail(ErrorKind::DepthExceeded, "cylinder longer than the eigenvector data");
  const auto& lv = mu.levels[i];
  if (!cyl.word.empty()) return lv.at(cyl.word.back().tgt);
  MeasureValue total = MeasureValue::exact(0);
  for (const auto& x : lv) {
    if (x.infinite) return MeasureValue::inf();
    total.box = total.box + x.box;
  }
  return total;
}

std::uint32_t Embedding::ambient_index(const MatrixSequence& base, std::size_t level, const std::string& a,
                                       const std::string& b, std::uint32_t idx) const {
  if (levels.empty()) return idx;
  std::size_t r = base.rep_index(level);
  if (r >= levels.size()) return idx;
  auto it = levels[r].find({a, b});
  if (it == levels[r].end()) return idx;
  if (idx >= it->second.size()) fail(ErrorKind::InvalidInput, "embedding too short for " + a + ">" + b);
  return it->second[idx];
}

std::pair<MatrixSequence, MatrixSequence> common_representation(const MatrixSequence& a, const MatrixSequence& b) {
  if (a.is_periodic() && b.is_periodic()) {
    std::size_t p = std::max(a.prefix_length(), b.prefix_length());
    std::size_t c = lcm_size(a.cycle_length(), b.cycle_length());
    return {a.with_prefix(p).unrolled(c / a.cycle_length()), b.with_prefix(p).unrolled(c / b.cycle_length())};
  }
  std::size_t h = std::min(a.horizon().value_or(SIZE_MAX), b.horizon().value_or(SIZE_MAX));
  return {a.truncated_to(h), b.truncated_to(h)};
}

namespace {

Alphabet primed_alphabet(const Alphabet& a) {
  std::vector<std::string> l;
  for (const auto& x : a.labels()) l.push_back(CanonicalCover::primed(x));
  for (const auto& x : a.labels()) l.push_back(x);
  return Alphabet(std::move(l));
}

MatrixSequence like(const MatrixSequence& shape, std::vector<GenMatrix> terms) {
  if (!shape.is_periodic()) return MatrixSequence::truncated(std::move(terms));
  std::vector<GenMatrix> pre(terms.begin(), terms.begin() + shape.prefix_length());
  std::vector<GenMatrix> cyc(terms.begin() + shape.prefix_length(), terms.end());
  return MatrixSequence::periodic(std::move(pre), std::move(cyc));
}

}  // namespace

CanonicalCover canonical_cover(const MatrixSequence& m, const MatrixSequence& mhat) {
  auto [base, amb] = common_representation(m, mhat);
  std::vector<GenMatrix> bt, ct;
  for (std::size_t l = 0; l < amb.rep_length(); ++l) {
    const GenMatrix& h = amb.terms()[l];
    const GenMatrix& b = base.terms()[l];
    if (!b.rows().subset_of(h.rows()) || !b.cols().subset_of(h.cols()))
      fail(ErrorKind::NotNested, "subdiagram alphabet not inside the ambient one at level " + std::to_string(l));
    GenMatrix ba = b.aligned(h.rows(), h.cols());
    GenMatrix c = subtract(h, ba);
    const std::size_t r = h.nrows(), k = h.ncols();
    GenMatrix t(primed_alphabet(h.rows()), primed_alphabet(h.cols()));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        t(i, j) = h(i, j);
        t(i, k + j) = c(i, j);
        t(r + i, k + j) = ba(i, j);
      }
    bt.push_back(std::move(ba));
    ct.push_back(std::move(t));
  }
  CanonicalCover out;
  out.base = like(amb, std::move(bt));
  out.ambient = amb;
  out.cover = like(amb, std::move(ct));
  return out;
}

CanonicalCover canonical_cover(const MatrixSequence& m, const BratteliDiagram& ambient, const Embedding& emb) {
  CanonicalCover out = canonical_cover(m, ambient.seq());
  StableOrder order;
  for (std::size_t l = 0; l < out.cover.rep_length(); ++l) {
    const GenMatrix& h = out.ambient.terms()[l];
    const GenMatrix& b = out.base.terms()[l];
    const std::size_t r = h.nrows(), k = h.ncols();
    std::vector<std::vector<Edge>> into(2 * k);
    for (std::uint32_t tgt = 0; tgt < k; ++tgt) {
      // which ambient indices are base edges, per source
      std::vector<std::vector<long>> base_of(r);
      for (std::uint32_t src = 0; src < r; ++src) {
        base_of[src].assign(h(src, tgt).get_ui(), -1);
        const std::string& sa = h.rows().label(src);
        const std::string& sb = h.cols().label(tgt);
        for (std::uint32_t i = 0; BigInt(i) < b(src, tgt); ++i) {
          std::uint32_t ai = emb.ambient_index(m, l, sa, sb, i);
          if (ai >= base_of[src].size() || base_of[src][ai] >= 0)
            fail(ErrorKind::InvalidInput, "embedding is not injective into the ambient edges");
          base_of[src][ai] = i;
        }
      }
      for (const Edge& e : ambient.incoming(l, tgt)) {
        into[tgt].push_back({e.src, tgt, e.idx});
        long bi = base_of[e.src][e.idx];
        if (bi >= 0) {
          into[k + tgt].push_back({static_cast<std::uint32_t>(r + e.src), static_cast<std::uint32_t>(k + tgt),
                                   static_cast<std::uint32_t>(bi)});
        } else {
          std::uint32_t ci = 0;
          for (std::uint32_t x = 0; x < e.idx; ++x)
            if (base_of[e.src][x] < 0) ++ci;
          into[k + tgt].push_back({e.src, static_cast<std::uint32_t>(k + tgt), ci});
        }
      }
    }
    order.incoming.push_back(std::move(into));
  }
  out.order = std::move(order);
  return out;
}

GenMatrix chat_block(const MatrixSequence& a, const MatrixSequence& b, const MatrixSequence& c, std::size_t i,
                     std::size_t n) {
  if (n < i) fail(ErrorKind::InvalidInput, "chat_block needs i <= n");
  for (std::size_t k = i; k <= n; ++k) {
    if (!a.has_level(k) || !b.has_level(k) || !c.has_level(k)) fail(ErrorKind::HorizonExceeded, "level beyond horizon");
    if (!c[k].rows().same_set(a[k].rows()) || !c[k].cols().same_set(b[k].cols()))
      fail(ErrorKind::ShapeMismatch, "C_k must map A's rows to B's columns at level " + std::to_string(k));
    if (k > i && (!a[k - 1].cols().same_set(a[k].rows()) || !b[k - 1].cols().same_set(b[k].rows())))
      fail(ErrorKind::ShapeMismatch, "blocks do not compose at level " + std::to_string(k));
  }
  GenMatrix chat = c[i];
  GenMatrix apow = a[i];
  for (std::size_t k = i + 1; k <= n; ++k) {
    chat = add(matmul(apow, c[k]), matmul(chat, b[k]));
    apow = matmul(apow, a[k]);
  }
  // direct product of the block matrices as a check
  auto block = [&](std::size_t k) {
    const GenMatrix &ak = a[k], &bk = b[k], &ck = c[k];
    std::size_t r = ak.nrows(), s = ak.ncols();
    GenMatrix t(Alphabet::numbered(r + bk.nrows()), Alphabet::numbered(s + bk.ncols()));
    for (std::size_t x = 0; x < r; ++x) {
      for (std::size_t y = 0; y < s; ++y) t(x, y) = ak(x, y);
      for (std::size_t y = 0; y < bk.ncols(); ++y) t(x, s + y) = ck.get(ak.rows().label(x), bk.cols().label(y));
    }
    for (std::size_t x = 0; x < bk.nrows(); ++x)
      for (std::size_t y = 0; y < bk.ncols(); ++y) t(r + x, s + y) = bk(x, y);
    return t;
  };
  GenMatrix direct = block(i);
  for (std::size_t k = i + 1; k <= n; ++k) direct = matmul(direct, block(k));
  const std::size_t r = a[i].nrows(), s = a[n].ncols();
  for (std::size_t x = 0; x < r; ++x)
    for (std::size_t y = 0; y < b[n].ncols(); ++y) {
      const BigInt& got = chat(chat.rows().index(a[i].rows().label(x)), chat.cols().index(b[n].cols().label(y)));
      if (direct(x, s + y) != got) fail(ErrorKind::Internal, "C-hat recursion disagrees with the direct product");
    }
  return chat;
}

namespace {

RVector embed(const RVector& v, const Alphabet& from, const Alphabet& to) {
  RVector out(to.size());
  for (std::size_t i = 0; i < from.size(); ++i) out[to.index(from.label(i))] = v[i];
  return out;
}

std::string join_sign(int c) { return c > 0 ? ">" : (c == 0 ? "=" : "<"); }

struct CoverStreams {
  MatrixSequence seq;
  StreamDecomposition dec;
  StreamSpectrum spectrum;
};

CoverStreams cover_streams(const MatrixSequence& m, const MatrixSequence& mhat) {
  auto cc = canonical_cover(m, mhat);
  auto red = reduce(cc.cover);
  CoverStreams out{red.seq, stream_decompose(red.seq), {}};
  out.spectrum = stream_spectrum(out.dec);
  return out;
}

// cover stream holding the lower copy of base stream k
std::optional<std::size_t> lower_copy(const CoverStreams& cs, const StreamDecomposition& mdec, std::size_t k) {
  std::size_t lvl = std::max(mdec.valid_from, cs.dec.valid_from) + mdec.seq.cycle_length() * cs.dec.seq.cycle_length();
  const auto& mem = mdec.members_at(k, lvl);
  if (mem.empty()) return std::nullopt;
  const std::string& label = mdec.seq.alphabet(lvl).label(mem[0]);
  auto pos = cs.seq.alphabet(lvl).find(label);
  if (!pos) return std::nullopt;
  long o = cs.dec.owner_at(lvl, static_cast<std::uint32_t>(*pos));
  if (o < 0) return std::nullopt;
  return static_cast<std::size_t>(o);
}

std::string spectral_witness(const CoverStreams& cs, std::size_t k) {
  std::ostringstream w;
  w << "block lambda " << cs.spectrum.lambda[k].to_string();
  bool any = false;
  for (std::size_t j = 0; j < cs.dec.streams.size(); ++j) {
    int c = cs.spectrum.versus[k][j];
    if (c == 2) continue;
    w << (any ? "; " : "; upstream: ") << "lambda " << join_sign(c) << " " << cs.spectrum.lambda[j].to_string();
    any = true;
  }
  if (!any) w << "; no upstream primitive block";
  return w.str();
}

}  // namespace

DistVerdict is_distinguished(const EigvecSeqApprox& w, const MatrixSequence& m, const MatrixSequence& mhat,
                             const DistOptions& opt) {
  if (!eigen_relation_holds(m, w)) fail(ErrorKind::NotEigenvector, "w is not an eigenvector sequence for the base");
  Verdict leq = submatrix_leq(m, mhat);
  if (leq.is_no()) fail(ErrorKind::NotNested, "base is not a subdiagram of the ambient: " + leq.witness);
  DistVerdict out;
  // monotone partial vectors
  for (std::size_t n = 0; n < w.depth; ++n) {
    std::size_t top = w.start + n + 1;
    if (!mhat.has_level(top - 1)) break;
    std::vector<RVector> chain(n + 2);
    chain[n + 1] = embed(w.w[n + 1], m.alphabet(top), mhat.alphabet(top));
    for (std::size_t i = n + 1; i-- > 0;) chain[i] = adic::apply(mhat[w.start + i], chain[i + 1]);
    Rational norm = l1_norm(chain[0]);
    if (!out.partial_norms.empty() && norm < out.partial_norms.back())
      fail(ErrorKind::Internal, "partial vectors are not monotone");
    out.partial_norms.push_back(norm);
    if (!out.exceeded_at && norm > opt.bound) out.exceeded_at = n;
    if (n + 1 == w.depth) out.iota_prefix = std::move(chain);
  }
  bool exact_route = m.is_periodic() && mhat.is_periodic() && w.stream && w.start == 0 && leq.is_yes() && is_reduced(m);
  if (exact_route) {
    auto mdec = stream_decompose(m);
    auto cs = cover_streams(m, mhat);
    auto k = lower_copy(cs, mdec, *w.stream);
    if (k) {
      out.decision = cs.spectrum.distinguished[*k] ? Decision::Yes : Decision::No;
      out.witness = spectral_witness(cs, *k);
      out.block = stream_block(cs.dec, *k);
      for (std::size_t j = 0; j < cs.dec.streams.size(); ++j)
        if (j != *k && cs.dec.reaches[j][*k]) out.upstream.push_back(stream_block(cs.dec, j));
      return out;
    }
  }
  out.decision = Decision::Undecided;
  out.horizon = w.depth;
  std::ostringstream wit;
  wit << "partial norms to step " << out.partial_norms.size();
  if (!out.partial_norms.empty()) wit << ", last " << fraction_string(out.partial_norms.back());
  if (out.exceeded_at) wit << ", bound exceeded at step " << *out.exceeded_at << " without a certified growth factor";
  out.witness = wit.str();
  return out;
}

bool verify(const DistVerdict& v, const MatrixSequence& mhat) {
  for (std::size_t i = 0; i + 1 < v.iota_prefix.size(); ++i)
    if (adic::apply(mhat[i], v.iota_prefix[i + 1]) != v.iota_prefix[i] || is_zero(v.iota_prefix[i])) return false;
  for (std::size_t i = 1; i < v.partial_norms.size(); ++i)
    if (v.partial_norms[i] < v.partial_norms[i - 1]) return false;
  if (v.decision == Decision::Undecided) return true;
  if (!v.block) return false;
  PerronRoot lk = perron_root(*v.block);
  bool beats_all = true;
  for (const auto& u : v.upstream) {
    PerronRoot lj = perron_root(u);
    if (compare_perron(lk, lj) <= 0) beats_all = false;
  }
  return beats_all == (v.decision == Decision::Yes);
}

const BigInt& ScalarSeq::operator[](std::size_t i) const {
  if (i < prefix.size()) return prefix[i];
  if (cycle.empty()) fail(ErrorKind::InvalidInput, "scalar sequence without a cycle");
  return cycle[(i - prefix.size()) % cycle.size()];
}

SeriesResult two_by_two_series(const ScalarSeq& a, const ScalarSeq& b, const ScalarSeq& c, std::size_t n) {
  const std::size_t p = std::max({a.prefix.size(), b.prefix.size(), c.prefix.size()});
  const std::size_t per = lcm_size(lcm_size(a.cycle.size(), b.cycle.size()), c.cycle.size());
  const std::size_t upto = std::max(n + 1, p + per);
  for (std::size_t k = 0; k < upto; ++k) {
    if (a[k] <= 0 || b[k] <= 0) fail(ErrorKind::NonPositiveEntry, "a_k and b_k must be positive");
    if (c[k] < 0) fail(ErrorKind::NonPositiveEntry, "c_k must be nonnegative");
  }
  SeriesResult out;
  Rational prod = 1, sum = 0, head = 0, cyc = 0;
  for (std::size_t k = 0; k < upto; ++k) {
    Rational term = prod * Rational(c[k]) / Rational(a[k]);
    sum += term;
    if (k < p) head += term;
    else if (k < p + per) cyc += term;
    if (k <= n) out.partial.push_back(sum);
    prod *= Rational(a[k]) / Rational(b[k]);
  }
  Rational r = 1;
  bool c_zero = true;
  for (std::size_t k = p; k < p + per; ++k) {
    r *= Rational(a[k]) / Rational(b[k]);
    if (c[k] != 0) c_zero = false;
  }
  out.period_ratio = r;
  if (c_zero) {
    out.converges = Decision::Yes;
    out.limit = head;
  } else if (r < 1) {
    out.converges = Decision::Yes;
    out.limit = head + cyc / (1 - r);
  } else {
    out.converges = Decision::No;
  }
  return out;
}

std::size_t Classification::finite_count() const {
  return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const MeasureRecord& r) {
    return r.verdict == Finiteness::Finite;
  }));
}

namespace {

std::vector<MeasureValue> times(const GenMatrix& m, const std::vector<MeasureValue>& x) {
  std::vector<MeasureValue> y(m.nrows(), MeasureValue::exact(0));
  for (std::size_t i = 0; i < m.nrows(); ++i)
    for (std::size_t j = 0; j < m.ncols(); ++j) {
      if (m(i, j) == 0) continue;
      if (x[j].infinite) {
        y[i] = MeasureValue::inf();
        break;
      }
      Rational f(m(i, j));
      y[i].box.lo += f * x[j].box.lo;
      y[i].box.hi += f * x[j].box.hi;
    }
  return y;
}

void scale(std::vector<MeasureValue>& v, const Interval& s) {
  for (auto& x : v)
    if (!x.infinite) x.box = {x.box.lo * s.lo, x.box.hi * s.hi};
}

EigenRay normalize_values(const std::vector<MeasureValue>& v) {
  EigenRay r;
  Rational slo = 0, shi = 0;
  for (const auto& x : v) {
    slo += x.box.lo;
    shi += x.box.hi;
  }
  r.exact = std::all_of(v.begin(), v.end(), [](const MeasureValue& x) { return x.is_exact(); });
  for (const auto& x : v) {
    r.zero.push_back(x.box.hi == 0);
    if (r.exact) {
      r.value.push_back(x.box.lo / slo);
      r.box.push_back({x.box.lo / slo, x.box.lo / slo});
    } else if (x.box.hi == 0) {
      r.box.push_back({0, 0});
    } else {
      r.box.push_back({x.box.lo / (shi - x.box.hi + x.box.lo), x.box.hi / (slo - x.box.lo + x.box.hi)});
    }
  }
  return r;
}

}  // namespace

Classification classify_measures(const MatrixSequence& seq, const ClassifyOptions& opt) {
  if (!is_reduced(seq)) fail(ErrorKind::NotReduced, "classification needs a reduced sequence");
  Classification out;
  out.seq = seq;
  if (!seq.is_periodic()) {
    out.provisional = true;
    for (const auto& w : eigvec_sequences(seq, opt.depth)) {
      MeasureRecord r;
      r.ray.exact = true;
      r.ray.value = w.w[0];
      for (const auto& x : w.w[0]) {
        r.ray.box.push_back({x, x});
        r.ray.zero.push_back(x == 0);
      }
      r.verdict = Finiteness::Undecided;
      r.horizon = *seq.horizon();
      r.witness = "extreme point of the depth " + std::to_string(w.depth - 1) + " simplex; horizon reached";
      out.records.push_back(std::move(r));
    }
    return out;
  }
  auto dec = stream_decompose(seq);
  auto sp = stream_spectrum(dec);
  const std::size_t v = dec.valid_from, c = dec.seq.cycle_length();
  GenMatrix g = product_range(dec.seq, v, v + c);
  const std::size_t n = g.nrows();
  Adjacency adj(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (g(i, j) != 0) adj[i].push_back(j);
  auto reach = transitive_reach(adj);
  GenMatrix head = product_range(dec.seq, 0, v);

  for (std::size_t k = 0; k < dec.streams.size(); ++k) {
    MeasureRecord r;
    r.stream = k;
    r.lambda = sp.lambda[k];
    const auto& block = dec.members_at(k, v);
    std::vector<bool> in_block(n, false), up(n, false), dom(n, false);
    for (auto b : block) in_block[b] = true;
    for (std::size_t x = 0; x < n; ++x)
      for (auto b : block)
        if (!in_block[x] && reach[x][b]) up[x] = true;
    // vertices at level v of dominating upstream streams, and those reaching them
    for (std::size_t j = 0; j < dec.streams.size(); ++j)
      if (sp.versus[k][j] != 2 && sp.versus[k][j] <= 0)
        for (auto x : dec.members_at(j, v)) dom[x] = true;
    std::vector<bool> inf(n, false);
    for (std::size_t x = 0; x < n; ++x) {
      if (dom[x]) inf[x] = true;
      for (std::size_t y = 0; y < n && !inf[x]; ++y)
        if (dom[y] && reach[x][y]) inf[x] = true;
    }
    bool finite = sp.distinguished[k];
    r.verdict = finite ? Finiteness::Finite : Finiteness::Infinite;
    // support of the (finite part of the) extension
    std::vector<std::size_t> s;
    for (std::size_t x = 0; x < n; ++x)
      if (in_block[x] || (up[x] && !inf[x])) s.push_back(x);
    Alphabet sa = g.rows().subset(s);
    RMatrix a = to_rational(g.restricted(sa, sa));
    PerronRoot lam = sp.lambda[k];
    EigenRay ray = eigen_ray(a, lam, opt.eps);
    r.lambda = lam;
    std::vector<MeasureValue> tail(n, MeasureValue::exact(0));
    for (std::size_t i = 0; i < s.size(); ++i) tail[s[i]] = {false, ray.box[i]};
    for (std::size_t x = 0; x < n; ++x)
      if (inf[x]) tail[x] = MeasureValue::inf();
    r.tail_values = tail;
    if (finite) {
      r.ray_level = 0;
      r.ray = normalize_values(times(head, tail));
    } else {
      // the block's own Perron vector, at the level where the tail begins
      std::vector<MeasureValue> blockv(n, MeasureValue::exact(0));
      for (std::size_t x = 0; x < n; ++x)
        if (in_block[x]) blockv[x] = tail[x];
      r.ray_level = v;
      r.ray = normalize_values(blockv);
      std::vector<MeasureValue> at0 = times(head, tail);
      for (std::size_t x = 0; x < at0.size(); ++x)
        if (at0[x].infinite) r.infinite_at_zero.push_back(dec.seq.alphabet(0).label(x));
    }
    // one path through the stream: singletons joined by single edges
    bool atomic = true;
    for (std::size_t l = v; l < v + c && atomic; ++l) {
      const auto& here = dec.members_at(k, l);
      const auto& next = dec.members_at(k, l + 1);
      atomic = here.size() == 1 && next.size() == 1 && dec.seq[l](here[0], next[0]) == 1;
      if (atomic) r.atom_cycle.push_back({here[0], next[0], 0});
    }
    r.atomic = atomic;
    if (!atomic) r.atom_cycle.clear();
    r.atom_level = v;
    std::ostringstream wit;
    wit << "lambda " << r.lambda.to_string();
    bool any = false;
    for (std::size_t j = 0; j < dec.streams.size(); ++j) {
      int cmp = sp.versus[k][j];
      if (cmp == 2) continue;
      wit << (any ? "; " : "; upstream ") << "stream " << j << " lambda " << sp.lambda[j].to_string() << " ("
          << join_sign(cmp) << ")";
      any = true;
    }
    if (!any) wit << "; no upstream primitive stream";
    r.witness = wit.str();
    out.records.push_back(std::move(r));
  }
  out.decomposition = std::move(dec);
  return out;
}

CentralMeasure record_measure(const Classification& c, std::size_t index, std::size_t depth) {
  const MeasureRecord& r = c.records.at(index);
  CentralMeasure mu;
  if (!c.decomposition) {
    // truncated data: the extreme ray's own exact sequence
    auto ws = eigvec_sequences(c.seq, depth);
    if (index >= ws.size()) fail(ErrorKind::InvalidInput, "no such ray");
    if (ws[index].depth < depth) fail(ErrorKind::DepthExceeded, "depth beyond the horizon");
    return central_measure(ws[index]);
  }
  const auto& dec = *c.decomposition;
  const std::size_t v = dec.valid_from, per = dec.seq.cycle_length();
  Interval lam{r.lambda.lower(), r.lambda.upper()};
  if (lam.lo <= 0) fail(ErrorKind::Internal, "Perron root is not positive");
  for (std::size_t l = 0; l <= depth; ++l) {
    std::vector<MeasureValue> x;
    if (l < v) {
      x = times(product_range(dec.seq, l, v), r.tail_values);
    } else {
      std::size_t j = (l - v) / per, rem = (l - v) % per;
      std::size_t e = rem == 0 ? j : j + 1;
      x = rem == 0 ? r.tail_values : times(product_range(dec.seq, l, v + e * per), r.tail_values);
      Rational hi_pow = 1, lo_pow = 1;
      for (std::size_t t = 0; t < e; ++t) {
        hi_pow *= lam.hi;
        lo_pow *= lam.lo;
      }
      scale(x, {1 / hi_pow, 1 / lo_pow});
    }
    mu.levels.push_back(std::move(x));
  }
  if (r.verdict == Finiteness::Finite) {
    Rational slo = 0, shi = 0;
    for (const auto& x : mu.levels[0]) {
      slo += x.box.lo;
      shi += x.box.hi;
    }
    for (auto& lv : mu.levels) scale(lv, {1 / shi, 1 / slo});
  }
  return mu;
}

TowerReport classify_subdiagram(const MatrixSequence& m, const MatrixSequence& mhat, const ClassifyOptions& opt) {
  Verdict leq = submatrix_leq(m, mhat);
  if (leq.is_no()) fail(ErrorKind::NotNested, "base is not a subdiagram of the ambient: " + leq.witness);
  auto red = reduce(m);
  if (red.empty_path_space) fail(ErrorKind::NoFiniteBaseMeasure, "the base has no infinite paths");
  const MatrixSequence& base = red.seq;
  TowerReport out;
  if (base.is_periodic() && mhat.is_periodic() && leq.is_yes()) {
    auto cls = classify_measures(base, opt);
    const auto& mdec = *cls.decomposition;
    auto cs = cover_streams(base, mhat);
    for (const auto& rec : cls.records) {
      if (rec.verdict != Finiteness::Finite) continue;
      TowerRecord t;
      t.base_stream = *rec.stream;
      t.base_ray = rec.ray;
      auto k = lower_copy(cs, mdec, *rec.stream);
      if (!k) {
        t.verdict = Finiteness::Undecided;
        t.witness = "base stream not found in the cover";
      } else {
        t.verdict = cs.spectrum.distinguished[*k] ? Finiteness::Finite : Finiteness::Infinite;
        t.witness = spectral_witness(cs, *k);
      }
      out.records.push_back(std::move(t));
    }
    if (out.records.empty()) fail(ErrorKind::NoFiniteBaseMeasure, "no finite central measure on the base");
    return out;
  }
  for (const auto& w : eigvec_sequences(base, opt.depth)) {
    TowerRecord t;
    t.base_stream = w.stream.value_or(0);
    t.base_ray.exact = true;
    t.base_ray.value = w.w[0];
    for (const auto& x : w.w[0]) {
      t.base_ray.box.push_back({x, x});
      t.base_ray.zero.push_back(x == 0);
    }
    EigvecSeqApprox lifted = w;
    auto dv = is_distinguished(lifted, base, mhat);
    t.verdict = Finiteness::Undecided;
    t.horizon = dv.horizon ? dv.horizon : std::optional<std::size_t>(w.depth);
    t.witness = dv.witness;
    t.partial_norms = dv.partial_norms;
    out.records.push_back(std::move(t));
  }
  return out;
}

Interval parry_measure_stationary(const GenMatrix& m, const std::vector<std::uint32_t>& x, const Rational& eps) {
  for (std::size_t i = 0; i < m.nrows(); ++i)
    for (std::size_t j = 0; j < m.ncols(); ++j)
      if (m(i, j) > 1) fail(ErrorKind::NotIrreducible, "Parry measure needs a 0-1 matrix");
  if (!is_irreducible(m)) fail(ErrorKind::NotIrreducible, "Parry measure needs an irreducible matrix");
  if (x.empty()) return {1, 1};
  for (auto s : x)
    if (s >= m.nrows()) fail(ErrorKind::InvalidInput, "vertex out of range");
  for (std::size_t i = 0; i + 1 < x.size(); ++i)
    if (m(x[i], x[i + 1]) == 0) return {0, 0};
  PerronRoot lr = perron_root(m), ll = perron_root(m);
  RMatrix a = to_rational(m), at = to_rational(m.transposed());
  EigenRay w = eigen_ray(a, lr, eps), v = eigen_ray(at, ll, eps);
  Interval dot{0, 0};
  for (std::size_t i = 0; i < m.nrows(); ++i) dot = dot + v.box[i] * w.box[i];
  PerronRoot lam = lr.box.width() < ll.box.width() || lr.exact ? lr : ll;
  Interval l{lam.lower(), lam.upper()};
  Rational plo = 1, phi = 1;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    plo *= l.lo;
    phi *= l.hi;
  }
  Interval num = v.box[x.front()] * w.box[x.back()];
  return {num.lo / (dot.hi * phi), num.hi / (dot.lo * plo)};
}

}  // namespace adic
