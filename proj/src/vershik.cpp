#include "adic/vershik.hpp"

#include "adic/errors.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace adic {

const Edge& LazyPath::at(std::size_t i) const {
  if (i < prefix.size()) return prefix[i];
  if (cycle.empty()) fail(ErrorKind::UndeterminedTail, "path unknown past its prefix");
  return cycle[(i - prefix.size()) % cycle.size()];
}

bool LazyPath::operator==(const LazyPath& o) const {
  if (start != o.start || cycle.empty() != o.cycle.empty()) return false;
  if (cycle.empty()) return prefix == o.prefix;
  // compare far enough to cover both prefixes and a common multiple of the cycles
  std::size_t n = std::max(prefix.size(), o.prefix.size()) + lcm_size(cycle.size(), o.cycle.size());
  for (std::size_t i = 0; i < n; ++i)
    if (at(i) != o.at(i)) return false;
  return true;
}

std::string LazyPath::to_string(const BratteliDiagram& d) const {
  std::string s = word_string(d, start, prefix);
  if (!cycle.empty()) s += "|" + word_string(d, start + prefix.size(), cycle);
  return s;
}

namespace {

TailRule classify_tail(const BratteliDiagram& d, std::size_t level, const Word& cycle) {
  if (cycle.empty()) return TailRule::Unknown;
  bool all_min = true, all_max = true;
  for (std::size_t j = 0; j < cycle.size(); ++j) {
    all_min = all_min && d.is_min(level + j, cycle[j]);
    all_max = all_max && d.is_max(level + j, cycle[j]);
  }
  if (all_max) return TailRule::MaxTail;
  if (all_min) return TailRule::MinTail;
  return TailRule::Periodic;
}

// vertices at `level` that some path from level `start` reaches
std::vector<bool> reachable(const BratteliDiagram& d, std::size_t start, std::size_t level) {
  std::vector<bool> cur(d.alphabet(start).size(), true);
  for (std::size_t l = start; l < level; ++l) {
    const GenMatrix& m = d.seq()[l];
    std::vector<bool> nx(m.ncols(), false);
    for (std::size_t a = 0; a < m.nrows(); ++a)
      if (cur[a])
        for (std::size_t b = 0; b < m.ncols(); ++b)
          if (m(a, b) != 0) nx[b] = true;
    cur = std::move(nx);
  }
  return cur;
}

// next (dir = +1) or previous (dir = -1) edge into the same target whose source is reachable
std::optional<Edge> neighbour(const BratteliDiagram& d, std::size_t start, std::size_t level, const Edge& e, int dir) {
  const auto& in = d.incoming(level, e.tgt);
  auto ok = reachable(d, start, level);
  long r = static_cast<long>(d.rank(level, e));
  for (long i = r + dir; i >= 0 && i < static_cast<long>(in.size()); i += dir)
    if (ok[in[i].src]) return in[i];
  return std::nullopt;
}

// extremal path from level `start` into vertex v at `level` (dir = +1 minimal, -1 maximal)
Word extremal_into(const BratteliDiagram& d, std::size_t start, std::size_t level, std::uint32_t v, int dir) {
  Word w(level - start);
  for (std::size_t l = level; l-- > start;) {
    auto ok = reachable(d, start, l);
    const auto& in = d.incoming(l, v);
    std::optional<Edge> pick;
    if (dir > 0) {
      for (const auto& e : in)
        if (ok[e.src]) {
          pick = e;
          break;
        }
    } else {
      for (auto it = in.rbegin(); it != in.rend(); ++it)
        if (ok[it->src]) {
          pick = *it;
          break;
        }
    }
    if (!pick) fail(ErrorKind::Internal, "no path back to the start level");
    w[l - start] = *pick;
    v = pick->src;
  }
  return w;
}

// dir = +1: successor, -1: predecessor
std::optional<LazyPath> step(const BratteliDiagram& d, const LazyPath& p, int dir) {
  check_path(d, p);
  LazyPath q = p;
  std::optional<std::size_t> m;
  std::optional<Edge> repl;
  for (std::size_t i = 0; i < q.prefix.size() && !m; ++i) {
    repl = neighbour(d, q.start, q.start + i, q.prefix[i], dir);
    if (repl) m = i;
  }
  if (!m) {
    if (q.cycle.empty())
      fail(ErrorKind::UndeterminedTail, dir > 0 ? "cannot certify a non-maximal edge within the horizon"
                                                : "cannot certify a non-minimal edge within the horizon");
    const std::size_t base = q.prefix.size();
    for (std::size_t j = 0; j < q.cycle.size() && !m; ++j) {
      repl = neighbour(d, q.start, q.start + base + j, q.cycle[j], dir);
      if (repl) {
        m = base + j;
        q.prefix.insert(q.prefix.end(), q.cycle.begin(), q.cycle.begin() + j + 1);
        std::rotate(q.cycle.begin(), q.cycle.begin() + j + 1, q.cycle.end());
      }
    }
    if (!m) return std::nullopt;
  }
  q.prefix[*m] = *repl;
  Word back = extremal_into(d, q.start, q.start + *m, repl->src, dir);
  std::copy(back.begin(), back.end(), q.prefix.begin());
  q.rule = classify_tail(d, q.start + q.prefix.size(), q.cycle);
  return q;
}

}  // namespace

void check_path(const BratteliDiagram& d, const LazyPath& p) {
  check_word(d, p.start, p.prefix);
  if (p.cycle.empty()) {
    if (p.rule != TailRule::Unknown) fail(ErrorKind::MalformedWord, "tail rule without a cycle");
    return;
  }
  const MatrixSequence& s = d.seq();
  std::size_t l = p.start + p.prefix.size();
  if (!s.is_periodic()) fail(ErrorKind::MalformedWord, "periodic tail on a truncated diagram");
  if (l < s.prefix_length() || p.cycle.size() % s.cycle_length() != 0)
    fail(ErrorKind::MalformedWord, "path cycle is not aligned with the diagram's period");
  check_word(d, l, p.cycle);
  if (!p.prefix.empty() && p.prefix.back().tgt != p.cycle.front().src)
    fail(ErrorKind::MalformedWord, "cycle does not continue the prefix");
  if (p.cycle.back().tgt != p.cycle.front().src) fail(ErrorKind::MalformedWord, "cycle does not close up");
  TailRule r = classify_tail(d, l, p.cycle);
  if ((p.rule == TailRule::MinTail || p.rule == TailRule::MaxTail) && r != p.rule)
    fail(ErrorKind::MalformedWord, "tail rule does not match the cycle's edges");
}

LazyPath parse_path(const BratteliDiagram& d, const std::string& text, std::size_t start) {
  LazyPath p;
  p.start = start;
  auto bar = text.find('|');
  std::string pre = text.substr(0, bar);
  p.prefix = pre.empty() ? Word{} : parse_word(d, start, pre);
  if (bar != std::string::npos) {
    p.cycle = parse_word(d, start + p.prefix.size(), text.substr(bar + 1));
    p.rule = classify_tail(d, start + p.prefix.size(), p.cycle);
  }
  check_path(d, p);
  return p;
}

std::optional<LazyPath> successor(const BratteliDiagram& d, const LazyPath& p) { return step(d, p, +1); }
std::optional<LazyPath> predecessor(const BratteliDiagram& d, const LazyPath& p) { return step(d, p, -1); }

ExtremalPaths extremal_paths(const BratteliDiagram& d) {
  const MatrixSequence& s = d.seq();
  if (!s.is_periodic()) fail(ErrorKind::Undecided, "extremal paths of a truncated diagram are not determined");
  const std::size_t p = s.prefix_length(), c = s.cycle_length();
  const std::size_t n = s.alphabet(p).size();
  ExtremalPaths out;
  for (int dir : {+1, -1}) {
    // per-period backward map on A_p and the segment it follows
    std::vector<std::uint32_t> f(n);
    std::vector<Word> seg(n);
    for (std::uint32_t v = 0; v < n; ++v) {
      seg[v] = extremal_into(d, p, p + c, v, dir);
      f[v] = seg[v].front().src;
    }
    for (std::uint32_t v = 0; v < n; ++v) {
      std::uint32_t x = v;
      std::size_t q = 0;
      do {
        x = f[x];
        ++q;
      } while (x != v && q <= n);
      if (x != v) continue;
      // v_{j+1} is the periodic preimage f^{q-1}(v_j)
      LazyPath path;
      path.start = 0;
      path.prefix = extremal_into(d, 0, p, v, dir);
      std::uint32_t cur = v;
      for (std::size_t j = 0; j < q; ++j) {
        std::uint32_t nx = cur;
        for (std::size_t t = 0; t + 1 < q; ++t) nx = f[nx];
        path.cycle.insert(path.cycle.end(), seg[nx].begin(), seg[nx].end());
        cur = nx;
      }
      path.rule = dir > 0 ? TailRule::MinTail : TailRule::MaxTail;
      (dir > 0 ? out.minimal : out.maximal).push_back(std::move(path));
    }
  }
  return out;
}

BigInt path_rank(const BratteliDiagram& d, std::size_t start, const Word& w) {
  check_word(d, start, w);
  std::vector<BigInt> cnt(d.alphabet(start).size(), 1);
  BigInt rank = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    std::size_t l = start + i;
    for (const Edge& f : d.incoming(l, w[i].tgt)) {
      if (f == w[i]) break;
      rank += cnt[f.src];
    }
    const GenMatrix& m = d.seq()[l];
    std::vector<BigInt> nx(m.ncols(), 0);
    for (std::size_t a = 0; a < m.nrows(); ++a)
      for (std::size_t b = 0; b < m.ncols(); ++b) nx[b] += cnt[a] * m(a, b);
    cnt = std::move(nx);
  }
  return rank;
}

BratteliDiagram induced_diagram(const MatrixSequence& base, const BratteliDiagram& ambient, const Embedding& emb) {
  MatrixSequence b2 = common_representation(base, ambient.seq()).first;
  StableOrder order;
  for (std::size_t l = 0; l < b2.rep_length(); ++l) {
    const GenMatrix& m = b2.terms()[l];
    const GenMatrix& h = ambient.seq()[l];
    std::vector<std::vector<Edge>> into(m.ncols());
    for (std::uint32_t b = 0; b < m.ncols(); ++b) {
      std::vector<std::pair<std::size_t, Edge>> ranked;
      for (std::uint32_t a = 0; a < m.nrows(); ++a)
        for (std::uint32_t i = 0; BigInt(i) < m(a, b); ++i) {
          const std::string &la = m.rows().label(a), &lb = m.cols().label(b);
          Edge amb{static_cast<std::uint32_t>(h.rows().index(la)), static_cast<std::uint32_t>(h.cols().index(lb)),
                   emb.ambient_index(base, l, la, lb, i)};
          if (!ambient.valid(l, amb)) fail(ErrorKind::NotNested, "embedded edge missing from the ambient diagram");
          ranked.push_back({ambient.rank(l, amb), Edge{a, b, i}});
        }
      std::sort(ranked.begin(), ranked.end());
      for (auto& r : ranked) into[b].push_back(r.second);
    }
    order.incoming.push_back(std::move(into));
  }
  return BratteliDiagram(b2, std::move(order));
}

Word to_ambient(const MatrixSequence& base, const BratteliDiagram& ambient, const Embedding& emb, std::size_t start,
                const Word& w) {
  Word out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    std::size_t l = start + i;
    const std::string& la = base.alphabet(l).label(w[i].src);
    const std::string& lb = base.alphabet(l + 1).label(w[i].tgt);
    out.push_back({static_cast<std::uint32_t>(ambient.alphabet(l).index(la)),
                   static_cast<std::uint32_t>(ambient.alphabet(l + 1).index(lb)),
                   emb.ambient_index(base, l, la, lb, w[i].idx)});
  }
  return out;
}

std::string ReturnTime::to_string() const {
  switch (kind) {
    case Kind::Finite: return value.get_str();
    case Kind::Infinite: return "Infinite";
    default: return "Undecided";
  }
}

ReturnTime return_time(const BratteliDiagram& ambient, const MatrixSequence& base, const Embedding& emb,
                       const LazyPath& p) {
  BratteliDiagram bd = induced_diagram(base, ambient, emb);
  try {
    check_path(bd, p);
  } catch (const Error& e) {
    fail(ErrorKind::NotInBase, std::string("path is not in the base: ") + e.what());
  }
  ReturnTime out;
  std::optional<LazyPath> next;
  try {
    next = successor(bd, p);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::UndeterminedTail) throw;
    out.kind = ReturnTime::Kind::Undecided;
    return out;
  }
  if (!next) {
    out.kind = ReturnTime::Kind::Infinite;
    return out;
  }
  std::size_t span = std::max(p.prefix.size(), next->prefix.size());
  std::size_t m = 0;
  for (std::size_t i = 0; i < span; ++i)
    if (p.at(i) != next->at(i)) m = i;
  Word a, b;
  for (std::size_t i = 0; i <= m; ++i) {
    a.push_back(p.at(i));
    b.push_back(next->at(i));
  }
  BigInt ra = path_rank(ambient, p.start, to_ambient(base, ambient, emb, p.start, a));
  BigInt rb = path_rank(ambient, p.start, to_ambient(base, ambient, emb, p.start, b));
  out.kind = ReturnTime::Kind::Finite;
  out.value = rb - ra;
  out.change_level = m;
  return out;
}

OrbitStats simulate_orbit(const BratteliDiagram& d, const LazyPath& p, std::size_t steps, std::size_t cylinder_depth,
                          const std::function<bool(const LazyPath&)>& in_base) {
  OrbitStats st;
  st.cylinder_depth = cylinder_depth;
  LazyPath cur = p;
  std::optional<std::size_t> last_visit;
  for (std::size_t t = 0; t < steps; ++t) {
    Word head;
    for (std::size_t i = 0; i < cylinder_depth; ++i) head.push_back(cur.at(i));
    ++st.visits[word_string(d, cur.start, head)];
    if (in_base && in_base(cur)) {
      if (last_visit) ++st.return_histogram[t - *last_visit];
      last_visit = t;
    }
    ++st.steps;
    if (t + 1 == steps) break;
    auto nx = successor(d, cur);
    if (!nx) {
      st.stopped = true;
      break;
    }
    cur = std::move(*nx);
  }
  st.last = cur;
  return st;
}

Rational kac_partial_sum(const MatrixSequence& base, const MatrixSequence& ambient, const EigvecSeqApprox& w,
                         std::size_t depth) {
  if (depth > w.depth) fail(ErrorKind::DepthExceeded, "eigenvector data too short");
  GenMatrix p = product_range(ambient, 0, depth);
  const Alphabet& bl = base.alphabet(depth);
  Rational s = 0;
  for (std::size_t v = 0; v < bl.size(); ++v) {
    std::size_t col = p.cols().index(bl.label(v));
    BigInt paths = 0;
    for (std::size_t r = 0; r < p.nrows(); ++r) paths += p(r, col);
    s += Rational(paths) * w.w[depth][v];
  }
  return s;
}

Rational kac_brute_force(const BratteliDiagram& ambient, const MatrixSequence& base, const Embedding& emb,
                         const EigvecSeqApprox& w, std::size_t depth) {
  if (depth > w.depth) fail(ErrorKind::DepthExceeded, "eigenvector data too short");
  if (depth == 0) return l1_norm(w.w[0]);
  // ambient edges that are base edges, per level
  std::vector<std::set<Edge>> base_edges(depth);
  for (std::size_t l = 0; l < depth; ++l) {
    const GenMatrix& m = base[l];
    for (std::uint32_t a = 0; a < m.nrows(); ++a)
      for (std::uint32_t b = 0; b < m.ncols(); ++b)
        for (std::uint32_t i = 0; BigInt(i) < m(a, b); ++i) {
          Word one{{a, b, i}};
          base_edges[l].insert(to_ambient(base, ambient, emb, l, one)[0]);
        }
  }
  auto paths = enumerate_paths(ambient, depth, 0);
  std::map<std::uint32_t, std::vector<std::pair<BigInt, bool>>> by_end;
  for (const auto& p : paths) {
    bool in = true;
    for (std::size_t l = 0; l < depth && in; ++l) in = base_edges[l].count(p[l]) > 0;
    by_end[p.back().tgt].push_back({path_rank(ambient, 0, p), in});
  }
  Rational total = 0;
  const Alphabet& bl = base.alphabet(depth);
  for (auto& [v, list] : by_end) {
    std::sort(list.begin(), list.end());
    std::vector<std::size_t> pos;
    for (std::size_t i = 0; i < list.size(); ++i)
      if (list[i].second) pos.push_back(i);
    if (pos.empty()) continue;
    auto bv = bl.find(ambient.alphabet(depth).label(v));
    if (!bv) continue;
    for (std::size_t i = 0; i < pos.size(); ++i) {
      std::size_t r = i + 1 < pos.size() ? pos[i + 1] - pos[i] : list.size() - pos[i] + pos[0];
      total += Rational(static_cast<unsigned long>(r)) * w.w[depth][*bv];
    }
  }
  return total;
}

}  // namespace adic
