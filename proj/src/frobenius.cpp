#include "adic/frobenius.hpp"

#include "adic/errors.hpp"
#include "adic/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

namespace adic {

namespace {

using Mask = std::vector<bool>;

bool any(const Mask& m) { return std::find(m.begin(), m.end(), true) != m.end(); }

std::vector<std::uint32_t> to_list(const Mask& m) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < m.size(); ++i)
    if (m[i]) out.push_back(i);
  return out;
}

// Finite stretch of levels 0..levels-1 on which streams are computed.
struct Window {
  std::vector<const GenMatrix*> mat;  // levels-1 matrices
  std::vector<std::size_t> size;      // alphabet size per level
  std::size_t levels() const { return size.size(); }

  std::vector<Mask> empty() const {
    std::vector<Mask> out;
    for (auto s : size) out.emplace_back(s, false);
    return out;
  }
  // vertices reaching X at a strictly later level; `beyond` marks last-level
  // vertices that reach X after the window
  std::vector<Mask> coreach(const std::vector<Mask>& x, const Mask& beyond) const {
    auto co = empty();
    co.back() = beyond;
    for (std::size_t l = levels() - 1; l-- > 0;) {
      const GenMatrix& m = *mat[l];
      for (std::size_t a = 0; a < m.nrows(); ++a)
        for (std::size_t b = 0; b < m.ncols() && !co[l][a]; ++b)
          if (m(a, b) != 0 && (x[l + 1][b] || co[l + 1][b])) co[l][a] = true;
    }
    return co;
  }
  // vertices reachable from T at a strictly earlier level
  std::vector<Mask> forward(const std::vector<Mask>& t) const {
    auto f = empty();
    for (std::size_t l = 0; l + 1 < levels(); ++l) {
      const GenMatrix& m = *mat[l];
      for (std::size_t a = 0; a < m.nrows(); ++a) {
        if (!t[l][a] && !f[l][a]) continue;
        for (std::size_t b = 0; b < m.ncols(); ++b)
          if (m(a, b) != 0) f[l + 1][b] = true;
      }
    }
    return f;
  }
};

// Tail of a periodic sequence as a cyclic layered graph.
struct Tail {
  std::size_t p = 0, c = 0;
  std::vector<std::size_t> offset;  // per phase, plus total at the end
  Adjacency adj;
  std::size_t node(std::size_t phase, std::size_t v) const { return offset[phase] + v; }
  std::size_t total() const { return offset.back(); }
};

Tail build_tail(const MatrixSequence& s) {
  Tail t;
  t.p = s.prefix_length();
  t.c = s.cycle_length();
  t.offset.push_back(0);
  for (std::size_t ph = 0; ph < t.c; ++ph) t.offset.push_back(t.offset.back() + s.alphabet(t.p + ph).size());
  t.adj.assign(t.total(), {});
  for (std::size_t ph = 0; ph < t.c; ++ph) {
    const GenMatrix& m = s[t.p + ph];
    std::size_t nx = (ph + 1) % t.c;
    for (std::size_t a = 0; a < m.nrows(); ++a)
      for (std::size_t b = 0; b < m.ncols(); ++b)
        if (m(a, b) != 0) t.adj[t.node(ph, a)].push_back(t.node(nx, b));
  }
  return t;
}

struct Cores {
  std::vector<std::vector<Mask>> phase_mask;  // [core][phase]
  std::size_t period_lcm = 1;
};

Cores find_cores(const MatrixSequence& s, const Tail& t) {
  auto scc = strongly_connected(t.adj);
  Cores out;
  std::map<std::size_t, std::size_t> comp_to_core;
  for (std::size_t comp = 0; comp < scc.count; ++comp) {
    if (!scc.nontrivial[comp]) continue;
    std::size_t g = component_period(t.adj, scc, comp);
    out.period_lcm = std::lcm(out.period_lcm, g / t.c);
    comp_to_core[comp] = out.phase_mask.size();
    std::vector<Mask> masks;
    for (std::size_t ph = 0; ph < t.c; ++ph) masks.emplace_back(s.alphabet(t.p + ph).size(), false);
    out.phase_mask.push_back(std::move(masks));
  }
  for (std::size_t ph = 0; ph < t.c; ++ph)
    for (std::size_t v = 0; v < s.alphabet(t.p + ph).size(); ++v) {
      auto it = comp_to_core.find(scc.component[t.node(ph, v)]);
      if (it != comp_to_core.end()) out.phase_mask[it->second][ph][v] = true;
    }
  // order cores by their first node for determinism
  std::vector<std::size_t> idx(out.phase_mask.size());
  std::iota(idx.begin(), idx.end(), 0);
  return out;
}

// per phase: tail vertices reaching the core at a strictly later level
std::vector<Mask> tail_coreach(const Tail& t, const MatrixSequence& s, const std::vector<Mask>& core) {
  std::vector<Mask> r;
  for (std::size_t ph = 0; ph < t.c; ++ph) r.emplace_back(core[ph].size(), false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t ph = 0; ph < t.c; ++ph) {
      const GenMatrix& m = s[t.p + ph];
      std::size_t nx = (ph + 1) % t.c;
      for (std::size_t a = 0; a < m.nrows(); ++a) {
        if (r[ph][a]) continue;
        for (std::size_t b = 0; b < m.ncols(); ++b)
          if (m(a, b) != 0 && (core[nx][b] || r[nx][b])) {
            r[ph][a] = true;
            changed = true;
            break;
          }
      }
    }
  }
  return r;
}

std::string min_label(const Alphabet& a, const Mask& m) {
  std::string best;
  bool have = false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (m[i] && (!have || a.label(i) < best)) {
      best = a.label(i);
      have = true;
    }
  return best;
}

struct Assignment {
  std::vector<std::vector<long>> owner;  // per window level
  std::vector<std::size_t> order;        // chosen order of the cores
};

// Hats and pool over a window, given per-stream core masks at levels >= base
// and the per-stream last-level "beyond" masks.
std::vector<std::vector<long>> assign_window(const Window& w, std::size_t base,
                                             const std::vector<std::vector<Mask>>& ext,
                                             const std::vector<Mask>& beyond) {
  const std::size_t d = ext.size();
  (void)base;
  auto taken = w.empty();
  std::vector<std::vector<Mask>> hat(d);
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<std::vector<Mask>> tilde(d);
    for (std::size_t j = i; j < d; ++j) {
      tilde[j] = ext[j];
      for (std::size_t l = 0; l < w.levels(); ++l)
        for (std::size_t v = 0; v < w.size[l]; ++v)
          if (taken[l][v]) tilde[j][l][v] = false;
    }
    auto co = w.coreach(tilde[i], beyond[i]);
    auto t = w.empty();
    for (std::size_t j = i; j < d; ++j)
      for (std::size_t l = 0; l < w.levels(); ++l)
        for (std::size_t v = 0; v < w.size[l]; ++v)
          if (tilde[j][l][v]) t[l][v] = true;
    auto f = w.forward(t);
    hat[i] = w.empty();
    for (std::size_t l = 0; l < w.levels(); ++l)
      for (std::size_t v = 0; v < w.size[l]; ++v) {
        if (taken[l][v]) continue;
        bool in = tilde[i][l][v] || (i == 0 ? co[l][v] : (co[l][v] && f[l][v]));
        if (in) {
          hat[i][l][v] = true;
          taken[l][v] = true;
        }
      }
  }
  std::vector<std::vector<long>> owner(w.levels());
  for (std::size_t l = 0; l < w.levels(); ++l) owner[l].assign(w.size[l], 0);
  std::vector<std::vector<Mask>> hat_co(d);
  for (std::size_t i = 0; i < d; ++i) hat_co[i] = w.coreach(hat[i], beyond[i]);
  for (std::size_t l = 0; l < w.levels(); ++l)
    for (std::size_t v = 0; v < w.size[l]; ++v) {
      long o = 0;
      bool found = false;
      for (std::size_t i = 0; i < d && !found; ++i)
        if (hat[i][l][v]) {
          o = static_cast<long>(i);
          found = true;
        }
      for (std::size_t i = 0; i < d && !found; ++i)
        if (hat_co[i][l][v]) {
          o = -1 - static_cast<long>(i);
          found = true;
        }
      if (!found) o = -1 - static_cast<long>(d);  // reaches no stream (not reduced or horizon)
      owner[l][v] = o;
    }
  return owner;
}

void fill_blocks(StreamDecomposition& dec, std::size_t levels) {
  const std::size_t d = dec.streams.size();
  std::vector<BlockRef> all;
  for (std::size_t i = 0; i <= d; ++i) {
    all.push_back({true, i});
    if (i < d) all.push_back({false, i});
  }
  auto owner_of = [&](std::size_t l) -> const std::vector<long>& {
    return dec.owner[l < dec.owner.size() ? l : dec.seq.rep_index(l)];
  };
  auto in_block = [](long o, const BlockRef& b) {
    return b.pool ? (o < 0 && static_cast<std::size_t>(-1 - o) == b.index) : (o >= 0 && static_cast<std::size_t>(o) == b.index);
  };
  dec.blocks.assign(levels, {});
  for (std::size_t l = 0; l < levels; ++l)
    for (const auto& b : all)
      if (std::any_of(owner_of(l).begin(), owner_of(l).end(), [&](long o) { return in_block(o, b); }))
        dec.blocks[l].push_back(b);
  dec.block_matrices.clear();
  std::size_t nmat = dec.seq.is_periodic() ? levels : levels - 1;
  for (std::size_t l = 0; l < nmat; ++l) {
    const GenMatrix& m = dec.seq[l];
    const auto& rows = dec.blocks[l];
    const auto& cols = l + 1 < levels ? dec.blocks[l + 1] : dec.blocks[dec.seq.rep_index(l + 1)];
    const auto& ro = owner_of(l);
    const auto& co = owner_of(l + 1);
    GenMatrix b(Alphabet::numbered(rows.size()), Alphabet::numbered(cols.size()));
    for (std::size_t x = 0; x < rows.size(); ++x)
      for (std::size_t y = 0; y < cols.size(); ++y) {
        bool hit = false;
        for (std::size_t u = 0; u < m.nrows() && !hit; ++u) {
          if (!in_block(ro[u], rows[x])) continue;
          for (std::size_t v = 0; v < m.ncols() && !hit; ++v)
            if (in_block(co[v], cols[y]) && m(u, v) != 0) hit = true;
        }
        if (hit) b(x, y) = 1;
      }
    dec.block_matrices.push_back(std::move(b));
  }
}

void fill_streams(StreamDecomposition& dec, std::size_t d, std::size_t levels) {
  dec.streams.assign(d, {});
  dec.pool = Stream{StreamKind::Pool, 0, {}};
  for (std::size_t i = 0; i < d; ++i) dec.streams[i].members.assign(levels, {});
  dec.pool.members.assign(levels, {});
  for (std::size_t l = 0; l < levels; ++l)
    for (std::uint32_t v = 0; v < dec.owner[l].size(); ++v) {
      long o = dec.owner[l][v];
      if (o >= 0) dec.streams[o].members[l].push_back(v);
      else dec.pool.members[l].push_back(v);
    }
  for (auto& s : dec.streams) {
    s.kind = StreamKind::Primitive;
    s.starting_time = levels;
    for (std::size_t l = 0; l < levels; ++l)
      if (!s.members[l].empty()) {
        s.starting_time = l;
        break;
      }
  }
  dec.pool.starting_time = levels;
  for (std::size_t l = 0; l < levels; ++l)
    if (!dec.pool.members[l].empty()) {
      dec.pool.starting_time = l;
      break;
    }
}

// disjoint backward extension of a core (masks at level `base`) into levels < base
std::vector<Mask> extend_back(const MatrixSequence& s, std::size_t base, const Mask& at_base,
                              const std::vector<Mask>& claimed) {
  std::vector<Mask> ext(base + 1);
  ext[base] = at_base;
  for (std::size_t l = base; l-- > 0;) {
    const GenMatrix& m = s[l];
    ext[l].assign(m.nrows(), false);
    for (std::size_t a = 0; a < m.nrows(); ++a) {
      if (claimed[l][a]) continue;
      for (std::size_t b = 0; b < m.ncols(); ++b)
        if (ext[l + 1][b] && m(a, b) != 0) {
          ext[l][a] = true;
          break;
        }
    }
  }
  return ext;
}

std::size_t first_nonempty(const std::vector<Mask>& ext) {
  for (std::size_t l = 0; l < ext.size(); ++l)
    if (any(ext[l])) return l;
  return ext.size();
}

// Order cores: topological w.r.t. reach, sources first, sinks last, then the
// prospective starting time, then the smallest label.
std::vector<std::size_t> order_cores(const MatrixSequence& s, std::size_t base,
                                     const std::vector<Mask>& base_masks,
                                     const std::vector<std::vector<bool>>& reach,
                                     std::vector<std::vector<Mask>>& ext_out) {
  const std::size_t d = base_masks.size();
  std::vector<int> cls(d, 1);
  std::vector<std::size_t> indeg(d, 0);
  for (std::size_t j = 0; j < d; ++j) {
    bool src = true, sink = true;
    for (std::size_t i = 0; i < d; ++i) {
      if (i == j) continue;
      if (reach[i][j]) {
        src = false;
        ++indeg[j];
      }
      if (reach[j][i]) sink = false;
    }
    cls[j] = src ? 0 : (sink ? 2 : 1);
  }
  std::vector<Mask> claimed(base + 1);
  for (std::size_t l = 0; l <= base; ++l) claimed[l].assign(s.alphabet(l).size(), false);
  std::vector<bool> done(d, false);
  std::vector<std::size_t> order;
  ext_out.assign(d, {});
  for (std::size_t step = 0; step < d; ++step) {
    std::optional<std::tuple<int, std::size_t, std::string, std::size_t>> best;
    std::vector<Mask> best_ext;
    for (std::size_t j = 0; j < d; ++j) {
      if (done[j] || indeg[j] != 0) continue;
      auto ext = extend_back(s, base, base_masks[j], claimed);
      auto key = std::make_tuple(cls[j], first_nonempty(ext), min_label(s.alphabet(base), base_masks[j]), j);
      if (!best || key < *best) {
        best = key;
        best_ext = std::move(ext);
      }
    }
    std::size_t j = std::get<3>(*best);
    done[j] = true;
    order.push_back(j);
    for (std::size_t i = 0; i < d; ++i)
      if (i != j && reach[j][i]) --indeg[i];
    for (std::size_t l = 0; l < base; ++l)
      for (std::size_t v = 0; v < claimed[l].size(); ++v)
        if (best_ext[l][v]) claimed[l][v] = true;
    ext_out[j] = std::move(best_ext);
  }
  return order;
}

StreamDecomposition decompose_periodic(const MatrixSequence& input) {
  MatrixSequence s = input;
  Tail tail = build_tail(s);
  Cores cores = find_cores(s, tail);
  std::size_t u = cores.period_lcm;
  if (u > 1) {
    s = s.unrolled(u);
    tail = build_tail(s);
    cores = find_cores(s, tail);
  }
  const std::size_t p = tail.p, c = tail.c, d = cores.phase_mask.size();
  if (d == 0) fail(ErrorKind::Internal, "reduced periodic sequence without recurrent class");

  // reach among cores in the tail
  auto reach_nodes = transitive_reach(tail.adj);
  std::vector<std::vector<bool>> reach(d, std::vector<bool>(d, false));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      if (i == j) continue;
      for (std::size_t ph = 0; ph < c && !reach[i][j]; ++ph)
        for (std::size_t v = 0; v < cores.phase_mask[i][ph].size() && !reach[i][j]; ++v) {
          if (!cores.phase_mask[i][ph][v]) continue;
          for (std::size_t ph2 = 0; ph2 < c && !reach[i][j]; ++ph2)
            for (std::size_t w = 0; w < cores.phase_mask[j][ph2].size(); ++w)
              if (cores.phase_mask[j][ph2][w] && reach_nodes[tail.node(ph, v)][tail.node(ph2, w)]) {
                reach[i][j] = true;
                break;
              }
        }
    }

  std::vector<Mask> base_masks;
  for (std::size_t j = 0; j < d; ++j) base_masks.push_back(cores.phase_mask[j][0]);
  std::vector<std::vector<Mask>> prefix_ext;
  auto order = order_cores(s, p, base_masks, reach, prefix_ext);

  // window long enough for transients fed by the prefix to die out
  const std::size_t levels = p + tail.total() + 2 * c + 1;
  Window w;
  for (std::size_t l = 0; l < levels; ++l) {
    w.size.push_back(s.alphabet(l).size());
    if (l + 1 < levels) w.mat.push_back(&s[l]);
  }
  std::vector<std::vector<Mask>> ext(d);
  std::vector<Mask> beyond(d);
  for (std::size_t k = 0; k < d; ++k) {
    std::size_t j = order[k];
    ext[k] = w.empty();
    for (std::size_t l = 0; l < levels; ++l)
      ext[k][l] = l < p ? prefix_ext[j][l] : cores.phase_mask[j][(l - p) % c];
    auto r = tail_coreach(tail, s, cores.phase_mask[j]);
    beyond[k] = r[(levels - 1 - p) % c];
  }
  auto owner = assign_window(w, p, ext, beyond);

  std::size_t v0 = levels;
  for (std::size_t cand = p; cand + c < levels; ++cand) {
    bool ok = true;
    for (std::size_t l = cand; l + c < levels && ok; ++l) ok = owner[l] == owner[l + c];
    if (ok) {
      v0 = cand;
      break;
    }
  }
  if (v0 == levels) fail(ErrorKind::Internal, "stream structure did not become periodic");

  StreamDecomposition dec;
  dec.seq = s.with_prefix(v0);
  dec.unroll = u;
  dec.valid_from = v0;
  const std::size_t rep = v0 + c;
  dec.owner.assign(owner.begin(), owner.begin() + rep);
  fill_streams(dec, d, rep);
  fill_blocks(dec, rep);
  dec.reaches.assign(d, std::vector<bool>(d, false));
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) dec.reaches[a][b] = reach[order[a]][order[b]];
  dec.initial.assign(d, true);
  dec.final.assign(d, true);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      if (a != b && dec.reaches[a][b]) {
        dec.final[a] = false;
        dec.initial[b] = false;
      }
  return dec;
}

StreamDecomposition decompose_truncated(const MatrixSequence& s) {
  const std::size_t h = *s.horizon();
  const std::size_t d = s.alphabet(h).size();
  std::vector<Mask> base_masks;
  for (std::size_t v = 0; v < d; ++v) {
    Mask m(d, false);
    m[v] = true;
    base_masks.push_back(std::move(m));
  }
  std::vector<std::vector<bool>> reach(d, std::vector<bool>(d, false));
  std::vector<std::vector<Mask>> prefix_ext;
  auto order = order_cores(s, h, base_masks, reach, prefix_ext);
  Window w;
  for (std::size_t l = 0; l <= h; ++l) {
    w.size.push_back(s.alphabet(l).size());
    if (l < h) w.mat.push_back(&s[l]);
  }
  std::vector<std::vector<Mask>> ext(d);
  std::vector<Mask> beyond(d, Mask(d, false));
  for (std::size_t k = 0; k < d; ++k) {
    ext[k] = w.empty();
    for (std::size_t l = 0; l <= h; ++l) ext[k][l] = prefix_ext[order[k]][l];
  }
  StreamDecomposition dec;
  dec.seq = s;
  dec.provisional = true;
  dec.valid_from = h;
  dec.owner = assign_window(w, h, ext, beyond);
  fill_streams(dec, d, h + 1);
  fill_blocks(dec, h + 1);
  dec.reaches.assign(d, std::vector<bool>(d, false));
  dec.initial.assign(d, true);
  dec.final.assign(d, true);
  return dec;
}

}  // namespace

long StreamDecomposition::owner_at(std::size_t level, std::uint32_t v) const {
  return owner[level < owner.size() ? level : seq.rep_index(level)].at(v);
}

const std::vector<std::uint32_t>& StreamDecomposition::members_at(std::size_t stream, std::size_t level) const {
  const auto& m = streams.at(stream).members;
  if (level < m.size()) return m[level];
  return m[seq.rep_index(level)];
}

std::vector<std::uint32_t> StreamDecomposition::block_members(std::size_t level, const BlockRef& b) const {
  const auto& o = owner[level < owner.size() ? level : seq.rep_index(level)];
  std::vector<std::uint32_t> out;
  for (std::uint32_t v = 0; v < o.size(); ++v) {
    long x = o[v];
    bool in = b.pool ? (x < 0 && static_cast<std::size_t>(-1 - x) == b.index) : (x >= 0 && static_cast<std::size_t>(x) == b.index);
    if (in) out.push_back(v);
  }
  return out;
}

bool communicates(const MatrixSequence& seq, std::uint32_t a, std::size_t k, std::uint32_t b, std::size_t n) {
  if (n <= k) fail(ErrorKind::InvalidInput, "communication needs k < n");
  if (!seq.is_periodic() && n > seq.rep_length()) fail(ErrorKind::HorizonExceeded, "level beyond horizon");
  if (a >= seq.alphabet(k).size() || b >= seq.alphabet(n).size()) fail(ErrorKind::InvalidInput, "symbol out of range");
  std::vector<bool> cur(seq.alphabet(k).size(), false);
  cur[a] = true;
  for (std::size_t l = k; l < n; ++l) {
    const GenMatrix& m = seq[l];
    std::vector<bool> nx(m.ncols(), false);
    bool some = false;
    for (std::size_t x = 0; x < m.nrows(); ++x)
      if (cur[x])
        for (std::size_t y = 0; y < m.ncols(); ++y)
          if (m(x, y) != 0) nx[y] = some = true;
    if (!some) return false;
    cur = std::move(nx);
  }
  return cur[b];
}

StreamDecomposition stream_decompose(const MatrixSequence& seq) {
  if (!is_reduced(seq)) fail(ErrorKind::NotReduced, "stream decomposition needs a reduced sequence");
  if (seq.is_periodic()) return decompose_periodic(seq);
  return decompose_truncated(seq);
}

std::vector<std::size_t> FrobeniusForm::times(std::size_t count) const {
  return periodic_times(head_times, start, stride, count);
}

FrobeniusForm frobenius_form(const MatrixSequence& seq) {
  if (!is_reduced(seq)) fail(ErrorKind::NotReduced, "Frobenius form needs a reduced sequence");
  if (!seq.is_periodic()) fail(ErrorKind::Undecided, "stream structure of a truncated sequence is not certified");
  FrobeniusForm f;
  f.decomposition = stream_decompose(seq);
  const auto& dec = f.decomposition;
  const MatrixSequence& s = dec.seq;
  const std::size_t v = dec.valid_from, c = s.cycle_length();
  GenMatrix g = product_range(s, v, v + c);

  // smallest power killing every pool diagonal block
  std::vector<BlockRef> pools;
  for (const auto& b : dec.blocks[v])
    if (b.pool) pools.push_back(b);
  std::size_t m = 1;
  GenMatrix gm = g;
  auto pool_dead = [&](const GenMatrix& x) {
    for (const auto& b : pools) {
      auto mem = dec.block_members(v, b);
      for (auto i : mem)
        for (auto j : mem)
          if (x(i, j) != 0) return false;
    }
    return true;
  };
  while (!pool_dead(gm)) {
    gm = matmul(gm, g);
    if (++m > g.nrows() + 1) fail(ErrorKind::Internal, "pool block is not nilpotent");
  }
  f.pool_power = m;
  if (v > 0) f.head_times = {0};
  f.start = v;
  f.stride = m * c;
  MatrixSequence gathered = gather_periodic(s, f.head_times, f.start, f.stride);

  auto order_for = [&](std::size_t level, std::vector<BlockSpan>& spans) {
    std::vector<std::size_t> idx;
    const Alphabet& a = s.alphabet(level);
    for (const auto& b : dec.blocks[level]) {
      auto mem = dec.block_members(level, b);
      std::sort(mem.begin(), mem.end(), [&](auto x, auto y) { return a.label(x) < a.label(y); });
      spans.push_back({b, idx.size(), mem.size()});
      idx.insert(idx.end(), mem.begin(), mem.end());
    }
    return a.subset(idx);
  };
  std::vector<std::size_t> levels;
  if (v > 0) levels.push_back(0);
  levels.push_back(v);
  for (auto l : levels) {
    std::vector<BlockSpan> spans;
    f.permutation.push_back(order_for(l, spans));
    f.spans.push_back(std::move(spans));
  }
  std::vector<GenMatrix> pre, cyc;
  for (std::size_t k = 0; k < gathered.rep_length(); ++k) {
    const Alphabet& r = f.permutation[std::min(k, f.permutation.size() - 1)];
    const Alphabet& cl = f.permutation.back();
    GenMatrix x = gathered.terms()[k].restricted(r, cl);
    (k < gathered.prefix_length() ? pre : cyc).push_back(std::move(x));
  }
  f.gathered = MatrixSequence::periodic(std::move(pre), std::move(cyc));

  // certify diagonal blocks of the cycle matrix
  const GenMatrix& tailm = f.gathered.terms().back();
  for (const auto& sp : f.spans.back()) {
    std::vector<std::size_t> idx(sp.size);
    std::iota(idx.begin(), idx.end(), sp.offset);
    Alphabet sub = f.permutation.back().subset(idx);
    GenMatrix blk = tailm.restricted(sub, sub);
    if (sp.ref.pool) {
      if (!blk.is_zero()) fail(ErrorKind::Internal, "pool diagonal block is not zero");
    } else if (!is_primitive(MatrixSequence::constant(blk)).is_yes()) {
      fail(ErrorKind::Internal, "stream diagonal block is not primitive");
    }
  }
  f.initial = dec.initial;
  f.final = dec.final;
  return f;
}

std::vector<MinimalComponent> minimal_components(const MatrixSequence& seq) {
  auto dec = stream_decompose(seq);
  if (dec.provisional) fail(ErrorKind::Undecided, "stream structure of a truncated sequence is not certified");
  std::vector<MinimalComponent> out;
  const std::size_t levels = dec.owner.size();
  for (std::size_t i = 0; i < dec.streams.size(); ++i) {
    if (!dec.initial[i]) continue;
    MinimalComponent mc;
    mc.stream = i;
    mc.augmented = dec.streams[i].members;
    std::size_t st = dec.streams[i].starting_time;
    // symbols before the starting time that communicate to the stream
    std::vector<bool> target(dec.seq.alphabet(st).size(), false);
    for (auto x : dec.streams[i].members[st]) target[x] = true;
    for (std::size_t l = st; l-- > 0;) {
      const GenMatrix& m = dec.seq[l];
      std::vector<bool> here(m.nrows(), false);
      for (std::size_t a = 0; a < m.nrows(); ++a)
        for (std::size_t b = 0; b < m.ncols(); ++b)
          if (target[b] && m(a, b) != 0) here[a] = true;
      mc.augmented[l] = to_list(here);
      target = std::move(here);
    }
    (void)levels;
    mc.description = "tower over stream " + std::to_string(i) + " starting at level " + std::to_string(st);
    out.push_back(std::move(mc));
  }
  return out;
}

StationaryForm stationary_frobenius(const GenMatrix& m) {
  if (!m.is_square_same()) fail(ErrorKind::ShapeMismatch, "stationary form needs a square matrix");
  const std::size_t n = m.nrows();
  auto mm = m.restricted(m.rows(), m.rows());
  Adjacency adj(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (mm(i, j) != 0) adj[i].push_back(j);
  auto scc = strongly_connected(adj);
  StationaryForm out;
  std::vector<std::size_t> period(scc.count, 0);
  for (std::size_t k = 0; k < scc.count; ++k) {
    period[k] = component_period(adj, scc, k);
    if (period[k]) out.power = std::lcm(out.power, period[k]);
  }
  auto reach = transitive_reach(adj);
  // classes and their relations
  std::vector<std::size_t> classes;
  for (std::size_t k = 0; k < scc.count; ++k)
    if (scc.nontrivial[k]) classes.push_back(k);
  auto rep = [&](std::size_t comp) {
    std::size_t v = 0;
    while (scc.component[v] != comp) ++v;
    return v;
  };
  auto class_reach = [&](std::size_t a, std::size_t b) { return reach[rep(a)][rep(b)]; };
  const std::size_t d = classes.size();
  std::vector<std::size_t> indeg(d, 0);
  std::vector<int> cls(d, 1);
  for (std::size_t j = 0; j < d; ++j) {
    bool src = true, sink = true;
    for (std::size_t i = 0; i < d; ++i) {
      if (i == j) continue;
      if (class_reach(classes[i], classes[j])) {
        src = false;
        ++indeg[j];
      }
      if (class_reach(classes[j], classes[i])) sink = false;
    }
    cls[j] = src ? 0 : (sink ? 2 : 1);
  }
  std::vector<std::size_t> corder;
  std::vector<bool> done(d, false);
  for (std::size_t step = 0; step < d; ++step) {
    std::size_t best = d;
    for (std::size_t j = 0; j < d; ++j) {
      if (done[j] || indeg[j]) continue;
      if (best == d || std::make_pair(cls[j], rep(classes[j])) < std::make_pair(cls[best], rep(classes[best]))) best = j;
    }
    done[best] = true;
    corder.push_back(best);
    for (std::size_t i = 0; i < d; ++i)
      if (i != best && class_reach(classes[best], classes[i])) --indeg[i];
  }
  // pool states grouped before the first class they reach
  std::vector<std::vector<std::size_t>> groups(d + 1);
  for (std::size_t v = 0; v < n; ++v) {
    if (scc.nontrivial[scc.component[v]]) continue;
    std::size_t g = d;
    for (std::size_t k = 0; k < d; ++k)
      if (reach[v][rep(classes[corder[k]])]) {
        g = k;
        break;
      }
    groups[g].push_back(v);
  }
  auto topo = [&](std::vector<std::size_t> g) {
    // pool states: order consistent with reachability
    std::stable_sort(g.begin(), g.end(), [&](std::size_t a, std::size_t b) {
      if (reach[a][b]) return true;
      if (reach[b][a]) return false;
      return false;
    });
    // stable_sort with a partial order is not enough in general; do a Kahn pass
    std::vector<std::size_t> out2;
    std::vector<bool> used(g.size(), false);
    for (std::size_t step = 0; step < g.size(); ++step)
      for (std::size_t i = 0; i < g.size(); ++i) {
        if (used[i]) continue;
        bool ready = true;
        for (std::size_t j = 0; j < g.size(); ++j)
          if (!used[j] && j != i && reach[g[j]][g[i]]) ready = false;
        if (ready) {
          used[i] = true;
          out2.push_back(g[i]);
          break;
        }
      }
    return out2;
  };
  GenMatrix pw = GenMatrix::identity(mm.rows());
  for (std::size_t k = 0; k < out.power; ++k) pw = matmul(pw, mm);
  for (std::size_t k = 0; k <= d; ++k) {
    for (auto v : topo(groups[k])) {
      out.blocks.push_back({out.permutation.size(), 1, false});
      out.permutation.push_back(v);
    }
    if (k == d) break;
    std::size_t comp = classes[corder[k]];
    std::size_t h = period[comp];
    // cyclic classes by BFS depth mod h
    std::vector<long> depth(n, -1);
    std::size_t root = rep(comp);
    std::vector<std::size_t> q{root};
    depth[root] = 0;
    for (std::size_t qi = 0; qi < q.size(); ++qi)
      for (auto w : adj[q[qi]])
        if (scc.component[w] == comp && depth[w] < 0) {
          depth[w] = depth[q[qi]] + 1;
          q.push_back(w);
        }
    for (std::size_t r = 0; r < h; ++r) {
      std::size_t off = out.permutation.size();
      for (std::size_t v = 0; v < n; ++v)
        if (scc.component[v] == comp && static_cast<std::size_t>(depth[v]) % h == r) out.permutation.push_back(v);
      if (out.permutation.size() > off) {
        // period h divides power, so each cyclic class is a primitive block of M^power
        out.blocks.push_back({off, out.permutation.size() - off, true});
      }
    }
  }
  Alphabet order = mm.rows().subset(out.permutation);
  out.powered = pw.restricted(order, order);
  // a cyclic class of a period-h class splits further when power/h > 1? no:
  // M^power on a class of period h | power has exactly h primitive classes.
  return out;
}

}  // namespace adic
