#include "adic/matrix_sequence.hpp"

#include "adic/errors.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace adic {

std::string edge_label(const std::string& from, const std::string& to, std::size_t index) {
  return from + ">" + to + "#" + std::to_string(index);
}

void MatrixSequence::check_composable() const {
  auto link = [&](std::size_t i, std::size_t j) {
    if (!terms_[i].cols().same_set(terms_[j].rows()))
      fail(ErrorKind::IncompatibleAlphabets,
           "matrix " + std::to_string(i) + " does not compose with matrix " + std::to_string(j));
  };
  for (std::size_t i = 0; i + 1 < terms_.size(); ++i) link(i, i + 1);
  if (kind_ == Kind::EventuallyPeriodic) link(terms_.size() - 1, prefix_len_);
}

namespace {
// make each matrix's column order equal to the next matrix's row order
void align_orders(std::vector<GenMatrix>& t, std::size_t wrap_to, bool periodic) {
  for (std::size_t i = 0; i + 1 < t.size(); ++i)
    if (!t[i].cols().same_order(t[i + 1].rows())) t[i] = t[i].restricted(t[i].rows(), t[i + 1].rows());
  if (periodic && !t.back().cols().same_order(t[wrap_to].rows()))
    t.back() = t.back().restricted(t.back().rows(), t[wrap_to].rows());
}
}  // namespace

MatrixSequence MatrixSequence::periodic(std::vector<GenMatrix> prefix, std::vector<GenMatrix> cycle) {
  if (cycle.empty()) fail(ErrorKind::InvalidInput, "periodic sequence needs a nonempty cycle");
  MatrixSequence s;
  s.kind_ = Kind::EventuallyPeriodic;
  s.prefix_len_ = prefix.size();
  s.terms_ = std::move(prefix);
  for (auto& m : cycle) s.terms_.push_back(std::move(m));
  s.check_composable();
  align_orders(s.terms_, s.prefix_len_, true);
  return s;
}

MatrixSequence MatrixSequence::constant(GenMatrix m) { return periodic({}, {std::move(m)}); }

MatrixSequence MatrixSequence::truncated(std::vector<GenMatrix> terms) {
  if (terms.empty()) fail(ErrorKind::InvalidInput, "truncated sequence needs at least one term");
  MatrixSequence s;
  s.kind_ = Kind::Truncated;
  s.terms_ = std::move(terms);
  s.check_composable();
  align_orders(s.terms_, 0, false);
  return s;
}

std::optional<std::size_t> MatrixSequence::horizon() const {
  if (is_periodic()) return std::nullopt;
  return terms_.size();
}

std::size_t MatrixSequence::rep_index(std::size_t i) const {
  if (!is_periodic()) {
    if (i >= terms_.size()) fail(ErrorKind::HorizonExceeded, "level " + std::to_string(i) + " beyond horizon");
    return i;
  }
  if (i < prefix_len_) return i;
  return prefix_len_ + (i - prefix_len_) % cycle_length();
}

const GenMatrix& MatrixSequence::operator[](std::size_t i) const { return terms_[rep_index(i)]; }

bool MatrixSequence::has_level(std::size_t i) const { return is_periodic() || i < terms_.size(); }

const Alphabet& MatrixSequence::alphabet(std::size_t i) const {
  if (!is_periodic() && i == terms_.size()) return terms_.back().cols();
  return (*this)[i].rows();
}

MatrixSequence MatrixSequence::unrolled(std::size_t factor) const {
  if (!is_periodic()) fail(ErrorKind::InvalidInput, "unrolling a truncated sequence");
  if (factor <= 1) return *this;
  std::vector<GenMatrix> prefix(terms_.begin(), terms_.begin() + prefix_len_);
  std::vector<GenMatrix> cycle;
  for (std::size_t f = 0; f < factor; ++f)
    cycle.insert(cycle.end(), terms_.begin() + prefix_len_, terms_.end());
  return periodic(std::move(prefix), std::move(cycle));
}

MatrixSequence MatrixSequence::with_prefix(std::size_t p) const {
  if (!is_periodic()) fail(ErrorKind::InvalidInput, "with_prefix on a truncated sequence");
  if (p <= prefix_len_) return *this;
  std::vector<GenMatrix> prefix, cycle;
  for (std::size_t i = 0; i < p; ++i) prefix.push_back((*this)[i]);
  for (std::size_t i = p; i < p + cycle_length(); ++i) cycle.push_back((*this)[i]);
  return periodic(std::move(prefix), std::move(cycle));
}

MatrixSequence MatrixSequence::truncated_to(std::size_t n) const {
  std::vector<GenMatrix> t;
  for (std::size_t i = 0; i < n; ++i) t.push_back((*this)[i]);
  return truncated(std::move(t));
}

std::size_t MatrixSequence::max_alphabet_size() const {
  std::size_t m = 0;
  for (const auto& t : terms_) m = std::max({m, t.nrows(), t.ncols()});
  return m;
}

std::size_t MatrixSequence::liminf_alphabet_size() const {
  std::size_t m = SIZE_MAX;
  std::size_t from = is_periodic() ? prefix_len_ : 0;
  for (std::size_t i = from; i < terms_.size(); ++i) m = std::min(m, terms_[i].nrows());
  if (!is_periodic()) m = std::min(m, terms_.back().ncols());
  return m;
}

bool same_sequence(const MatrixSequence& a, const MatrixSequence& b) {
  if (a.kind() != b.kind()) return false;
  if (!a.is_periodic()) {
    if (a.rep_length() != b.rep_length()) return false;
    for (std::size_t i = 0; i < a.rep_length(); ++i)
      if (a[i] != b[i]) return false;
    return true;
  }
  std::size_t l = std::max(a.prefix_length(), b.prefix_length()) + lcm_size(a.cycle_length(), b.cycle_length());
  for (std::size_t i = 0; i < l; ++i)
    if (a[i] != b[i]) return false;
  return true;
}

namespace {
GenMatrix power(GenMatrix base, std::size_t e) {
  GenMatrix acc = GenMatrix::identity(base.rows());
  while (e) {
    if (e & 1) acc = matmul(acc, base);
    e >>= 1;
    if (e) base = matmul(base, base);
  }
  return acc;
}
}  // namespace

GenMatrix product_range(const MatrixSequence& seq, std::size_t begin, std::size_t end) {
  if (end < begin) fail(ErrorKind::InvalidInput, "empty product range reversed");
  if (!seq.is_periodic() && end > seq.rep_length())
    fail(ErrorKind::HorizonExceeded, "product reaches level " + std::to_string(end) + " beyond horizon");
  GenMatrix acc = GenMatrix::identity(seq.alphabet(begin));
  std::size_t i = begin;
  if (seq.is_periodic()) {
    std::size_t c = seq.cycle_length();
    while (i < end && i < seq.prefix_length()) acc = matmul(acc, seq[i++]);
    std::size_t full = (end - i) / c;
    if (full >= 3) {
      GenMatrix g = GenMatrix::identity(seq.alphabet(i));
      for (std::size_t k = 0; k < c; ++k) g = matmul(g, seq[i + k]);
      acc = matmul(acc, power(g, full));
      i += full * c;
    }
  }
  while (i < end) acc = matmul(acc, seq[i++]);
  return acc;
}

GenMatrix partial_product(const MatrixSequence& seq, std::size_t i, std::size_t n) {
  if (i > n) fail(ErrorKind::InvalidInput, "partial product needs i <= n");
  return product_range(seq, i, n + 1);
}

Verdict submatrix_leq(const MatrixSequence& m, const MatrixSequence& mhat) {
  std::size_t limit;
  bool exact = m.is_periodic() && mhat.is_periodic();
  if (exact)
    limit = std::max(m.prefix_length(), mhat.prefix_length()) + lcm_size(m.cycle_length(), mhat.cycle_length());
  else
    limit = std::min(m.horizon().value_or(SIZE_MAX), mhat.horizon().value_or(SIZE_MAX));
  for (std::size_t i = 0; i < limit; ++i) {
    if (!m.alphabet(i).subset_of(mhat.alphabet(i)))
      return Verdict::no("alphabet at level " + std::to_string(i) + " not contained");
    if (!entrywise_leq(m[i], mhat[i]))
      return Verdict::no("entry exceeds ambient at level " + std::to_string(i));
  }
  if (exact) return Verdict::yes("checked levels 0.." + std::to_string(limit - 1) + " covering both periods");
  return Verdict::undecided(limit, "no violation up to horizon");
}

MatrixSequence gather(const MatrixSequence& seq, const std::vector<std::size_t>& times) {
  if (times.size() < 2 || times[0] != 0) fail(ErrorKind::InvalidInput, "gathering times must start at 0 and have two entries");
  std::vector<GenMatrix> out;
  for (std::size_t k = 0; k + 1 < times.size(); ++k) {
    if (times[k + 1] <= times[k]) fail(ErrorKind::InvalidInput, "gathering times must increase");
    out.push_back(product_range(seq, times[k], times[k + 1]));
  }
  return MatrixSequence::truncated(std::move(out));
}

std::vector<std::size_t> periodic_times(const std::vector<std::size_t>& head, std::size_t start,
                                        std::size_t stride, std::size_t count) {
  std::vector<std::size_t> t(head);
  for (std::size_t x = start; t.size() < count; x += stride) t.push_back(x);
  t.resize(std::min(t.size(), count));
  return t;
}

MatrixSequence gather_periodic(const MatrixSequence& seq, const std::vector<std::size_t>& head,
                               std::size_t start, std::size_t stride) {
  if (!seq.is_periodic()) fail(ErrorKind::InvalidInput, "periodic gathering needs a periodic sequence");
  if (stride == 0) fail(ErrorKind::InvalidInput, "gathering stride must be positive");
  std::vector<std::size_t> t(head);
  t.push_back(start);
  if (t[0] != 0) fail(ErrorKind::InvalidInput, "gathering times must start at 0");
  for (std::size_t k = 0; k + 1 < t.size(); ++k)
    if (t[k + 1] <= t[k]) fail(ErrorKind::InvalidInput, "gathering times must increase");
  std::vector<GenMatrix> prefix, cycle;
  for (std::size_t k = 0; k + 1 < t.size(); ++k) prefix.push_back(product_range(seq, t[k], t[k + 1]));
  std::size_t x = start;
  while (x < seq.prefix_length()) {
    prefix.push_back(product_range(seq, x, x + stride));
    x += stride;
  }
  std::size_t c = seq.cycle_length();
  std::size_t q = c / gcd_size(c, stride % c == 0 ? c : stride % c);
  for (std::size_t j = 0; j < q; ++j, x += stride) cycle.push_back(product_range(seq, x, x + stride));
  return MatrixSequence::periodic(std::move(prefix), std::move(cycle));
}

namespace {

using Mask = std::vector<bool>;

bool has_edge_into(const GenMatrix& m, std::size_t a, const Mask& to) {
  for (std::size_t b = 0; b < m.ncols(); ++b)
    if (to[b] && m(a, b) != 0) return true;
  return false;
}

Mask image(const GenMatrix& m, const Mask& from, const Mask& allowed) {
  Mask out(m.ncols(), false);
  for (std::size_t a = 0; a < m.nrows(); ++a)
    if (from[a])
      for (std::size_t b = 0; b < m.ncols(); ++b)
        if (allowed[b] && m(a, b) != 0) out[b] = true;
  return out;
}

Alphabet masked(const Alphabet& a, const Mask& keep) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (keep[i]) idx.push_back(i);
  return a.subset(idx);
}

std::vector<std::string> dropped(const Alphabet& a, const Mask& keep) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!keep[i]) out.push_back(a.label(i));
  return out;
}

}  // namespace

std::vector<std::vector<bool>> forward_alive(const MatrixSequence& seq) {
  std::size_t n = seq.rep_length();
  std::vector<Mask> alive(n + (seq.is_periodic() ? 0 : 1));
  if (seq.is_periodic()) {
    std::size_t p = seq.prefix_length(), c = seq.cycle_length();
    for (std::size_t t = 0; t < c; ++t) alive[p + t] = Mask(seq.terms()[p + t].nrows(), true);
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t t = 0; t < c; ++t) {
        const GenMatrix& m = seq.terms()[p + t];
        const Mask& next = alive[p + (t + 1) % c];
        for (std::size_t a = 0; a < m.nrows(); ++a)
          if (alive[p + t][a] && !has_edge_into(m, a, next)) {
            alive[p + t][a] = false;
            changed = true;
          }
      }
    }
    for (std::size_t k = p; k-- > 0;) {
      const GenMatrix& m = seq.terms()[k];
      alive[k] = Mask(m.nrows());
      for (std::size_t a = 0; a < m.nrows(); ++a) alive[k][a] = has_edge_into(m, a, alive[k + 1]);
    }
  } else {
    alive[n] = Mask(seq.alphabet(n).size(), true);
    for (std::size_t k = n; k-- > 0;) {
      const GenMatrix& m = seq.terms()[k];
      alive[k] = Mask(m.nrows());
      for (std::size_t a = 0; a < m.nrows(); ++a) alive[k][a] = has_edge_into(m, a, alive[k + 1]);
    }
  }
  return alive;
}

ReduceResult reduce(const MatrixSequence& seq) {
  auto alive = forward_alive(seq);
  ReduceResult res;
  if (!seq.is_periodic()) {
    std::size_t n = seq.rep_length();
    std::vector<Mask> r(n + 1);
    r[0] = alive[0];
    for (std::size_t k = 0; k < n; ++k) r[k + 1] = image(seq.terms()[k], r[k], alive[k + 1]);
    std::vector<GenMatrix> out;
    for (std::size_t k = 0; k < n; ++k)
      out.push_back(seq.terms()[k].restricted(masked(seq.alphabet(k), r[k]), masked(seq.alphabet(k + 1), r[k + 1])));
    for (std::size_t k = 0; k <= n; ++k) res.removed.push_back(dropped(seq.alphabet(k), r[k]));
    res.seq = MatrixSequence::truncated(std::move(out));
    res.empty_path_space = std::none_of(r[0].begin(), r[0].end(), [](bool b) { return b; });
    return res;
  }
  std::size_t p = seq.prefix_length(), c = seq.cycle_length();
  auto alive_at = [&](std::size_t level) -> const Mask& { return alive[seq.rep_index(level)]; };
  std::vector<Mask> r;
  r.push_back(alive_at(0));
  std::map<std::pair<std::size_t, Mask>, std::size_t> seen;
  std::size_t first = 0, again = 0;
  for (std::size_t k = 0;; ++k) {
    if (k >= p) {
      auto key = std::make_pair((k - p) % c, r[k]);
      auto it = seen.find(key);
      if (it != seen.end()) {
        first = it->second;
        again = k;
        break;
      }
      seen.emplace(key, k);
    }
    r.push_back(image(seq[k], r[k], alive_at(k + 1)));
  }
  std::vector<GenMatrix> prefix, cycle;
  for (std::size_t k = 0; k < again; ++k) {
    const Mask& next = (k + 1 == again) ? r[first] : r[k + 1];
    GenMatrix m = seq[k].restricted(masked(seq.alphabet(k), r[k]), masked(seq.alphabet(k + 1), next));
    (k < first ? prefix : cycle).push_back(std::move(m));
    res.removed.push_back(dropped(seq.alphabet(k), r[k]));
  }
  res.seq = MatrixSequence::periodic(std::move(prefix), std::move(cycle));
  res.empty_path_space = std::none_of(r[0].begin(), r[0].end(), [](bool b) { return b; });
  return res;
}

bool is_reduced(const MatrixSequence& seq) {
  for (const auto& m : seq.terms()) {
    for (std::size_t i = 0; i < m.nrows(); ++i)
      if (m.row_is_zero(i)) return false;
    for (std::size_t j = 0; j < m.ncols(); ++j)
      if (m.col_is_zero(j)) return false;
  }
  return true;
}

Verdict is_primitive(const MatrixSequence& seq) {
  std::size_t n = seq.rep_length();
  for (std::size_t k = 0; k < n; ++k) {
    BoolMatrix b = BoolMatrix::identity(seq.alphabet(k).size());
    bool found = false;
    std::set<std::pair<std::size_t, BoolMatrix>> seen;
    for (std::size_t j = k;; ++j) {
      if (!seq.has_level(j)) break;
      b = bmul(b, BoolMatrix::of(seq[j]));
      if (b.all()) {
        found = true;
        break;
      }
      if (b.r == 0 || b.c == 0) break;
      if (seq.is_periodic() && j + 1 >= seq.prefix_length()) {
        auto key = std::make_pair(seq.rep_index(j + 1), b);
        if (!seen.insert(key).second) break;
      }
    }
    if (!found) {
      if (seq.is_periodic())
        return Verdict::no("no strictly positive product starting at level " + std::to_string(k));
      return Verdict::undecided(n, "no positive product from level " + std::to_string(k) + " within horizon");
    }
  }
  if (seq.is_periodic()) return Verdict::yes("positive products found from every phase");
  return Verdict::yes("positive products witnessed from every level within horizon");
}

StateSplit state_split(const MatrixSequence& seq) {
  StateSplit out;
  for (std::size_t k = 0; k < seq.rep_length(); ++k) {
    const GenMatrix& m = seq.terms()[k];
    if (m.is_zero()) fail(ErrorKind::EmptyEdgeAlphabet, "matrix " + std::to_string(k) + " has no edges");
    std::vector<std::string> labels;
    std::vector<std::pair<std::size_t, std::size_t>> ends;
    for (std::size_t a = 0; a < m.nrows(); ++a)
      for (std::size_t b = 0; b < m.ncols(); ++b)
        for (BigInt i = 0; i < m(a, b); ++i) {
          labels.push_back(edge_label(m.rows().label(a), m.cols().label(b), i.get_ui()));
          ends.emplace_back(a, b);
        }
    Alphabet e(labels);
    GenMatrix am(m.rows(), e), bm(e, m.cols());
    for (std::size_t x = 0; x < ends.size(); ++x) {
      am(ends[x].first, x) = 1;
      bm(x, ends[x].second) = 1;
    }
    if (matmul(am, bm) != m) fail(ErrorKind::Internal, "state split does not factor the matrix");
    out.a.push_back(std::move(am));
    out.b.push_back(std::move(bm));
  }
  std::vector<GenMatrix> pre, cyc;
  for (std::size_t k = 0; k < seq.rep_length(); ++k) {
    bool in_prefix = !seq.is_periodic() || k < seq.prefix_length();
    auto& dst = in_prefix ? pre : cyc;
    dst.push_back(out.a[k]);
    dst.push_back(out.b[k]);
  }
  out.interleaved = seq.is_periodic() ? MatrixSequence::periodic(std::move(pre), std::move(cyc))
                                      : MatrixSequence::truncated(std::move(pre));
  return out;
}

}  // namespace adic
