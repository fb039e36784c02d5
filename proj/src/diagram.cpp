#include "adic/diagram.hpp"

#include "adic/errors.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace adic {

StableOrder index_order(const MatrixSequence& seq) {
  StableOrder o;
  for (const auto& m : seq.terms()) {
    std::vector<std::vector<Edge>> lvl(m.ncols());
    for (std::uint32_t b = 0; b < m.ncols(); ++b)
      for (std::uint32_t a = 0; a < m.nrows(); ++a) {
        unsigned long n = m(a, b).get_ui();
        for (std::uint32_t i = 0; i < n; ++i) lvl[b].push_back({a, b, i});
      }
    o.incoming.push_back(std::move(lvl));
  }
  return o;
}

BratteliDiagram::BratteliDiagram(MatrixSequence seq) : seq_(std::move(seq)), order_(index_order(seq_)) {
  build_ranks();
}

BratteliDiagram::BratteliDiagram(MatrixSequence seq, StableOrder order)
    : seq_(std::move(seq)), order_(std::move(order)), explicit_order_(true) {
  if (order_.incoming.size() != seq_.rep_length())
    fail(ErrorKind::InvalidInput, "order must list every representation level");
  for (std::size_t k = 0; k < seq_.rep_length(); ++k) {
    const GenMatrix& m = seq_.terms()[k];
    if (order_.incoming[k].size() != m.ncols())
      fail(ErrorKind::InvalidInput, "order at level " + std::to_string(k) + " must list every target");
    for (std::uint32_t b = 0; b < m.ncols(); ++b) {
      auto edges = order_.incoming[k][b];
      std::sort(edges.begin(), edges.end());
      std::vector<Edge> expect;
      for (std::uint32_t a = 0; a < m.nrows(); ++a)
        for (std::uint32_t i = 0; i < m(a, b).get_ui(); ++i) expect.push_back({a, b, i});
      std::sort(expect.begin(), expect.end());
      if (edges != expect)
        fail(ErrorKind::InvalidInput, "order at level " + std::to_string(k) + " into '" + m.cols().label(b) +
                                          "' is not a total order of the incoming edges");
    }
  }
  build_ranks();
}

void BratteliDiagram::build_ranks() {
  rank_.clear();
  for (std::size_t k = 0; k < seq_.rep_length(); ++k) {
    const GenMatrix& m = seq_.terms()[k];
    std::vector<std::vector<std::uint32_t>> lvl(m.nrows() * m.ncols());
    for (std::size_t a = 0; a < m.nrows(); ++a)
      for (std::size_t b = 0; b < m.ncols(); ++b) lvl[a * m.ncols() + b].resize(m(a, b).get_ui());
    for (std::uint32_t b = 0; b < m.ncols(); ++b) {
      const auto& in = order_.incoming[k][b];
      for (std::uint32_t r = 0; r < in.size(); ++r) lvl[in[r].src * m.ncols() + b][in[r].idx] = r;
    }
    rank_.push_back(std::move(lvl));
  }
}

const std::vector<Edge>& BratteliDiagram::incoming(std::size_t level, std::uint32_t target) const {
  return order_.incoming[seq_.rep_index(level)][target];
}

bool BratteliDiagram::valid(std::size_t level, const Edge& e) const {
  if (!seq_.has_level(level)) return false;
  const GenMatrix& m = seq_[level];
  return e.src < m.nrows() && e.tgt < m.ncols() && BigInt(e.idx) < m(e.src, e.tgt);
}

std::size_t BratteliDiagram::rank(std::size_t level, const Edge& e) const {
  if (!valid(level, e)) fail(ErrorKind::MalformedWord, "no such edge at level " + std::to_string(level));
  std::size_t k = seq_.rep_index(level);
  return rank_[k][e.src * seq_.terms()[k].ncols() + e.tgt][e.idx];
}

bool BratteliDiagram::is_max(std::size_t level, const Edge& e) const {
  return rank(level, e) + 1 == incoming(level, e.tgt).size();
}

Edge BratteliDiagram::min_into(std::size_t level, std::uint32_t target) const {
  const auto& in = incoming(level, target);
  if (in.empty()) fail(ErrorKind::MalformedWord, "no incoming edge at level " + std::to_string(level));
  return in.front();
}

Edge BratteliDiagram::max_into(std::size_t level, std::uint32_t target) const {
  const auto& in = incoming(level, target);
  if (in.empty()) fail(ErrorKind::MalformedWord, "no incoming edge at level " + std::to_string(level));
  return in.back();
}

std::string BratteliDiagram::edge_name(std::size_t level, const Edge& e) const {
  const GenMatrix& m = seq_[level];
  return edge_label(m.rows().label(e.src), m.cols().label(e.tgt), e.idx);
}

Edge BratteliDiagram::parse_edge(std::size_t level, const std::string& name) const {
  auto hash = name.rfind('#');
  auto arrow = name.find('>');
  if (hash == std::string::npos || arrow == std::string::npos || arrow > hash)
    fail(ErrorKind::MalformedWord, "edge id '" + name + "' is not of the form a>b#i");
  const GenMatrix& m = seq_[level];
  auto a = m.rows().find(name.substr(0, arrow));
  auto b = m.cols().find(name.substr(arrow + 1, hash - arrow - 1));
  if (!a || !b) fail(ErrorKind::MalformedWord, "edge id '" + name + "' names unknown symbols");
  Edge e{static_cast<std::uint32_t>(*a), static_cast<std::uint32_t>(*b), 0};
  try {
    e.idx = static_cast<std::uint32_t>(std::stoul(name.substr(hash + 1)));
  } catch (const std::exception&) {
    fail(ErrorKind::MalformedWord, "edge id '" + name + "' has a bad index");
  }
  if (!valid(level, e)) fail(ErrorKind::MalformedWord, "edge '" + name + "' does not exist at level " + std::to_string(level));
  return e;
}

void check_word(const BratteliDiagram& d, std::size_t start, const Word& word) {
  for (std::size_t i = 0; i < word.size(); ++i) {
    std::size_t lvl = start + i;
    if (!d.seq().has_level(lvl)) fail(ErrorKind::HorizonExceeded, "word runs past the horizon");
    if (!d.valid(lvl, word[i])) fail(ErrorKind::MalformedWord, "invalid edge at level " + std::to_string(lvl));
    if (i > 0 && word[i - 1].tgt != word[i].src)
      fail(ErrorKind::MalformedWord, "edges at levels " + std::to_string(lvl - 1) + " and " + std::to_string(lvl) + " do not compose");
  }
}

std::optional<Cylinder> cylinder(const BratteliDiagram& d, std::size_t start, const Word& word) {
  if (word.empty()) fail(ErrorKind::MalformedWord, "empty word");
  check_word(d, start, word);
  auto alive = forward_alive(d.seq());
  std::size_t end = start + word.size();
  std::size_t idx = d.seq().is_periodic() ? d.seq().rep_index(end) : end;
  if (!alive[idx][word.back().tgt]) return std::nullopt;
  return Cylinder{start, word};
}

Rational word_metric(const BratteliDiagram& d, const Word& e, const Word& f, std::size_t start) {
  if (e.empty() || f.empty()) fail(ErrorKind::InsufficientPrefix, "empty prefix");
  check_word(d, start, e);
  check_word(d, start, f);
  if (e[0] != f[0]) return 1;
  std::size_t n = std::min(e.size(), f.size());
  std::size_t m = 0;
  while (m + 1 < n && e[m + 1] == f[m + 1]) ++m;
  if (m + 1 == n) fail(ErrorKind::InsufficientPrefix, "prefixes agree on all given edges");
  BigInt w = product_range(d.seq(), start, start + m + 1).entry_sum();
  return Rational(1) / Rational(w);
}

std::vector<Word> enumerate_paths(const BratteliDiagram& d, std::size_t depth, std::size_t start) {
  std::vector<Word> out;
  if (depth == 0) return out;
  if (!d.seq().has_level(start + depth - 1)) fail(ErrorKind::HorizonExceeded, "enumeration depth beyond horizon");
  Word cur;
  std::function<void(std::size_t, std::int64_t)> go = [&](std::size_t lvl, std::int64_t from) {
    if (cur.size() == depth) {
      out.push_back(cur);
      return;
    }
    const GenMatrix& m = d.seq()[lvl];
    for (std::uint32_t a = 0; a < m.nrows(); ++a) {
      if (from >= 0 && a != static_cast<std::uint32_t>(from)) continue;
      for (std::uint32_t b = 0; b < m.ncols(); ++b)
        for (std::uint32_t i = 0; BigInt(i) < m(a, b); ++i) {
          cur.push_back({a, b, i});
          go(lvl + 1, b);
          cur.pop_back();
        }
    }
  };
  go(start, -1);
  return out;
}

StableOrder substitution_order(const MatrixSequence& seq, const std::vector<Substitution>& subs) {
  if (subs.size() != seq.rep_length())
    fail(ErrorKind::InvalidInput, "one substitution per representation level is required");
  StableOrder o;
  for (std::size_t k = 0; k < seq.rep_length(); ++k) {
    const GenMatrix& m = seq.terms()[k];
    std::vector<std::vector<Edge>> lvl(m.ncols());
    for (std::uint32_t b = 0; b < m.ncols(); ++b) {
      auto it = subs[k].find(m.cols().label(b));
      if (it == subs[k].end())
        fail(ErrorKind::AbelianizationMismatch, "no image for '" + m.cols().label(b) + "' at level " + std::to_string(k));
      std::vector<std::uint32_t> seen(m.nrows(), 0);
      for (const auto& letter : it->second) {
        auto a = m.rows().find(letter);
        if (!a) fail(ErrorKind::AbelianizationMismatch, "letter '" + letter + "' not in the alphabet");
        lvl[b].push_back({static_cast<std::uint32_t>(*a), b, seen[*a]++});
      }
      for (std::uint32_t a = 0; a < m.nrows(); ++a)
        if (BigInt(seen[a]) != m(a, b))
          fail(ErrorKind::AbelianizationMismatch, "image of '" + m.cols().label(b) + "' has " + std::to_string(seen[a]) +
                                                       " copies of '" + m.rows().label(a) + "', matrix says " + m(a, b).get_str());
    }
    o.incoming.push_back(std::move(lvl));
  }
  return o;
}

Word gathered_edge_path(const MatrixSequence& seq, std::size_t from_time, std::size_t to_time,
                        std::uint32_t src, std::uint32_t tgt, const BigInt& idx) {
  // completions[l]: column tgt of N_l ... N_{to-1}
  std::size_t len = to_time - from_time;
  std::vector<std::vector<BigInt>> completions(len + 1);
  completions[len].assign(seq.alphabet(to_time).size(), 0);
  completions[len][tgt] = 1;
  for (std::size_t l = len; l-- > 0;) {
    const GenMatrix& m = seq[from_time + l];
    completions[l].assign(m.nrows(), 0);
    for (std::size_t a = 0; a < m.nrows(); ++a)
      for (std::size_t b = 0; b < m.ncols(); ++b) completions[l][a] += m(a, b) * completions[l + 1][b];
  }
  if (idx >= completions[0][src]) fail(ErrorKind::MalformedWord, "gathered edge index out of range");
  Word w;
  BigInt rest = idx;
  std::uint32_t v = src;
  for (std::size_t l = 0; l < len; ++l) {
    const GenMatrix& m = seq[from_time + l];
    bool placed = false;
    for (std::uint32_t b = 0; b < m.ncols() && !placed; ++b) {
      const BigInt& c = completions[l + 1][b];
      if (c == 0) continue;
      for (std::uint32_t i = 0; BigInt(i) < m(v, b); ++i) {
        if (rest < c) {
          w.push_back({v, b, i});
          v = b;
          placed = true;
          break;
        }
        rest -= c;
      }
    }
    if (!placed) fail(ErrorKind::Internal, "gathered path lookup lost its way");
  }
  return w;
}

std::string word_string(const BratteliDiagram& d, std::size_t start, const Word& w) {
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << d.edge_name(start + i, w[i]);
  return os.str();
}

Word parse_word(const BratteliDiagram& d, std::size_t start, const std::string& text) {
  Word w;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    w.push_back(d.parse_edge(start + w.size(), item));
  }
  check_word(d, start, w);
  return w;
}

}  // namespace adic
