#pragma once

#include "adic/matrix_sequence.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace adic {

// An edge at a known level, by alphabet positions: src in A_k, tgt in A_{k+1},
// idx in 0..M_k(src,tgt)-1.
struct Edge {
  std::uint32_t src = 0, tgt = 0, idx = 0;
  auto operator<=>(const Edge&) const = default;
};

using Word = std::vector<Edge>;

// Per representation level and per target symbol, the incoming edges in order.
struct StableOrder {
  std::vector<std::vector<std::vector<Edge>>> incoming;
};

class BratteliDiagram {
 public:
  BratteliDiagram() = default;
  explicit BratteliDiagram(MatrixSequence seq);  // index order
  BratteliDiagram(MatrixSequence seq, StableOrder order);

  const MatrixSequence& seq() const { return seq_; }
  const StableOrder& order() const { return order_; }
  bool has_explicit_order() const { return explicit_order_; }

  const Alphabet& alphabet(std::size_t level) const { return seq_.alphabet(level); }
  const std::vector<Edge>& incoming(std::size_t level, std::uint32_t target) const;
  std::size_t rank(std::size_t level, const Edge& e) const;
  bool is_min(std::size_t level, const Edge& e) const { return rank(level, e) == 0; }
  bool is_max(std::size_t level, const Edge& e) const;
  Edge min_into(std::size_t level, std::uint32_t target) const;
  Edge max_into(std::size_t level, std::uint32_t target) const;
  bool valid(std::size_t level, const Edge& e) const;

  std::string edge_name(std::size_t level, const Edge& e) const;  // "a>b#i"
  Edge parse_edge(std::size_t level, const std::string& name) const;

 private:
  MatrixSequence seq_;
  StableOrder order_;
  bool explicit_order_ = false;
  // rank_[k][src*ncols+tgt][idx]
  std::vector<std::vector<std::vector<std::uint32_t>>> rank_;
  void build_ranks();
};

StableOrder index_order(const MatrixSequence& seq);

struct Cylinder {
  std::size_t start = 0;
  Word word;
};

// nullopt when the word cannot be continued infinitely to the right
std::optional<Cylinder> cylinder(const BratteliDiagram& d, std::size_t start, const Word& word);
// throws MalformedWord unless the word is made of valid, composing edges
void check_word(const BratteliDiagram& d, std::size_t start, const Word& word);

Rational word_metric(const BratteliDiagram& d, const Word& e, const Word& f, std::size_t start = 0);

// all composable words of `depth` edges from level `start`, lexicographic
std::vector<Word> enumerate_paths(const BratteliDiagram& d, std::size_t depth, std::size_t start = 0);

// substitutions[k]: for each target label b at level k+1, the word rho(b)
// over A_k; one entry per representation level
using Substitution = std::map<std::string, std::vector<std::string>>;
StableOrder substitution_order(const MatrixSequence& seq, const std::vector<Substitution>& subs);

// The idx-th (lexicographic) original path behind an edge of the gathering at
// the given times.
Word gathered_edge_path(const MatrixSequence& seq, std::size_t from_time, std::size_t to_time,
                        std::uint32_t src, std::uint32_t tgt, const BigInt& idx);

std::string word_string(const BratteliDiagram& d, std::size_t start, const Word& w);
Word parse_word(const BratteliDiagram& d, std::size_t start, const std::string& text);

}  // namespace adic
