#pragma once

#include "adic/diagram.hpp"
#include "adic/measures.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace adic {

// Periodic: the cycle repeats after the prefix. MinTail / MaxTail: the same,
// with every cycle edge minimal / maximal. Unknown: nothing is known past the
// prefix (truncated diagrams).
enum class TailRule { Periodic, MinTail, MaxTail, Unknown };

struct LazyPath {
  std::size_t start = 0;
  Word prefix;
  TailRule rule = TailRule::Unknown;
  Word cycle;

  // edge at level start + i
  const Edge& at(std::size_t i) const;
  bool known(std::size_t i) const { return i < prefix.size() || !cycle.empty(); }
  bool operator==(const LazyPath& o) const;
  std::string to_string(const BratteliDiagram& d) const;  // "e0,e1,...(c0,c1)"
};

// throws MalformedWord unless the path is allowed and its cycle is phase aligned
void check_path(const BratteliDiagram& d, const LazyPath& p);
LazyPath parse_path(const BratteliDiagram& d, const std::string& text, std::size_t start = 0);

// nullopt: the path is maximal (NoSuccessor) / minimal (NoPredecessor).
// UndeterminedTail when the known part is all maximal / minimal.
std::optional<LazyPath> successor(const BratteliDiagram& d, const LazyPath& p);
std::optional<LazyPath> predecessor(const BratteliDiagram& d, const LazyPath& p);

struct ExtremalPaths {
  std::vector<LazyPath> minimal, maximal;
};
ExtremalPaths extremal_paths(const BratteliDiagram& d);

// number of paths from level `start` that end with the given finite path and
// precede it in the anti-lexicographic order
BigInt path_rank(const BratteliDiagram& d, std::size_t start, const Word& w);

// The base as an ordered diagram: its edges carry the ambient order.
BratteliDiagram induced_diagram(const MatrixSequence& base, const BratteliDiagram& ambient, const Embedding& emb);
Word to_ambient(const MatrixSequence& base, const BratteliDiagram& ambient, const Embedding& emb,
                std::size_t start, const Word& w);

struct ReturnTime {
  enum class Kind { Finite, Infinite, Undecided } kind = Kind::Undecided;
  BigInt value;
  std::size_t change_level = 0;
  std::string to_string() const;
};
ReturnTime return_time(const BratteliDiagram& ambient, const MatrixSequence& base, const Embedding& emb,
                       const LazyPath& p);

struct OrbitStats {
  std::size_t steps = 0;
  bool stopped = false;  // hit a path without successor
  std::size_t cylinder_depth = 0;
  std::map<std::string, std::size_t> visits;  // by the first cylinder_depth edges
  std::map<std::size_t, std::size_t> return_histogram;
  LazyPath last;
};
OrbitStats simulate_orbit(const BratteliDiagram& d, const LazyPath& p, std::size_t steps, std::size_t cylinder_depth,
                          const std::function<bool(const LazyPath&)>& in_base = nullptr);

// sum over base cylinders of depth d of r * nu, with r the wrap-around return
// time among the ambient paths ending at the same vertex:
// sum_v (#ambient paths into v) * w_d(v)
Rational kac_partial_sum(const MatrixSequence& base, const MatrixSequence& ambient, const EigvecSeqApprox& w,
                         std::size_t depth);
// the same by listing every ambient path of the given depth
Rational kac_brute_force(const BratteliDiagram& ambient, const MatrixSequence& base, const Embedding& emb,
                         const EigvecSeqApprox& w, std::size_t depth);

}  // namespace adic
