#pragma once

#include "adic/gen_matrix.hpp"
#include "adic/verdict.hpp"

#include <optional>
#include <string>
#include <vector>

namespace adic {

// A finitely represented sequence N_0, N_1, ... of composable generalized
// matrices: either eventually periodic (prefix then a repeating cycle) or
// known only up to a horizon.
class MatrixSequence {
 public:
  enum class Kind { EventuallyPeriodic, Truncated };

  MatrixSequence() = default;
  static MatrixSequence periodic(std::vector<GenMatrix> prefix, std::vector<GenMatrix> cycle);
  static MatrixSequence constant(GenMatrix m);
  static MatrixSequence truncated(std::vector<GenMatrix> terms);

  Kind kind() const { return kind_; }
  bool is_periodic() const { return kind_ == Kind::EventuallyPeriodic; }
  std::size_t prefix_length() const { return prefix_len_; }
  std::size_t cycle_length() const { return terms_.size() - prefix_len_; }
  // number of matrices for Truncated, nullopt for periodic
  std::optional<std::size_t> horizon() const;

  const GenMatrix& operator[](std::size_t i) const;
  const Alphabet& alphabet(std::size_t i) const;
  bool has_level(std::size_t i) const;  // matrix i exists
  std::size_t rep_index(std::size_t i) const;
  // prefix followed by one cycle, or the truncated terms
  const std::vector<GenMatrix>& terms() const { return terms_; }
  std::size_t rep_length() const { return terms_.size(); }

  MatrixSequence unrolled(std::size_t factor) const;
  // same infinite sequence with a longer prefix (periodic only)
  MatrixSequence with_prefix(std::size_t p) const;
  MatrixSequence truncated_to(std::size_t n) const;
  std::size_t max_alphabet_size() const;
  // liminf of |A_n|: exact for periodic, the minimum over the last cycle-free
  // stretch (the whole horizon) for Truncated
  std::size_t liminf_alphabet_size() const;

 private:
  Kind kind_ = Kind::Truncated;
  std::vector<GenMatrix> terms_;
  std::size_t prefix_len_ = 0;
  void check_composable() const;
};

// same infinite sequence (periodic) or same terms (truncated)
bool same_sequence(const MatrixSequence& a, const MatrixSequence& b);

// N_i N_{i+1} ... N_n  (inclusive)
GenMatrix partial_product(const MatrixSequence& seq, std::size_t i, std::size_t n);
// N_begin ... N_{end-1}; identity on A_begin when begin == end
GenMatrix product_range(const MatrixSequence& seq, std::size_t begin, std::size_t end);

Verdict submatrix_leq(const MatrixSequence& m, const MatrixSequence& mhat);

// Explicit times n_0 = 0 < n_1 < ...; the result is Truncated with
// times.size()-1 terms.
MatrixSequence gather(const MatrixSequence& seq, const std::vector<std::size_t>& times);
// Periodic rule: the listed head times (starting at 0, all < start) and then
// start, start+stride, start+2*stride, ...
MatrixSequence gather_periodic(const MatrixSequence& seq, const std::vector<std::size_t>& head,
                               std::size_t start, std::size_t stride);
// Times of a periodic rule listed up to `count` entries.
std::vector<std::size_t> periodic_times(const std::vector<std::size_t>& head, std::size_t start,
                                        std::size_t stride, std::size_t count);

struct ReduceResult {
  MatrixSequence seq;
  // erased labels per level, for levels 0 .. seq.rep_length()
  std::vector<std::vector<std::string>> removed;
  bool empty_path_space = false;
};
ReduceResult reduce(const MatrixSequence& seq);
bool is_reduced(const MatrixSequence& seq);
// vertices with an infinite forward path (to the horizon for Truncated), per
// representation level; Truncated includes the horizon level
std::vector<std::vector<bool>> forward_alive(const MatrixSequence& seq);

Verdict is_primitive(const MatrixSequence& seq);

struct StateSplit {
  std::vector<GenMatrix> a;  // A_k: A_k x E_k
  std::vector<GenMatrix> b;  // B_k: E_k x A_{k+1}
  MatrixSequence interleaved;  // A_0, B_0, A_1, B_1, ...
};
StateSplit state_split(const MatrixSequence& seq);

// canonical edge label "a>b#i"
std::string edge_label(const std::string& from, const std::string& to, std::size_t index);

}  // namespace adic
