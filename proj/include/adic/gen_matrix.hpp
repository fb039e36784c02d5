#pragma once

#include "adic/alphabet.hpp"
#include "adic/numeric.hpp"

#include <initializer_list>
#include <string>
#include <vector>

namespace adic {

// Nonnegative integer matrix indexed by two alphabets.
class GenMatrix {
 public:
  GenMatrix() = default;
  GenMatrix(Alphabet rows, Alphabet cols);  // zero matrix
  GenMatrix(Alphabet rows, Alphabet cols, const std::vector<std::vector<BigInt>>& entries);

  // numbered labels "0","1",... on both sides
  static GenMatrix of(std::initializer_list<std::initializer_list<long>> rows);
  static GenMatrix of(const std::vector<std::vector<long>>& rows);
  static GenMatrix identity(const Alphabet& a);

  const Alphabet& rows() const { return rows_; }
  const Alphabet& cols() const { return cols_; }
  std::size_t nrows() const { return rows_.size(); }
  std::size_t ncols() const { return cols_.size(); }
  bool is_virtual() const { return rows_.is_virtual() || cols_.is_virtual(); }

  const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * ncols() + j]; }
  BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * ncols() + j]; }
  BigInt get(std::string_view row, std::string_view col) const;  // 0 for labels outside

  bool is_zero() const;
  bool is_positive() const;
  bool row_is_zero(std::size_t i) const;
  bool col_is_zero(std::size_t j) const;
  BigInt entry_sum() const;
  bool is_square_same() const { return rows_.same_set(cols_); }

  // Reindex onto alphabets containing rows()/cols(); new labels get zeros.
  GenMatrix aligned(const Alphabet& rows, const Alphabet& cols) const;
  GenMatrix restricted(const Alphabet& rows, const Alphabet& cols) const;
  GenMatrix transposed() const;

  std::vector<std::vector<BigInt>> to_rows() const;
  std::string to_string() const;  // "[[1,1],[0,3]]" in display order

 private:
  Alphabet rows_, cols_;
  std::vector<BigInt> data_;
};

// semantic equality: same label sets, same entries by label
bool operator==(const GenMatrix& a, const GenMatrix& b);
inline bool operator!=(const GenMatrix& a, const GenMatrix& b) { return !(a == b); }

GenMatrix matmul(const GenMatrix& a, const GenMatrix& b);
GenMatrix add(const GenMatrix& a, const GenMatrix& b);
GenMatrix subtract(const GenMatrix& a, const GenMatrix& b);  // throws on a negative entry
GenMatrix scaled(const GenMatrix& a, const BigInt& s);
RVector apply(const GenMatrix& m, const RVector& v);        // m * v, v indexed by cols()
RVector apply_left(const RVector& v, const GenMatrix& m);   // v^T * m
// entrywise a <= b over a's labels, with a's labels inside b's
bool entrywise_leq(const GenMatrix& a, const GenMatrix& b);

// 0/1 pattern with boolean arithmetic, used where only positivity matters
struct BoolMatrix {
  std::size_t r = 0, c = 0;
  std::vector<unsigned char> v;

  BoolMatrix() = default;
  BoolMatrix(std::size_t rows, std::size_t cols) : r(rows), c(cols), v(rows * cols, 0) {}
  static BoolMatrix of(const GenMatrix& m);
  static BoolMatrix identity(std::size_t n);
  bool operator()(std::size_t i, std::size_t j) const { return v[i * c + j] != 0; }
  void set(std::size_t i, std::size_t j, bool b = true) { v[i * c + j] = b ? 1 : 0; }
  bool all() const;
  bool operator==(const BoolMatrix& o) const { return r == o.r && c == o.c && v == o.v; }
  bool operator<(const BoolMatrix& o) const { return v < o.v; }
};

BoolMatrix bmul(const BoolMatrix& a, const BoolMatrix& b);

}  // namespace adic
