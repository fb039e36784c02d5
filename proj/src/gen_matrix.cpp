#include "adic/gen_matrix.hpp"

#include "adic/errors.hpp"

#include <algorithm>
#include <sstream>

namespace adic {

GenMatrix::GenMatrix(Alphabet rows, Alphabet cols)
    : rows_(std::move(rows)), cols_(std::move(cols)), data_(rows_.size() * cols_.size()) {}

GenMatrix::GenMatrix(Alphabet rows, Alphabet cols, const std::vector<std::vector<BigInt>>& entries)
    : GenMatrix(std::move(rows), std::move(cols)) {
  if (entries.size() != nrows()) fail(ErrorKind::ShapeMismatch, "row count does not match alphabet");
  for (std::size_t i = 0; i < nrows(); ++i) {
    if (entries[i].size() != ncols()) fail(ErrorKind::ShapeMismatch, "column count does not match alphabet");
    for (std::size_t j = 0; j < ncols(); ++j) {
      if (entries[i][j] < 0) fail(ErrorKind::InvalidInput, "negative entry");
      (*this)(i, j) = entries[i][j];
    }
  }
}

GenMatrix GenMatrix::of(const std::vector<std::vector<long>>& rows) {
  std::size_t nc = rows.empty() ? 0 : rows.front().size();
  std::vector<std::vector<BigInt>> e;
  for (const auto& r : rows) {
    if (r.size() != nc) fail(ErrorKind::ShapeMismatch, "ragged matrix literal");
    e.emplace_back(r.begin(), r.end());
  }
  return GenMatrix(Alphabet::numbered(rows.size()), Alphabet::numbered(nc), e);
}

GenMatrix GenMatrix::of(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<std::vector<long>> v;
  for (const auto& r : rows) v.emplace_back(r);
  return of(v);
}

GenMatrix GenMatrix::identity(const Alphabet& a) {
  GenMatrix m(a, a);
  for (std::size_t i = 0; i < a.size(); ++i) m(i, i) = 1;
  return m;
}

BigInt GenMatrix::get(std::string_view row, std::string_view col) const {
  auto i = rows_.find(row);
  auto j = cols_.find(col);
  if (!i || !j) return 0;
  return (*this)(*i, *j);
}

bool GenMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const BigInt& x) { return x == 0; });
}

bool GenMatrix::is_positive() const {
  return !data_.empty() && std::all_of(data_.begin(), data_.end(), [](const BigInt& x) { return x > 0; });
}

bool GenMatrix::row_is_zero(std::size_t i) const {
  for (std::size_t j = 0; j < ncols(); ++j)
    if ((*this)(i, j) != 0) return false;
  return true;
}

bool GenMatrix::col_is_zero(std::size_t j) const {
  for (std::size_t i = 0; i < nrows(); ++i)
    if ((*this)(i, j) != 0) return false;
  return true;
}

BigInt GenMatrix::entry_sum() const {
  BigInt s = 0;
  for (const auto& x : data_) s += x;
  return s;
}

GenMatrix GenMatrix::aligned(const Alphabet& rows, const Alphabet& cols) const {
  if (!rows_.subset_of(rows) || !cols_.subset_of(cols))
    fail(ErrorKind::IncompatibleAlphabets, "alignment target misses symbols");
  GenMatrix out(rows, cols);
  auto ri = rows_.positions_in(rows);
  auto ci = cols_.positions_in(cols);
  for (std::size_t i = 0; i < nrows(); ++i)
    for (std::size_t j = 0; j < ncols(); ++j) out(ri[i], ci[j]) = (*this)(i, j);
  return out;
}

GenMatrix GenMatrix::restricted(const Alphabet& rows, const Alphabet& cols) const {
  GenMatrix out(rows, cols);
  auto ri = rows.positions_in(rows_);
  auto ci = cols.positions_in(cols_);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = (*this)(ri[i], ci[j]);
  return out;
}

GenMatrix GenMatrix::transposed() const {
  GenMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < nrows(); ++i)
    for (std::size_t j = 0; j < ncols(); ++j) out(j, i) = (*this)(i, j);
  return out;
}

std::vector<std::vector<BigInt>> GenMatrix::to_rows() const {
  std::vector<std::vector<BigInt>> out(nrows(), std::vector<BigInt>(ncols()));
  for (std::size_t i = 0; i < nrows(); ++i)
    for (std::size_t j = 0; j < ncols(); ++j) out[i][j] = (*this)(i, j);
  return out;
}

std::string GenMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < nrows(); ++i) {
    if (i) os << ',';
    os << '[';
    for (std::size_t j = 0; j < ncols(); ++j) os << (j ? "," : "") << (*this)(i, j).get_str();
    os << ']';
  }
  os << ']';
  return os.str();
}

bool operator==(const GenMatrix& a, const GenMatrix& b) {
  if (!a.rows().same_set(b.rows()) || !a.cols().same_set(b.cols())) return false;
  auto ri = a.rows().positions_in(b.rows());
  auto ci = a.cols().positions_in(b.cols());
  for (std::size_t i = 0; i < a.nrows(); ++i)
    for (std::size_t j = 0; j < a.ncols(); ++j)
      if (a(i, j) != b(ri[i], ci[j])) return false;
  return true;
}

GenMatrix matmul(const GenMatrix& a, const GenMatrix& b) {
  if (!a.cols().same_set(b.rows()))
    fail(ErrorKind::IncompatibleAlphabets, "cols(a) differs from rows(b)");
  GenMatrix out(a.rows(), b.cols());
  auto k_in_b = a.cols().positions_in(b.rows());
  for (std::size_t i = 0; i < a.nrows(); ++i)
    for (std::size_t k = 0; k < a.ncols(); ++k) {
      const BigInt& x = a(i, k);
      if (x == 0) continue;
      std::size_t kb = k_in_b[k];
      for (std::size_t j = 0; j < b.ncols(); ++j)
        if (b(kb, j) != 0) out(i, j) += x * b(kb, j);
    }
  return out;
}

namespace {
GenMatrix combine(const GenMatrix& a, const GenMatrix& b, int sign) {
  if (!a.rows().same_set(b.rows()) || !a.cols().same_set(b.cols()))
    fail(ErrorKind::IncompatibleAlphabets, "entrywise operation on different alphabets");
  GenMatrix out = a;
  auto ri = a.rows().positions_in(b.rows());
  auto ci = a.cols().positions_in(b.cols());
  for (std::size_t i = 0; i < a.nrows(); ++i)
    for (std::size_t j = 0; j < a.ncols(); ++j) {
      if (sign > 0) out(i, j) += b(ri[i], ci[j]);
      else out(i, j) -= b(ri[i], ci[j]);
      if (out(i, j) < 0) fail(ErrorKind::NotNested, "difference has a negative entry");
    }
  return out;
}
}  // namespace

GenMatrix add(const GenMatrix& a, const GenMatrix& b) { return combine(a, b, 1); }
GenMatrix subtract(const GenMatrix& a, const GenMatrix& b) { return combine(a, b, -1); }

GenMatrix scaled(const GenMatrix& a, const BigInt& s) {
  GenMatrix out = a;
  for (std::size_t i = 0; i < a.nrows(); ++i)
    for (std::size_t j = 0; j < a.ncols(); ++j) out(i, j) *= s;
  return out;
}

RVector apply(const GenMatrix& m, const RVector& v) {
  if (v.size() != m.ncols()) fail(ErrorKind::ShapeMismatch, "vector length differs from column count");
  RVector out(m.nrows(), Rational(0));
  for (std::size_t i = 0; i < m.nrows(); ++i)
    for (std::size_t j = 0; j < m.ncols(); ++j)
      if (m(i, j) != 0 && v[j] != 0) out[i] += Rational(m(i, j)) * v[j];
  return out;
}

RVector apply_left(const RVector& v, const GenMatrix& m) {
  if (v.size() != m.nrows()) fail(ErrorKind::ShapeMismatch, "vector length differs from row count");
  RVector out(m.ncols(), Rational(0));
  for (std::size_t i = 0; i < m.nrows(); ++i)
    for (std::size_t j = 0; j < m.ncols(); ++j)
      if (m(i, j) != 0 && v[i] != 0) out[j] += Rational(m(i, j)) * v[i];
  return out;
}

bool entrywise_leq(const GenMatrix& a, const GenMatrix& b) {
  if (!a.rows().subset_of(b.rows()) || !a.cols().subset_of(b.cols())) return false;
  auto ri = a.rows().positions_in(b.rows());
  auto ci = a.cols().positions_in(b.cols());
  for (std::size_t i = 0; i < a.nrows(); ++i)
    for (std::size_t j = 0; j < a.ncols(); ++j)
      if (a(i, j) > b(ri[i], ci[j])) return false;
  return true;
}

BoolMatrix BoolMatrix::of(const GenMatrix& m) {
  BoolMatrix b(m.nrows(), m.ncols());
  for (std::size_t i = 0; i < m.nrows(); ++i)
    for (std::size_t j = 0; j < m.ncols(); ++j) b.set(i, j, m(i, j) != 0);
  return b;
}

BoolMatrix BoolMatrix::identity(std::size_t n) {
  BoolMatrix b(n, n);
  for (std::size_t i = 0; i < n; ++i) b.set(i, i);
  return b;
}

bool BoolMatrix::all() const {
  return !v.empty() && std::all_of(v.begin(), v.end(), [](unsigned char x) { return x != 0; });
}

BoolMatrix bmul(const BoolMatrix& a, const BoolMatrix& b) {
  BoolMatrix out(a.r, b.c);
  for (std::size_t i = 0; i < a.r; ++i)
    for (std::size_t k = 0; k < a.c; ++k)
      if (a(i, k))
        for (std::size_t j = 0; j < b.c; ++j)
          if (b(k, j)) out.set(i, j);
  return out;
}

}  // namespace adic
