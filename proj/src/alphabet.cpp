#include "adic/alphabet.hpp"

#include "adic/errors.hpp"
#include "adic/numeric.hpp"
#include "adic/verdict.hpp"

#include <algorithm>
#include <numeric>

namespace adic {

const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::IncompatibleAlphabets: return "IncompatibleAlphabets";
    case ErrorKind::HorizonExceeded: return "HorizonExceeded";
    case ErrorKind::NotReduced: return "NotReduced";
    case ErrorKind::MalformedWord: return "MalformedWord";
    case ErrorKind::InsufficientPrefix: return "InsufficientPrefix";
    case ErrorKind::AbelianizationMismatch: return "AbelianizationMismatch";
    case ErrorKind::EmptyEdgeAlphabet: return "EmptyEdgeAlphabet";
    case ErrorKind::NotPrimitive: return "NotPrimitive";
    case ErrorKind::EmptyCone: return "EmptyCone";
    case ErrorKind::NotNested: return "NotNested";
    case ErrorKind::NotEigenvector: return "NotEigenvector";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NoFiniteBaseMeasure: return "NoFiniteBaseMeasure";
    case ErrorKind::NonPositiveEntry: return "NonPositiveEntry";
    case ErrorKind::NotIrreducible: return "NotIrreducible";
    case ErrorKind::DepthExceeded: return "DepthExceeded";
    case ErrorKind::NoSuccessor: return "NoSuccessor";
    case ErrorKind::NoPredecessor: return "NoPredecessor";
    case ErrorKind::UndeterminedTail: return "UndeterminedTail";
    case ErrorKind::NotInBase: return "NotInBase";
    case ErrorKind::Undecided: return "Undecided";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

const char* decision_name(Decision d) {
  switch (d) {
    case Decision::Yes: return "Yes";
    case Decision::No: return "No";
    case Decision::Undecided: return "Undecided";
  }
  return "?";
}

std::string fraction_string(const Rational& q) { return q.get_str(); }

Rational parse_fraction(std::string_view text) {
  Rational q;
  std::string s(text);
  if (s.empty() || q.set_str(s, 10) != 0) fail(ErrorKind::InvalidInput, "bad fraction '" + s + "'");
  if (q.get_den() == 0) fail(ErrorKind::InvalidInput, "zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

Rational l1_norm(const RVector& v) {
  Rational s = 0;
  for (const auto& x : v) s += abs(x);
  return s;
}

RVector normalized(const RVector& v) {
  Rational s = l1_norm(v);
  if (s == 0) fail(ErrorKind::Internal, "normalizing the zero vector");
  RVector out(v);
  for (auto& x : out) x /= s;
  return out;
}

bool is_zero(const RVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

BigInt pow_int(const BigInt& base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

BigInt lcm_int(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

std::size_t gcd_size(std::size_t a, std::size_t b) { return std::gcd(a, b); }
std::size_t lcm_size(std::size_t a, std::size_t b) { return std::lcm(a, b); }

Alphabet::Alphabet(std::vector<std::string> labels) {
  if (labels.empty()) return;
  auto d = std::make_shared<Data>();
  d->labels = std::move(labels);
  for (std::size_t i = 0; i < d->labels.size(); ++i) {
    if (!d->index.emplace(d->labels[i], i).second)
      fail(ErrorKind::InvalidInput, "duplicate symbol '" + d->labels[i] + "'");
  }
  data_ = std::move(d);
}

Alphabet Alphabet::numbered(std::size_t n) {
  std::vector<std::string> l;
  for (std::size_t i = 0; i < n; ++i) l.push_back(std::to_string(i));
  return Alphabet(std::move(l));
}

const std::vector<std::string>& Alphabet::labels() const {
  static const std::vector<std::string> none;
  return data_ ? data_->labels : none;
}

std::optional<std::size_t> Alphabet::find(std::string_view label) const {
  if (!data_) return std::nullopt;
  auto it = data_->index.find(std::string(label));
  if (it == data_->index.end()) return std::nullopt;
  return it->second;
}

std::size_t Alphabet::index(std::string_view label) const {
  auto i = find(label);
  if (!i) fail(ErrorKind::InvalidInput, "unknown symbol '" + std::string(label) + "'");
  return *i;
}

bool Alphabet::same_set(const Alphabet& o) const {
  if (data_ == o.data_) return true;
  return size() == o.size() && subset_of(o);
}

bool Alphabet::subset_of(const Alphabet& o) const {
  for (const auto& l : labels())
    if (!o.contains(l)) return false;
  return true;
}

bool Alphabet::same_order(const Alphabet& o) const {
  if (data_ == o.data_) return true;
  return labels() == o.labels();
}

std::vector<std::size_t> Alphabet::positions_in(const Alphabet& other) const {
  std::vector<std::size_t> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = other.index(label(i));
  return out;
}

Alphabet Alphabet::subset(const std::vector<std::size_t>& indices) const {
  std::vector<std::string> l;
  l.reserve(indices.size());
  for (auto i : indices) l.push_back(label(i));
  return Alphabet(std::move(l));
}

Alphabet Alphabet::sorted() const {
  auto l = labels();
  std::sort(l.begin(), l.end());
  return Alphabet(std::move(l));
}

}  // namespace adic
