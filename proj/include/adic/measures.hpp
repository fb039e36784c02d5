#pragma once

#include "adic/cones.hpp"
#include "adic/diagram.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace adic {

// A cylinder value: exact (degenerate box), enclosed, or infinite.
struct MeasureValue {
  bool infinite = false;
  Interval box{0, 0};
  static MeasureValue exact(const Rational& q) { return {false, {q, q}}; }
  static MeasureValue inf() { return {true, {0, 0}}; }
  bool is_exact() const { return !infinite && box.lo == box.hi; }
  std::string to_string() const;  // "p/q", "Infinite", or "[lo, hi]"
};

struct CentralMeasure {
  std::size_t start = 0;  // component start level
  std::vector<std::vector<MeasureValue>> levels;  // levels[i] is w_{start+i}
  std::size_t depth() const { return levels.empty() ? 0 : levels.size() - 1; }
};

CentralMeasure central_measure(const EigvecSeqApprox& w);
// (w_n)_s for the final vertex s of the word; DepthExceeded past the data
MeasureValue measure_of_cylinder(const CentralMeasure& mu, const BratteliDiagram& d, const Cylinder& cyl);

// Which ambient edges the subdiagram's edges are. Keyed by the base
// representation level and (source, target) labels; absent pairs use the
// first indices.
struct Embedding {
  std::vector<std::map<std::pair<std::string, std::string>, std::vector<std::uint32_t>>> levels;
  std::uint32_t ambient_index(const MatrixSequence& base, std::size_t level, const std::string& a,
                              const std::string& b, std::uint32_t idx) const;
};

struct CanonicalCover {
  MatrixSequence base;     // M on the ambient alphabets
  MatrixSequence ambient;  // M-hat, same representation as base
  MatrixSequence cover;    // [[M-hat, C], [0, M]], primed copy first
  std::optional<StableOrder> order;  // lifted from an ordered ambient
  static std::string primed(const std::string& label) { return label + "'"; }
};

CanonicalCover canonical_cover(const MatrixSequence& m, const MatrixSequence& mhat);
CanonicalCover canonical_cover(const MatrixSequence& m, const BratteliDiagram& ambient, const Embedding& emb);

// both sequences on one representation: same prefix and cycle lengths, or
// truncated to the shorter horizon
std::pair<MatrixSequence, MatrixSequence> common_representation(const MatrixSequence& a, const MatrixSequence& b);

// C-hat_i^n, the upper right block of the partial product of [[A, C], [0, B]]
GenMatrix chat_block(const MatrixSequence& a, const MatrixSequence& b, const MatrixSequence& c, std::size_t i,
                     std::size_t n);

struct DistVerdict {
  Decision decision = Decision::Undecided;  // Yes: distinguished
  std::optional<std::size_t> horizon;
  std::string witness;
  // iota prefix at the deepest step: v_i = M-hat_i^n e(w_{n+1}), i = 0..n+1
  std::vector<RVector> iota_prefix;
  std::vector<Rational> partial_norms;  // ||M-hat_0^n e(w_{n+1})||, n = 0..
  std::optional<std::size_t> exceeded_at;  // first n with norm > bound
  // spectral certificate: the block's period matrix and the upstream ones
  std::optional<GenMatrix> block;
  std::vector<GenMatrix> upstream;
};

struct DistOptions {
  Rational bound = Rational(BigInt("1000000000000000000"));
};

DistVerdict is_distinguished(const EigvecSeqApprox& w, const MatrixSequence& m, const MatrixSequence& mhat,
                             const DistOptions& opt = {});
// recompute the certificate: eigen-relation and monotonicity of the prefix,
// and the Perron comparisons behind a Yes/No
bool verify(const DistVerdict& v, const MatrixSequence& mhat);

// Eventually periodic positive integer data
struct ScalarSeq {
  std::vector<BigInt> prefix, cycle;
  static ScalarSeq constant(long v) { return {{}, {BigInt(v)}}; }
  const BigInt& operator[](std::size_t i) const;
};

struct SeriesResult {
  std::vector<Rational> partial;    // S_0 .. S_n, S_k = sum of terms 0..k
  Decision converges = Decision::Undecided;
  Rational period_ratio;            // prod a / prod b over one common period
  std::optional<Rational> limit;
};

// terms (a_0 ... a_{k-1}) / (b_0 ... b_{k-1}) * c_k / a_k
SeriesResult two_by_two_series(const ScalarSeq& a, const ScalarSeq& b, const ScalarSeq& c, std::size_t n);

enum class Finiteness { Finite, Infinite, Undecided };
const char* finiteness_name(Finiteness f);

struct MeasureRecord {
  std::optional<std::size_t> stream;
  PerronRoot lambda;
  std::size_t ray_level = 0;
  EigenRay ray;  // coordinate sum one over the alphabet at ray_level
  Finiteness verdict = Finiteness::Undecided;
  std::optional<std::size_t> horizon;
  bool atomic = false;
  std::size_t atom_level = 0;
  Word atom_cycle;  // one period of the unique path, from atom_level
  std::vector<std::string> infinite_at_zero;  // level 0 labels of infinite mass
  std::string witness;
  // unnormalised values at the decomposition's valid_from level
  std::vector<MeasureValue> tail_values;
};

struct Classification {
  MatrixSequence seq;
  std::optional<StreamDecomposition> decomposition;
  std::vector<MeasureRecord> records;
  bool provisional = false;
  std::size_t finite_count() const;
};

struct ClassifyOptions {
  std::size_t depth = 64;
  Rational eps = Rational(1, BigInt("1000000000000000000000000000000"));
};

Classification classify_measures(const MatrixSequence& seq, const ClassifyOptions& opt = {});
// per level values of a record's measure, levels 0..depth
CentralMeasure record_measure(const Classification& c, std::size_t record, std::size_t depth);

struct TowerRecord {
  std::size_t base_stream = 0;
  EigenRay base_ray;  // at level 0 of the base
  Finiteness verdict = Finiteness::Undecided;
  std::optional<std::size_t> horizon;
  std::string witness;
  std::vector<Rational> partial_norms;
};

struct TowerReport {
  std::vector<TowerRecord> records;
};

TowerReport classify_subdiagram(const MatrixSequence& m, const MatrixSequence& mhat, const ClassifyOptions& opt = {});

// lambda^{-n} v_{x_0} w_{x_n} with v, w left and right Perron vectors, v.w = 1
Interval parry_measure_stationary(const GenMatrix& m, const std::vector<std::uint32_t>& vertices,
                                  const Rational& eps = Rational(1, BigInt("1000000000000")));

}  // namespace adic
