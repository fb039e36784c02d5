#pragma once

#include "adic/diagram.hpp"
#include "adic/measures.hpp"
#include "adic/polynomial.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace adic {

// What a built-in example is expected to classify as.
struct Expected {
  std::optional<std::size_t> finite, infinite;  // classify_measures counts
  std::optional<std::size_t> atomic;
  std::optional<Finiteness> tower;              // for nested pairs
  std::string note;
};

struct ExampleSpec {
  std::string name;
  std::map<std::string, ScalarSeq> parameters;
  BratteliDiagram diagram;  // the ambient one for nested pairs
  std::optional<MatrixSequence> base;
  Embedding embedding;
  std::map<std::string, std::string> edge_names;  // "a" -> "1>1#0" at every level
  Expected expected;
};

BratteliDiagram odometer(const ScalarSeq& n);
ExampleSpec chacon();
enum class IcsModel { Triadic, Cover };
ExampleSpec ics(IcsModel model);

// base b inside ambient a, both odometers; b_k <= a_k
ExampleSpec nested_odometer(const ScalarSeq& base, const ScalarSeq& ambient);
// the construction n_k = ceil(e^{b_k}) with b_k = 2^{-k}: ambient [n_k],
// base [n_k - 1]
ExampleSpec nested_odometer_exponential();

// [n_i; n_{i+1}, ...] between its k-th and (k+1)-th convergents
struct CfEnclosure {
  Interval box;
  BigInt qk, qk1;  // denominators of the two convergents
};
CfEnclosure cf_enclosure(const ScalarSeq& n, std::size_t i, std::size_t k);

struct RotationVerdict {
  Finiteness verdict = Finiteness::Undecided;
  std::size_t period_start = 0, period = 0;
  Interval ratio{0, 0};      // prod over one period of lambda-hat_i / lambda_i
  bool ratio_exact = false;  // identical tails
  std::size_t convergent_index = 0;
  std::vector<Interval> lambda, lambda_hat;  // i = 0 .. period_start + period - 1
  std::string witness;
};

struct NestedRotation {
  MatrixSequence base, ambient;
  BratteliDiagram base_diagram, ambient_diagram;
  RotationVerdict verdict;
};

MatrixSequence rotation_sequence(const ScalarSeq& n);
BratteliDiagram rotation_diagram(const ScalarSeq& n);
NestedRotation nested_rotation(const ScalarSeq& n, const ScalarSeq& nhat, std::size_t max_convergent = 200);

// The seven listed matrices: a prefix of five and a cycle of two.
MatrixSequence frobenius_seven();

std::vector<std::string> example_names();
// params: integer sequences given as "p0,p1|c0,c1" (prefix | cycle)
ExampleSpec example(const std::string& name, const std::map<std::string, std::string>& params = {});
ScalarSeq parse_scalar_seq(const std::string& text);
std::string scalar_seq_string(const ScalarSeq& s);

}  // namespace adic
