#pragma once

#include "adic/frobenius.hpp"
#include "adic/spectral.hpp"

#include <optional>
#include <vector>

namespace adic {

// Delta^(k,n): the image of the standard simplex of A_{n+1} under N_k ... N_n.
struct SimplexApprox {
  std::size_t level = 0, depth = 0;
  std::vector<RVector> extreme_points;  // coordinate sum one, sorted
  std::vector<std::uint32_t> columns;   // generating column in A_{depth+1}
  Rational diameter;                    // L1
};

SimplexApprox simplex_image(const MatrixSequence& seq, std::size_t k, std::size_t n);

struct ExtremeCount {
  std::size_t depth = 0;
  std::size_t count = 0;         // extreme points of Delta^(0,depth)
  std::size_t liminf_bound = 0;  // liminf |A_n|
  std::optional<std::size_t> exact;  // ergodic count, eventually periodic input
};
ExtremeCount extreme_count(const MatrixSequence& seq, std::size_t depth);

// w_0 ... w_depth with w_i = N_i w_{i+1}
struct EigvecSeqApprox {
  std::size_t start = 0;
  std::size_t depth = 0;
  std::vector<RVector> w;
  bool horizon_limited = false;
  std::optional<std::size_t> stream;  // stream of the generating column
};

std::vector<EigvecSeqApprox> eigvec_sequences(const MatrixSequence& seq, std::size_t depth);

// stream k is self-distinguished when its Perron root beats every primitive
// stream that reaches it in the tail
struct StreamSpectrum {
  std::vector<PerronRoot> lambda;
  std::vector<bool> distinguished;
  std::vector<std::vector<int>> versus;  // sign of lambda_k - lambda_j for j reaching k, else 2
};
StreamSpectrum stream_spectrum(const StreamDecomposition& dec);

// exact check of w_i = N_i w_{i+1}
bool eigen_relation_holds(const MatrixSequence& seq, const EigvecSeqApprox& w);

}  // namespace adic
