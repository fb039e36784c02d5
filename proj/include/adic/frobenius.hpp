#pragma once

#include "adic/matrix_sequence.hpp"

#include <string>
#include <vector>

namespace adic {

enum class StreamKind { Primitive, Pool };

using LevelSets = std::vector<std::vector<std::uint32_t>>;  // per representation level, sorted

struct Stream {
  StreamKind kind = StreamKind::Primitive;
  std::size_t starting_time = 0;
  LevelSets members;
};

// A block at one level: a primitive stream (pool == false) or the pool
// substream P(index).
struct BlockRef {
  bool pool = false;
  std::size_t index = 0;
  bool operator==(const BlockRef&) const = default;
};

struct StreamDecomposition {
  // The sequence the level sets refer to. For periodic input this is the same
  // infinite sequence, possibly with a longer prefix and an unrolled cycle so
  // that every recurrent class is primitive over one cycle.
  MatrixSequence seq;
  std::size_t unroll = 1;
  bool provisional = false;  // Truncated input
  std::size_t valid_from = 0;
  std::vector<Stream> streams;
  Stream pool;
  // per representation level and vertex: primitive stream index, or -1 - i for P(i)
  std::vector<std::vector<long>> owner;
  std::vector<std::vector<BlockRef>> blocks;  // nonempty blocks per level, in order
  std::vector<GenMatrix> block_matrices;      // 0-1, one per representation level
  // tail relations among primitive streams (i reaches j, i != j)
  std::vector<std::vector<bool>> reaches;
  std::vector<bool> initial, final;

  long owner_at(std::size_t level, std::uint32_t v) const;
  const std::vector<std::uint32_t>& members_at(std::size_t stream, std::size_t level) const;
  std::vector<std::uint32_t> block_members(std::size_t level, const BlockRef& b) const;
};

bool communicates(const MatrixSequence& seq, std::uint32_t a, std::size_t k, std::uint32_t b, std::size_t n);

StreamDecomposition stream_decompose(const MatrixSequence& seq);

struct BlockSpan {
  BlockRef ref;
  std::size_t offset = 0, size = 0;
};

struct FrobeniusForm {
  StreamDecomposition decomposition;
  std::vector<std::size_t> head_times;  // gathering: head, then start + j*stride
  std::size_t start = 0, stride = 1;
  std::size_t pool_power = 1;
  MatrixSequence gathered;                   // rows/cols in permuted order
  std::vector<Alphabet> permutation;         // per gathered representation level
  std::vector<std::vector<BlockSpan>> spans;  // per gathered representation level
  std::vector<bool> initial, final;

  std::vector<std::size_t> times(std::size_t count) const;
};

FrobeniusForm frobenius_form(const MatrixSequence& seq);

struct MinimalComponent {
  std::size_t stream = 0;
  LevelSets augmented;
  std::string description;
};
std::vector<MinimalComponent> minimal_components(const MatrixSequence& seq);

struct StationaryBlock {
  std::size_t offset = 0, size = 0;
  bool primitive = false;  // otherwise identically zero
};

struct StationaryForm {
  std::vector<std::size_t> permutation;  // new position -> original index
  std::size_t power = 1;
  GenMatrix powered;                     // M^power, rows/cols in permuted order
  std::vector<StationaryBlock> blocks;
};

StationaryForm stationary_frobenius(const GenMatrix& m);

}  // namespace adic
