#pragma once

#include <cstddef>
#include <vector>

namespace adic {

using Adjacency = std::vector<std::vector<std::size_t>>;

struct SccResult {
  std::vector<std::size_t> component;  // node -> component id
  std::size_t count = 0;
  std::vector<bool> nontrivial;        // has an internal cycle
};

// Tarjan, iterative
SccResult strongly_connected(const Adjacency& adj);

// gcd of cycle lengths inside the component (0 for trivial components)
std::size_t component_period(const Adjacency& adj, const SccResult& scc, std::size_t comp);

// reach[i] = nodes reachable from i by a path of length >= 1
std::vector<std::vector<bool>> transitive_reach(const Adjacency& adj);

}  // namespace adic
