#include "adic/graph.hpp"

#include <numeric>
#include <queue>

namespace adic {

SccResult strongly_connected(const Adjacency& adj) {
  const std::size_t n = adj.size();
  const std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, none), low(n, 0), stack;
  std::vector<bool> on(n, false);
  SccResult r;
  r.component.assign(n, none);
  std::size_t counter = 0;
  struct Frame {
    std::size_t v, next;
  };
  for (std::size_t s = 0; s < n; ++s) {
    if (index[s] != none) continue;
    std::vector<Frame> call{{s, 0}};
    index[s] = low[s] = counter++;
    stack.push_back(s);
    on[s] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.next < adj[f.v].size()) {
        std::size_t w = adj[f.v][f.next++];
        if (index[w] == none) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on[w] = true;
          call.push_back({w, 0});
        } else if (on[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      std::size_t v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on[w] = false;
          r.component[w] = r.count;
        } while (w != v);
        ++r.count;
      }
    }
  }
  r.nontrivial.assign(r.count, false);
  for (std::size_t v = 0; v < n; ++v)
    for (auto w : adj[v])
      if (r.component[v] == r.component[w]) r.nontrivial[r.component[v]] = true;
  return r;
}

std::size_t component_period(const Adjacency& adj, const SccResult& scc, std::size_t comp) {
  if (!scc.nontrivial[comp]) return 0;
  const std::size_t n = adj.size();
  std::vector<long> depth(n, -1);
  std::size_t root = 0;
  while (scc.component[root] != comp) ++root;
  std::queue<std::size_t> q;
  depth[root] = 0;
  q.push(root);
  std::size_t g = 0;
  while (!q.empty()) {
    std::size_t v = q.front();
    q.pop();
    for (auto w : adj[v]) {
      if (scc.component[w] != comp) continue;
      if (depth[w] < 0) {
        depth[w] = depth[v] + 1;
        q.push(w);
      } else {
        long d = depth[v] + 1 - depth[w];
        g = std::gcd(g, static_cast<std::size_t>(d < 0 ? -d : d));
      }
    }
  }
  return g;
}

std::vector<std::vector<bool>> transitive_reach(const Adjacency& adj) {
  const std::size_t n = adj.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<std::size_t> todo(adj[s].begin(), adj[s].end());
    while (!todo.empty()) {
      std::size_t v = todo.back();
      todo.pop_back();
      if (reach[s][v]) continue;
      reach[s][v] = true;
      for (auto w : adj[v])
        if (!reach[s][w]) todo.push_back(w);
    }
  }
  return reach;
}

}  // namespace adic
