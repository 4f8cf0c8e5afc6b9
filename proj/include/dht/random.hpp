#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "dht/graph.hpp"

namespace dht {

// Helpers on mt19937_64 whose results do not depend on the standard
// library's distribution implementations.
inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) { return rng() % n; }

inline double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
}

template <class T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t k = v.size(); k > 1; --k) std::swap(v[k - 1], v[uniform_index(rng, k)]);
}

// Erdos-Renyi graph: each pair is an edge with probability p.
inline graph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::vector<edge_t> e;
  for (vertex_t u = 0; u < n; ++u)
    for (vertex_t v = u + 1; v < n; ++v)
      if (uniform_unit(rng) < p) e.emplace_back(u, v);
  return graph(n, e);
}

}  // namespace dht
