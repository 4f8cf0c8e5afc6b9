#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dht/graph.hpp"

namespace dht {

using path_t = std::vector<vertex_t>;  // labels t = 0..k of a path of length k

// Labels indexed -L..L (stored 0..2L) with both ends at the basepoint.
struct based_loop {
  vertex_t basepoint = 0;
  int half_length = 0;
  path_t labels;

  bool operator==(const based_loop&) const = default;
};

// Throws invalid_argument unless labels form a based loop of odd length in g.
based_loop make_loop(const graph& g, vertex_t v, path_t labels);
based_loop constant_loop(vertex_t v, int half_length);
// Repeats the basepoint at both ends up to half-length L.
based_loop pad(const based_loop& p, int L);

// f then g, sharing the middle vertex: length(f) + length(g).
path_t concatenate(const path_t& f, const path_t& g);
based_loop concatenate(const based_loop& f, const based_loop& g);
path_t reverse(const path_t& f);

// Signed number of turns of a closed walk in C_m (vertices 0..m-1 in order).
long winding_number(std::span<const vertex_t> closed_walk, std::size_t m);

// All paths of length k from s to e (consecutive labels equal or adjacent),
// in lexicographic order. Paths are stored implicitly: rank <-> labels.
class path_space {
 public:
  path_space(const graph& g, vertex_t s, vertex_t e, int k, std::size_t budget = 10'000'000);

  const graph& base() const { return g_; }
  int length() const { return k_; }
  std::uint64_t size() const { return count_[0][s_]; }

  path_t unrank(std::uint64_t r) const;
  std::optional<std::uint64_t> rank(std::span<const vertex_t> p) const;

  // Calls visit(rank) for each path q != p pointwise equal or adjacent to p.
  // Subtrees whose rank interval [lo, hi) fails wanted(lo, hi) are skipped.
  template <class Wanted, class Visit>
  void for_each_neighbor(std::span<const vertex_t> p, Wanted&& wanted, Visit&& visit) const;

  std::vector<std::uint64_t> neighbors(std::uint64_t r) const;

 private:
  graph g_;
  vertex_t s_, e_;
  int k_;
  std::vector<std::vector<vertex_t>> closed_;
  std::vector<std::uint8_t> dense_;  // closed adjacency, n x n (small graphs only)
  // count_[t][x]: completions from label x at position t.
  std::vector<std::vector<std::uint64_t>> count_;
  // offset_[t][x][j]: completions through closed_[x][0..j) at position t.
  std::vector<std::vector<std::vector<std::uint64_t>>> offset_;

  bool close(vertex_t a, vertex_t b) const {
    if (!dense_.empty()) return dense_[a * g_.vertex_count() + b] != 0;
    return std::binary_search(closed_[a].begin(), closed_[a].end(), b);
  }
};

struct path_components {
  std::vector<std::uint32_t> component_of;  // numbered by smallest member rank
  std::size_t count = 0;
};
path_components components(const path_space& space);

class truncated_loop_graph {
 public:
  truncated_loop_graph(const graph& g, vertex_t v, int L, std::size_t budget);

  const path_space& space() const { return space_; }
  vertex_t basepoint() const { return v_; }
  int half_length() const { return L_; }
  std::size_t size() const { return space_.size(); }
  based_loop loop(std::uint64_t r) const;
  std::optional<std::uint64_t> find(const based_loop& p) const;

  const path_components& components() const { return comps_; }
  // Explicit graph on loop ranks; fails past the edge budget.
  graph as_graph(std::size_t edge_budget = 10'000'000) const;

 private:
  vertex_t v_;
  int L_;
  path_space space_;
  path_components comps_;
};

truncated_loop_graph loop_graph(const graph& g, vertex_t v, int L,
                                std::size_t budget = 10'000'000);

struct a1_row {
  int L;
  std::size_t components;
  bool stabilized;  // padding Omega_L -> Omega_{L+1} is a bijection on components
};
std::vector<a1_row> a1_estimate(const graph& g, vertex_t v, int L_max,
                                std::size_t budget = 10'000'000);

// Shortest chain of loops p = h_0, ..., h_k = q inside the window L, or nullopt.
// A nullopt only means "not homotopic within this window".
std::optional<std::vector<based_loop>> based_homotopic(const graph& g, const based_loop& p,
                                                       const based_loop& q, int L,
                                                       std::size_t budget = 10'000'000);

// Homotopy rel endpoints between two paths of equal length.
std::optional<std::vector<path_t>> path_homotopic(const graph& g, const path_t& p,
                                                  const path_t& q,
                                                  std::size_t budget = 10'000'000);

template <class Wanted, class Visit>
void path_space::for_each_neighbor(std::span<const vertex_t> p, Wanted&& wanted,
                                   Visit&& visit) const {
  std::vector<vertex_t> q(k_ + 1);
  q[0] = s_;
  auto rec = [&](auto&& self, int t, std::uint64_t base) -> void {
    if (t > k_) {
      if (!std::equal(q.begin(), q.end(), p.begin())) visit(base);
      return;
    }
    const auto& cand = closed_[q[t - 1]];
    const auto& off = offset_[t][q[t - 1]];
    for (std::size_t j = 0; j < cand.size(); ++j) {
      const vertex_t y = cand[j];
      const std::uint64_t n = count_[t][y];
      if (n == 0 || !close(y, p[t])) continue;
      const std::uint64_t lo = base + off[j];
      if (!wanted(lo, lo + n)) continue;
      q[t] = y;
      self(self, t + 1, lo);
    }
  };
  if (size() > 0 && wanted(std::uint64_t{0}, size())) rec(rec, 1, 0);
}

}  // namespace dht
