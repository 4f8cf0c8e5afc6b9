#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "dht/cubical.hpp"
#include "dht/graph.hpp"
#include "dht/grid.hpp"

namespace dht {

// A graph map I_m^n -> G stored as labels of {0..m}^n in row-major order.
class grid_cube {
 public:
  grid_cube(int m, int n, std::vector<vertex_t> labels);
  static grid_cube constant(int m, int n, vertex_t v);

  int level() const { return m_; }
  int dim() const { return n_; }
  grid_shape shape() const { return grid_shape::cube(m_, n_); }
  const std::vector<vertex_t>& labels() const { return labels_; }
  vertex_t at(std::span<const int> p) const { return labels_[shape().index(p)]; }

  bool is_graph_map(const graph& g) const;

  grid_cube face(int i, int eps) const;
  grid_cube degeneracy(int i) const;
  grid_cube connection(int i, int eps) const;

  // Equal to y s_i for some i (independent of one coordinate).
  bool is_degenerate() const;
  // Equal to y g_{i,e} for some i, e.
  bool is_connection() const;

  auto operator<=>(const grid_cube&) const = default;

 private:
  int m_;
  int n_;
  std::vector<vertex_t> labels_;
};

enum class side { l, r };

// x composed with l (or r) in every coordinate; level m -> m + 1.
grid_cube star_map(const grid_cube& x, side s);
// x composed with c = lr in every coordinate, `times` times; level m -> m + 2 times.
grid_cube c_star(const grid_cube& x, int times);
// x composed with a grid map whose codomain is x's grid.
grid_cube precompose(const grid_cube& x, const grid_map& f);

struct nerve_options {
  std::size_t budget = 10'000'000;  // max cells per dimension and max grid points
  unsigned threads = 1;             // 0 = hardware concurrency
};

class nerve_truncation {
 public:
  const graph& base() const { return g_; }
  int level() const { return m_; }
  int max_dim() const { return cubical_.max_dim(); }
  std::size_t cell_count(int n) const { return cubical_.cell_count(n); }
  std::size_t nondegenerate_count(int n) const;

  std::span<const vertex_t> labels(int n, cell_t c) const;
  grid_cube cube(int n, cell_t c) const;
  std::optional<cell_t> find(int n, std::span<const vertex_t> labels) const;

  const truncated_cubical_set& cubical() const { return cubical_; }
  // Degenerate or connection, by coordinate tests on the labels.
  bool is_thin(int n, cell_t c) const { return thin_[n][c] != 0; }

 private:
  friend nerve_truncation enumerate_nerve(const graph&, int, int, const nerve_options&);
  graph g_;
  int m_ = 1;
  std::vector<std::vector<vertex_t>> cells_;          // flat labels per dimension
  std::vector<std::vector<std::size_t>> first_index_;  // bucket start by first label
  std::vector<std::vector<std::uint8_t>> thin_;
  truncated_cubical_set cubical_;
};

// All grid maps I_m^n -> G for n <= N, sorted by labels, with operator tables.
nerve_truncation enumerate_nerve(const graph& g, int m, int max_dim, const nerve_options& opts = {});

// A cube of the colimit nerve, represented at some level of the chain
// N_1 -l*-> N_2 -r*-> N_3 -l*-> N_4 ...
struct stable_cube {
  grid_cube rep;
  int level() const { return rep.level(); }
};

// Map of the chain out of level k: l* for odd k, r* for even k.
side chain_side(int k);
grid_cube push_forward(const grid_cube& x, int target_level);
bool colimit_equal(const stable_cube& a, const stable_cube& b);
stable_cube canonicalize(const grid_cube& x);

struct product_report {
  bool bijective = true;
  bool commutes = true;
  std::vector<std::size_t> product_counts, left_counts, right_counts;
  bool ok() const { return bijective && commutes; }
};

// Compares N_m(G x H) with N_m(G) x N_m(H) cellwise, through dimension N.
product_report product_compare(const graph& g, const graph& h, int m, int max_dim,
                               const nerve_options& opts = {});

}  // namespace dht
