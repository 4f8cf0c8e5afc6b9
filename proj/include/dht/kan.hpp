#pragma once

#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "dht/cubical.hpp"
#include "dht/graph.hpp"
#include "dht/grid.hpp"
#include "dht/nerve.hpp"

namespace dht {

// The open box of I_m^n with face (i, eps) removed: the union of the other
// 2n - 1 faces. An edge is present iff both ends lie in one present face.
class open_box_realization {
 public:
  open_box_realization(int m, int n, int i, int eps);

  int m() const { return m_; }
  int n() const { return n_; }
  face_index missing() const { return {i_, eps_}; }
  const grid_shape& grid() const { return grid_; }

  bool contains(std::span<const int> p) const;
  bool adjacent(std::span<const int> p, std::span<const int> q) const;
  // Present faces (j, eta) containing p, j 1-based.
  std::vector<face_index> faces_through(std::span<const int> p) const;
  std::vector<std::size_t> vertices() const;

 private:
  int m_, n_, i_, eps_;
  grid_shape grid_;
};

struct phi_parameters {
  int m, n, i, eps;

  phi_parameters(int m, int n, int i, int eps);

  int clamp_mid(int v) const;                 // phi: clamp to [m, 2m]
  int dist(std::span<const int> u) const;     // sum of |u_k - phi u_k|
  static int bound(int t, int v);             // beta_t: clamp to [0, t]
  int c_m(int v) const;                       // c^m : I_{3m} -> I_m
  int alpha(int e, int vi) const;             // e m + (1 - 2e) c^m(v_i)
  point_t operator()(std::span<const int> v) const;  // Phi : I_{3m}^n -> I_m^n
};

using point_function = std::function<point_t(std::span<const int>)>;

struct phi_report {
  bool is_graph_map = true;
  bool lands_in_box = true;
  bool triangle_commutes = true;
  std::optional<point_t> witness;  // first failing point
  bool ok() const { return is_graph_map && lands_in_box && triangle_commutes; }
};

// Checks Phi (or a substitute) over every point and edge of I_{3m}^n.
phi_report verify_phi(const phi_parameters& p, const point_function& phi = {});

// Faces of an open box in a nerve are grid cubes of one level.
using cube_box = open_box_family<grid_cube>;

// Filler at level 3m: the box assembled on the realization, composed with Phi.
grid_cube fill_open_box(const graph& g, const cube_box& box);

// First retained face of the filler that is not the c*^m image of the box face.
std::optional<face_index> check_filler_contract(const cube_box& box, const grid_cube& filler);

// A uniformly seeded random graph map from the level-m realization to G,
// read off as an open box. Always succeeds (constant maps exist).
cube_box random_open_box(const graph& g, int m, int n, int i, int eps, std::mt19937_64& rng);

// lambda^n_{m,j} (side l) or rho^n_{m,j} (side r): I_{m+1}^n x I_1 -> mixed grid.
// Arguments: (v_1..v_n), t, m, j, side.
using step_function =
    std::function<point_t(std::span<const int> v, int t, int m, int j, side s)>;
point_t default_step(std::span<const int> v, int t, int m, int j, side s);

grid_shape step_codomain(int m, int n, int j);
// lambda-bar^n_{m,j} : I_{m+1}^{n+1} -> I_{m+1}^{j+1} x I_m^{n-j-1}.
grid_map lstepbar(int m, int n, int j, side s, const step_function& step = default_step);

struct step_check {
  int i = 0;
  int eps = 0;
  std::string kind;
  bool holds = true;
  std::optional<point_t> witness;
};

struct step_report {
  std::vector<step_check> checks;
  bool ok() const;
};

// Exhaustive face factorizations of lambda-bar (or rho-bar) at (m, n, j).
step_report verify_step_props(int m, int n, int j, side s,
                              const step_function& step = default_step);

// Square on I_{M+N}^2 with bottom face f.g, built from f and g.
grid_cube concatenation_square(const grid_cube& f, const grid_cube& g);

// Names of faces of eta that differ from the expected ones (empty when all hold).
std::vector<std::string> check_concatenation_square(const grid_cube& f, const grid_cube& g,
                                                    const grid_cube& eta);

// Reparametrizations of a path: repeat the last (first) value k extra times.
grid_cube pad_end(const grid_cube& path, int k);
grid_cube pad_front(const grid_cube& path, int k);
grid_cube concatenate_paths(const grid_cube& f, const grid_cube& g);

}  // namespace dht
