#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dht {

using cell_t = std::uint32_t;

// Cells in dimensions 0..N with operator tables. Operators act on the right:
//   face(n, x, i, e)       : cells_n -> cells_{n-1}, 1 <= i <= n
//   degeneracy(n, x, i)    : cells_n -> cells_{n+1}, 1 <= i <= n+1, n < N
//   connection(n, x, i, e) : cells_n -> cells_{n+1}, 1 <= i <= n,   n < N
class truncated_cubical_set {
 public:
  truncated_cubical_set() = default;
  truncated_cubical_set(int max_dim, std::vector<std::size_t> cell_counts);

  int max_dim() const { return max_dim_; }
  std::size_t cell_count(int n) const { return counts_[n]; }

  cell_t face(int n, cell_t x, int i, int eps) const {
    return faces_[n][x * 2 * n + 2 * (i - 1) + eps];
  }
  cell_t degeneracy(int n, cell_t x, int i) const { return degens_[n][x * (n + 1) + (i - 1)]; }
  cell_t connection(int n, cell_t x, int i, int eps) const {
    return conns_[n][x * 2 * n + 2 * (i - 1) + eps];
  }

  void set_face(int n, cell_t x, int i, int eps, cell_t y) {
    faces_[n][x * 2 * n + 2 * (i - 1) + eps] = y;
  }
  void set_degeneracy(int n, cell_t x, int i, cell_t y) { degens_[n][x * (n + 1) + (i - 1)] = y; }
  void set_connection(int n, cell_t x, int i, int eps, cell_t y) {
    conns_[n][x * 2 * n + 2 * (i - 1) + eps] = y;
  }

  // Raw tables, for bulk construction.
  std::vector<cell_t>& face_table(int n) { return faces_[n]; }
  std::vector<cell_t>& degeneracy_table(int n) { return degens_[n]; }
  std::vector<cell_t>& connection_table(int n) { return conns_[n]; }

 private:
  int max_dim_ = 0;
  std::vector<std::size_t> counts_;
  std::vector<std::vector<cell_t>> faces_;
  std::vector<std::vector<cell_t>> degens_;
  std::vector<std::vector<cell_t>> conns_;
};

// The one-point cubical set truncated at N: every cell is degenerate.
truncated_cubical_set point_cubical_set(int max_dim);

// One cubical operator with its 1-based index and, for faces and
// connections, its epsilon.
struct cube_op {
  enum class kind { face, degeneracy, connection } what;
  int i;
  int eps = 0;
};
std::string to_string(const cube_op& op);

struct identity_violation {
  std::string identity;       // e.g. "d(1,0)d(2,1) = d(3,1)d(1,0)"
  int dim;                    // dimension of the cell x
  cell_t cell;
  cell_t lhs, rhs;            // both results, in dimension result_dim
  int result_dim;
};

struct identity_report {
  std::vector<identity_violation> violations;
  std::size_t checked = 0;    // (instance, cell) pairs evaluated
  std::size_t unchecked = 0;  // instances skipped for lack of dimensions above N
  bool ok() const { return violations.empty(); }
};

// Exhaustively evaluates the cubical identity schema on every cell.
identity_report check_identities(const truncated_cubical_set& x);

struct face_index {
  int i;
  int eps;
  bool operator==(const face_index&) const = default;
};

inline std::size_t face_slot(int i, int eps) { return 2 * static_cast<std::size_t>(i - 1) + eps; }

// All 2n faces of an n-cell, indexed by face_slot.
template <class Cell>
struct boundary_family {
  int n = 0;
  std::vector<Cell> faces;

  const Cell& at(int i, int eps) const { return faces[face_slot(i, eps)]; }
  bool operator==(const boundary_family&) const = default;
};

// A boundary family with the face `missing` removed.
template <class Cell>
struct open_box_family {
  int n = 0;
  face_index missing{1, 0};
  std::vector<std::optional<Cell>> faces;

  const Cell& at(int i, int eps) const { return *faces[face_slot(i, eps)]; }
  bool has(int i, int eps) const { return faces[face_slot(i, eps)].has_value(); }
};

template <class Cell>
open_box_family<Cell> forget_face(const boundary_family<Cell>& b, int i, int eps) {
  open_box_family<Cell> o{b.n, {i, eps}, {}};
  for (const auto& f : b.faces) o.faces.emplace_back(f);
  o.faces[face_slot(i, eps)].reset();
  return o;
}

template <class Cell>
boundary_family<Cell> add_face(const open_box_family<Cell>& o, Cell c) {
  boundary_family<Cell> b{o.n, {}};
  for (std::size_t s = 0; s < o.faces.size(); ++s)
    b.faces.push_back(s == face_slot(o.missing.i, o.missing.eps) ? c : *o.faces[s]);
  return b;
}

// First pair ((j, a), (k, b)), j < k, with faces(j,a) d(k-1,b) != faces(k,b) d(j,a).
// face_op(cell, i, eps) applies a face operator to a face cell.
template <class Cell, class FaceOp>
std::optional<std::pair<face_index, face_index>> find_incompatibility(
    int n, const std::vector<std::optional<Cell>>& faces, FaceOp&& face_op) {
  for (int j = 1; j <= n; ++j)
    for (int k = j + 1; k <= n; ++k)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          const auto& fj = faces[face_slot(j, a)];
          const auto& fk = faces[face_slot(k, b)];
          if (!fj || !fk) continue;
          if (!(face_op(*fj, k - 1, b) == face_op(*fk, j, a)))
            return std::make_pair(face_index{j, a}, face_index{k, b});
        }
  return std::nullopt;
}

template <class Cell, class FaceOp>
std::optional<std::pair<face_index, face_index>> find_incompatibility(
    const open_box_family<Cell>& o, FaceOp&& face_op) {
  return find_incompatibility<Cell>(o.n, o.faces, face_op);
}

template <class Cell, class FaceOp>
std::optional<std::pair<face_index, face_index>> find_incompatibility(
    const boundary_family<Cell>& b, FaceOp&& face_op) {
  std::vector<std::optional<Cell>> faces(b.faces.begin(), b.faces.end());
  return find_incompatibility<Cell>(b.n, faces, face_op);
}

boundary_family<cell_t> boundary_family_of(const truncated_cubical_set& x, int n, cell_t c);

// Face operator on (n-1)-cells of a truncated cubical set, for find_incompatibility.
inline auto face_op_of(const truncated_cubical_set& x, int n) {
  return [&x, n](cell_t c, int i, int eps) { return x.face(n - 1, c, i, eps); };
}

// Line-oriented dump: "dim n cells c", then "face n x i e y", "degen n x i y",
// "conn n x i e y" rows. See docs/formats.md.
void dump(std::ostream& out, const truncated_cubical_set& x);

}  // namespace dht
