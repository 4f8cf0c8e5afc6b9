#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "dht/graph.hpp"
#include "dht/nerve.hpp"

namespace dht {

using bigint = boost::multiprecision::cpp_int;

class int_matrix {
 public:
  int_matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  int_matrix(std::initializer_list<std::initializer_list<long long>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bigint& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const bigint& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

 private:
  std::size_t rows_, cols_;
  std::vector<bigint> data_;
};

struct smith_result {
  std::vector<bigint> factors;  // d_1 | d_2 | ... | d_rank, all positive
  std::size_t rank = 0;
};

// Exact Smith normal form. Pivot: smallest nonzero absolute value, ties
// broken by row-major position.
smith_result smith_normal_form(int_matrix m);

// Normalized cubical chains of a nerve truncation. Basis cells are the
// non-thin cells, minus the basepoint in dimension 0 when reduced.
struct chain_complex {
  int max_dim = 0;
  std::vector<std::vector<cell_t>> basis;
  // boundary[n][col] lists (row, coefficient) into basis[n-1].
  std::vector<std::vector<std::vector<std::pair<std::size_t, long long>>>> boundary;

  int_matrix matrix(int n) const;  // D_n : C_n -> C_{n-1}
};

// basepoint = nullopt gives the unreduced complex.
chain_complex normalized_complex(const nerve_truncation& t, std::optional<vertex_t> basepoint);

bool boundary_squared_zero(const chain_complex& c);

struct homology_group {
  std::size_t rank = 0;
  std::vector<bigint> torsion;  // invariant factors >= 2, each dividing the next

  bool trivial() const { return rank == 0 && torsion.empty(); }
  std::string pretty() const;  // "Z^2 ⊕ Z/2", "0" when trivial
  bool operator==(const homology_group&) const = default;
};

homology_group homology(const chain_complex& c, int n);

// H_n of the normalized complex of N_1(G) truncated at N (default n + 1), reduced at v.
homology_group reduced_discrete_homology(const graph& g, vertex_t v, int n, int max_dim = -1,
                                         const nerve_options& opts = {});

}  // namespace dht
