#include "dht/homology.hpp"

#include <map>
#include <stdexcept>

#include "dht/errors.hpp"

namespace dht {

int_matrix::int_matrix(std::initializer_list<std::initializer_list<long long>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw invalid_argument("ragged matrix literal");
    for (long long v : r) data_.emplace_back(v);
  }
}

namespace {

struct snf_state {
  int_matrix& a;

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(i, c), a(j, c));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < a.rows(); ++r) std::swap(a(r, i), a(r, j));
  }
  // row_i -= q row_j
  void sub_row(std::size_t i, std::size_t j, const bigint& q, std::size_t from) {
    for (std::size_t c = from; c < a.cols(); ++c)
      if (!a(j, c).is_zero()) a(i, c) -= q * a(j, c);
  }
  void sub_col(std::size_t i, std::size_t j, const bigint& q, std::size_t from) {
    for (std::size_t r = from; r < a.rows(); ++r)
      if (!a(r, j).is_zero()) a(r, i) -= q * a(r, j);
  }

  // Smallest nonzero |entry| in the submatrix from (t, t), first in row-major order.
  bool find_pivot(std::size_t t, std::size_t& pr, std::size_t& pc) const {
    bool found = false;
    bigint best;
    for (std::size_t r = t; r < a.rows(); ++r)
      for (std::size_t c = t; c < a.cols(); ++c) {
        const bigint& v = a(r, c);
        if (v.is_zero()) continue;
        bigint av = abs(v);
        if (!found || av < best) {
          found = true;
          best = av;
          pr = r;
          pc = c;
        }
      }
    return found;
  }
};

}  // namespace

smith_result smith_normal_form(int_matrix m) {
  snf_state s{m};
  smith_result out;
  const std::size_t limit = std::min(m.rows(), m.cols());
  for (std::size_t t = 0; t < limit; ++t) {
    std::size_t pr = 0, pc = 0;
    if (!s.find_pivot(t, pr, pc)) break;
    for (;;) {
      s.swap_rows(t, pr);
      s.swap_cols(t, pc);
      const bigint p = m(t, t);
      bool clean = true;
      for (std::size_t r = t + 1; r < m.rows(); ++r)
        if (!m(r, t).is_zero()) {
          s.sub_row(r, t, m(r, t) / p, t);
          if (!m(r, t).is_zero()) clean = false;
        }
      for (std::size_t c = t + 1; c < m.cols(); ++c)
        if (!m(t, c).is_zero()) {
          s.sub_col(c, t, m(t, c) / p, t);
          if (!m(t, c).is_zero()) clean = false;
        }
      if (clean) {
        // Row t and column t are clear; enforce divisibility of the rest.
        std::size_t bad_row = m.rows();
        for (std::size_t r = t + 1; r < m.rows() && bad_row == m.rows(); ++r)
          for (std::size_t c = t + 1; c < m.cols(); ++c)
            if (bigint(m(r, c) % p) != 0) {
              bad_row = r;
              break;
            }
        if (bad_row == m.rows()) break;
        for (std::size_t c = t; c < m.cols(); ++c) m(t, c) += m(bad_row, c);
      }
      s.find_pivot(t, pr, pc);
    }
    out.factors.push_back(abs(m(t, t)));
  }
  out.rank = out.factors.size();
  return out;
}

int_matrix chain_complex::matrix(int n) const {
  const std::size_t rows = n == 0 ? 0 : basis[n - 1].size();
  int_matrix m(rows, basis[n].size());
  if (n == 0) return m;
  for (std::size_t c = 0; c < boundary[n].size(); ++c)
    for (auto [r, v] : boundary[n][c]) m(r, c) += v;
  return m;
}

chain_complex normalized_complex(const nerve_truncation& t, std::optional<vertex_t> basepoint) {
  if (basepoint && *basepoint >= t.base().vertex_count())
    throw invalid_argument("basepoint out of range");
  const auto& x = t.cubical();
  const int top = t.max_dim();
  chain_complex c;
  c.max_dim = top;
  c.basis.resize(top + 1);
  c.boundary.resize(top + 1);
  std::vector<std::vector<std::int64_t>> position(top + 1);
  for (int n = 0; n <= top; ++n) {
    position[n].assign(t.cell_count(n), -1);
    for (cell_t z = 0; z < t.cell_count(n); ++z) {
      if (t.is_thin(n, z)) continue;
      if (n == 0 && basepoint && t.labels(0, z)[0] == *basepoint) continue;
      position[n][z] = static_cast<std::int64_t>(c.basis[n].size());
      c.basis[n].push_back(z);
    }
  }
  for (int n = 1; n <= top; ++n) {
    c.boundary[n].resize(c.basis[n].size());
    for (std::size_t col = 0; col < c.basis[n].size(); ++col) {
      std::map<std::size_t, long long> acc;
      for (int i = 1; i <= n; ++i) {
        const long long sign = i % 2 == 0 ? 1 : -1;
        for (int e = 0; e < 2; ++e) {
          auto row = position[n - 1][x.face(n, c.basis[n][col], i, e)];
          if (row >= 0) acc[static_cast<std::size_t>(row)] += e == 1 ? sign : -sign;
        }
      }
      for (auto [r, v] : acc)
        if (v != 0) c.boundary[n][col].emplace_back(r, v);
    }
  }
  if (!boundary_squared_zero(c)) throw std::logic_error("normalized complex: D D != 0");
  return c;
}

bool boundary_squared_zero(const chain_complex& c) {
  for (int n = 2; n <= c.max_dim; ++n)
    for (const auto& column : c.boundary[n]) {
      std::map<std::size_t, long long> acc;
      for (auto [r, v] : column)
        for (auto [r2, v2] : c.boundary[n - 1][r]) acc[r2] += v * v2;
      for (auto [r, v] : acc)
        if (v != 0) return false;
    }
  return true;
}

homology_group homology(const chain_complex& c, int n) {
  if (n < 0) throw invalid_argument("negative homology degree");
  if (n + 1 > c.max_dim)
    throw insufficient_truncation("H_" + std::to_string(n) + " needs cells through dimension " +
                                  std::to_string(n + 1) + ", truncation stops at " +
                                  std::to_string(c.max_dim));
  const auto dn = smith_normal_form(c.matrix(n));
  const auto dn1 = smith_normal_form(c.matrix(n + 1));
  homology_group h;
  h.rank = c.basis[n].size() - dn.rank - dn1.rank;
  for (const auto& f : dn1.factors)
    if (f > 1) h.torsion.push_back(f);
  return h;
}

std::string homology_group::pretty() const {
  if (trivial()) return "0";
  std::string out;
  if (rank == 1) out = "Z";
  if (rank > 1) out = "Z^" + std::to_string(rank);
  for (const auto& t : torsion) {
    if (!out.empty()) out += " ⊕ ";
    out += "Z/" + t.str();
  }
  return out;
}

homology_group reduced_discrete_homology(const graph& g, vertex_t v, int n, int max_dim,
                                         const nerve_options& opts) {
  if (max_dim < 0) max_dim = n + 1;
  if (n + 1 > max_dim)
    throw insufficient_truncation("reduced_discrete_homology: truncation must exceed the degree");
  const auto t = enumerate_nerve(g, 1, max_dim, opts);
  return homology(normalized_complex(t, v), n);
}

}  // namespace dht
