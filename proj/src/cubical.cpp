#include "dht/cubical.hpp"

#include <ostream>
#include <stdexcept>

#include "dht/errors.hpp"

namespace dht {

truncated_cubical_set::truncated_cubical_set(int max_dim, std::vector<std::size_t> cell_counts)
    : max_dim_(max_dim), counts_(std::move(cell_counts)) {
  if (max_dim < 0 || counts_.size() != static_cast<std::size_t>(max_dim) + 1)
    throw invalid_argument("cell_counts must have max_dim + 1 entries");
  faces_.resize(max_dim + 1);
  degens_.resize(max_dim + 1);
  conns_.resize(max_dim + 1);
  for (int n = 0; n <= max_dim; ++n) {
    faces_[n].assign(counts_[n] * 2 * n, 0);
    if (n < max_dim) {
      degens_[n].assign(counts_[n] * (n + 1), 0);
      conns_[n].assign(counts_[n] * 2 * n, 0);
    }
  }
}

truncated_cubical_set point_cubical_set(int max_dim) {
  return truncated_cubical_set(max_dim, std::vector<std::size_t>(max_dim + 1, 1));
}

std::string to_string(const cube_op& op) {
  switch (op.what) {
    case cube_op::kind::face:
      return "d(" + std::to_string(op.i) + "," + std::to_string(op.eps) + ")";
    case cube_op::kind::degeneracy:
      return "s(" + std::to_string(op.i) + ")";
    case cube_op::kind::connection:
      return "g(" + std::to_string(op.i) + "," + std::to_string(op.eps) + ")";
  }
  return "?";
}

namespace {

using ops = std::vector<cube_op>;

cube_op d(int i, int e) { return {cube_op::kind::face, i, e}; }
cube_op s(int i) { return {cube_op::kind::degeneracy, i, 0}; }
cube_op g(int i, int e) { return {cube_op::kind::connection, i, e}; }

struct instance {
  int dim;
  ops lhs, rhs;
};

// Highest dimension visited by a word of operators applied to an n-cell.
int peak_dim(int n, const ops& word) {
  int peak = n;
  for (const auto& op : word) {
    n += op.what == cube_op::kind::face ? -1 : 1;
    peak = std::max(peak, n);
  }
  return peak;
}

cell_t apply(const truncated_cubical_set& x, int& n, cell_t c, const ops& word) {
  for (const auto& op : word) {
    switch (op.what) {
      case cube_op::kind::face:
        if (op.i < 1 || op.i > n) throw std::logic_error("identity schema: bad face index");
        c = x.face(n, c, op.i, op.eps);
        --n;
        break;
      case cube_op::kind::degeneracy:
        if (op.i < 1 || op.i > n + 1) throw std::logic_error("identity schema: bad degeneracy");
        c = x.degeneracy(n, c, op.i);
        ++n;
        break;
      case cube_op::kind::connection:
        if (op.i < 1 || op.i > n) throw std::logic_error("identity schema: bad connection");
        c = x.connection(n, c, op.i, op.eps);
        ++n;
        break;
    }
  }
  return c;
}

std::string word_string(const ops& word) {
  if (word.empty()) return "id";
  std::string out;
  for (const auto& op : word) out += to_string(op);
  return out;
}

// Every instance of the schema on n-cells. Words are read left to right as
// successive right actions on cells.
std::vector<instance> schema(int n) {
  std::vector<instance> out;
  auto add = [&](ops l, ops r) { out.push_back({n, std::move(l), std::move(r)}); };
  for (int e = 0; e < 2; ++e)
    for (int e2 = 0; e2 < 2; ++e2) {
      // dd: d(j,e') d(i,e) = d(i+1,e) d(j,e'), j <= i
      for (int i = 1; i <= n - 1; ++i)
        for (int j = 1; j <= i; ++j) add({d(j, e2), d(i, e)}, {d(i + 1, e), d(j, e2)});
      // gg: g(j,e') g(i,e) = g(i,e) g(j+1,e'), j > i; g(i,e) g(i,e) = g(i,e) g(i+1,e)
      for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) add({g(j, e2), g(i, e)}, {g(i, e), g(j + 1, e2)});
      // gd
      for (int j = 1; j <= n; ++j)
        for (int i = 1; i <= n + 1; ++i) {
          ops rhs;
          if (j < i - 1)
            rhs = {d(i - 1, e), g(j, e2)};
          else if ((j == i - 1 || j == i) && e == e2)
            rhs = {};
          else if (j == i - 1 || j == i)
            rhs = {d(j, e), s(j)};
          else
            rhs = {d(i, e), g(j - 1, e2)};
          add({g(j, e2), d(i, e)}, rhs);
        }
    }
  for (int e = 0; e < 2; ++e) {
    for (int i = 1; i <= n; ++i) add({g(i, e), g(i, e)}, {g(i, e), g(i + 1, e)});
    // sd
    for (int j = 1; j <= n + 1; ++j)
      for (int i = 1; i <= n + 1; ++i) {
        if (j < i)
          add({s(j), d(i, e)}, {d(i - 1, e), s(j)});
        else if (j == i)
          add({s(j), d(i, e)}, {});
        else
          add({s(j), d(i, e)}, {d(i, e), s(j - 1)});
      }
    // sg
    for (int j = 1; j <= n + 1; ++j)
      for (int i = 1; i <= n + 1; ++i) {
        if (j < i)
          add({s(j), g(i, e)}, {g(i - 1, e), s(j)});
        else if (j == i)
          add({s(j), g(i, e)}, {s(i), s(i)});
        else
          add({s(j), g(i, e)}, {g(i, e), s(j + 1)});
      }
  }
  // ss: s(i) s(j) = s(j) s(i+1), j <= i
  for (int i = 1; i <= n + 1; ++i)
    for (int j = 1; j <= i; ++j) add({s(i), s(j)}, {s(j), s(i + 1)});
  return out;
}

}  // namespace

identity_report check_identities(const truncated_cubical_set& x) {
  identity_report report;
  const int top = x.max_dim();
  // Instances passing through a dimension above N are counted, not evaluated.
  for (int n = 0; n <= top; ++n) {
    for (const auto& inst : schema(n)) {
      if (peak_dim(n, inst.lhs) > top || peak_dim(n, inst.rhs) > top) {
        ++report.unchecked;
        continue;
      }
      for (cell_t c = 0; c < x.cell_count(n); ++c) {
        int nl = n, nr = n;
        cell_t a = apply(x, nl, c, inst.lhs);
        cell_t b = apply(x, nr, c, inst.rhs);
        ++report.checked;
        if (a != b)
          report.violations.push_back({word_string(inst.lhs) + " = " + word_string(inst.rhs), n,
                                       c, a, b, nl});
      }
    }
  }
  return report;
}

boundary_family<cell_t> boundary_family_of(const truncated_cubical_set& x, int n, cell_t c) {
  if (n < 1) throw invalid_argument("boundary of a 0-cell");
  boundary_family<cell_t> b{n, {}};
  for (int i = 1; i <= n; ++i)
    for (int e = 0; e < 2; ++e) b.faces.push_back(x.face(n, c, i, e));
  return b;
}

void dump(std::ostream& out, const truncated_cubical_set& x) {
  out << "max_dim " << x.max_dim() << '\n';
  for (int n = 0; n <= x.max_dim(); ++n) out << "dim " << n << " cells " << x.cell_count(n) << '\n';
  for (int n = 0; n <= x.max_dim(); ++n)
    for (cell_t c = 0; c < x.cell_count(n); ++c) {
      for (int i = 1; i <= n; ++i)
        for (int e = 0; e < 2; ++e)
          out << "face " << n << ' ' << c << ' ' << i << ' ' << e << ' ' << x.face(n, c, i, e)
              << '\n';
      if (n == x.max_dim()) continue;
      for (int i = 1; i <= n + 1; ++i)
        out << "degen " << n << ' ' << c << ' ' << i << ' ' << x.degeneracy(n, c, i) << '\n';
      for (int i = 1; i <= n; ++i)
        for (int e = 0; e < 2; ++e)
          out << "conn " << n << ' ' << c << ' ' << i << ' ' << e << ' '
              << x.connection(n, c, i, e) << '\n';
    }
}

}  // namespace dht
