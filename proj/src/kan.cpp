#include "dht/kan.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

#include "dht/errors.hpp"
#include "dht/random.hpp"

namespace dht {

namespace {

point_t insert_coord(std::span<const int> u, int i, int value) {
  point_t v(u.begin(), u.end());
  v.insert(v.begin() + (i - 1), value);
  return v;
}

point_t drop_coord(std::span<const int> v, int i) {
  point_t u(v.begin(), v.end());
  u.erase(u.begin() + (i - 1));
  return u;
}

bool grid_adjacent(std::span<const int> p, std::span<const int> q) {
  int diff = 0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    int d = std::abs(p[k] - q[k]);
    if (d > 1) return false;
    diff += d;
  }
  return diff == 1;
}

bool equal_or_grid_adjacent(std::span<const int> p, std::span<const int> q) {
  return std::equal(p.begin(), p.end(), q.begin()) || grid_adjacent(p, q);
}

}  // namespace

open_box_realization::open_box_realization(int m, int n, int i, int eps)
    : m_(m), n_(n), i_(i), eps_(eps), grid_(grid_shape::cube(m, n)) {
  if (m < 1 || n < 1 || i < 1 || i > n || (eps != 0 && eps != 1))
    throw invalid_argument("open box needs m >= 1, n >= 1, 1 <= i <= n, eps in {0,1}");
}

std::vector<face_index> open_box_realization::faces_through(std::span<const int> p) const {
  std::vector<face_index> out;
  for (int j = 1; j <= n_; ++j)
    for (int e = 0; e < 2; ++e)
      if (!(j == i_ && e == eps_) && p[j - 1] == e * m_) out.push_back({j, e});
  return out;
}

bool open_box_realization::contains(std::span<const int> p) const {
  return grid_.contains(p) && !faces_through(p).empty();
}

bool open_box_realization::adjacent(std::span<const int> p, std::span<const int> q) const {
  if (!grid_.contains(p) || !grid_.contains(q) || !grid_adjacent(p, q)) return false;
  for (auto f : faces_through(p))
    if (q[f.i - 1] == f.eps * m_) return true;
  return false;
}

std::vector<std::size_t> open_box_realization::vertices() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < grid_.size(); ++k)
    if (contains(grid_.point(k))) out.push_back(k);
  return out;
}

phi_parameters::phi_parameters(int m_, int n_, int i_, int eps_) : m(m_), n(n_), i(i_), eps(eps_) {
  if (m < 1 || n < 1 || i < 1 || i > n || (eps != 0 && eps != 1))
    throw invalid_argument("phi needs m >= 1, n >= 1, 1 <= i <= n, eps in {0,1}");
}

int phi_parameters::clamp_mid(int v) const { return std::clamp(v, m, 2 * m); }

int phi_parameters::dist(std::span<const int> u) const {
  int d = 0;
  for (int v : u) d += std::abs(v - clamp_mid(v));
  return d;
}

int phi_parameters::bound(int t, int v) { return std::clamp(v, 0, t); }

int phi_parameters::c_m(int v) const { return std::clamp(v - m, 0, m); }

int phi_parameters::alpha(int e, int vi) const { return e * m + (1 - 2 * e) * c_m(vi); }

point_t phi_parameters::operator()(std::span<const int> v) const {
  if (n == 1) return {(1 - eps) * m};
  point_t out(n);
  for (int k = 0; k < n; ++k) out[k] = c_m(v[k]);
  const int d = dist(drop_coord(v, i));
  const int vi = v[i - 1];
  out[i - 1] = (1 - eps) * m + (2 * eps - 1) * bound(alpha(1 - eps, vi), d - alpha(eps, vi));
  return out;
}

phi_report verify_phi(const phi_parameters& p, const point_function& phi_override) {
  const point_function phi = phi_override ? phi_override
                                          : point_function([&p](std::span<const int> v) { return p(v); });
  open_box_realization box(p.m, p.n, p.i, p.eps);
  open_box_realization big(3 * p.m, p.n, p.i, p.eps);
  const auto domain = grid_shape::cube(3 * p.m, p.n);
  phi_report r;
  std::vector<point_t> image(domain.size());
  for (std::size_t k = 0; k < domain.size(); ++k) {
    const point_t v = domain.point(k);
    image[k] = phi(v);
    if (!box.contains(image[k])) {
      r.lands_in_box = false;
      if (!r.witness) r.witness = v;
    }
    if (big.contains(v)) {
      point_t expected(v.size());
      for (std::size_t c = 0; c < v.size(); ++c) expected[c] = p.c_m(v[c]);
      if (image[k] != expected) {
        r.triangle_commutes = false;
        if (!r.witness) r.witness = v;
      }
    }
  }
  domain.for_each_edge([&](std::size_t a, std::size_t b) {
    if (image[a] == image[b] || box.adjacent(image[a], image[b])) return;
    r.is_graph_map = false;
    if (!r.witness) r.witness = domain.point(a);
  });
  return r;
}

namespace {

void validate_box(const graph& g, const cube_box& box) {
  if (box.n < 1) throw invalid_argument("open box dimension must be at least 1");
  if (box.faces.size() != 2 * static_cast<std::size_t>(box.n))
    throw invalid_argument("open box needs 2n face slots");
  int level = -1;
  for (int j = 1; j <= box.n; ++j)
    for (int e = 0; e < 2; ++e) {
      const bool missing = j == box.missing.i && e == box.missing.eps;
      if (missing != !box.has(j, e))
        throw invalid_argument("open box must have exactly the missing face absent");
      if (missing) continue;
      const auto& f = box.at(j, e);
      if (level < 0) level = f.level();
      if (f.dim() != box.n - 1 || f.level() != level)
        throw invalid_argument("open box faces must be (n-1)-cubes of one level");
      if (!f.is_graph_map(g)) throw invalid_argument("open box face is not a graph map");
    }
  auto bad = find_incompatibility(box, [](const grid_cube& c, int i, int e) { return c.face(i, e); });
  if (bad)
    throw invalid_argument("incompatible open box: faces (" + std::to_string(bad->first.i) + "," +
                           std::to_string(bad->first.eps) + ") and (" +
                           std::to_string(bad->second.i) + "," + std::to_string(bad->second.eps) +
                           ")");
}

int box_level(const cube_box& box) {
  for (const auto& f : box.faces)
    if (f) return f->level();
  return 0;
}

}  // namespace

grid_cube fill_open_box(const graph& g, const cube_box& box) {
  validate_box(g, box);
  const int m = box_level(box), n = box.n;
  open_box_realization real(m, n, box.missing.i, box.missing.eps);
  const auto& grid = real.grid();
  std::vector<std::optional<vertex_t>> gbar(grid.size());
  for (std::size_t k : real.vertices()) {
    const point_t p = grid.point(k);
    for (auto f : real.faces_through(p)) {
      const vertex_t label = box.at(f.i, f.eps).at(drop_coord(p, f.i));
      if (gbar[k] && *gbar[k] != label)
        throw invalid_argument("open box faces disagree on a shared point");
      gbar[k] = label;
    }
  }
  const phi_parameters phi(m, n, box.missing.i, box.missing.eps);
  const auto domain = grid_shape::cube(3 * m, n);
  std::vector<vertex_t> labels(domain.size());
  for (std::size_t k = 0; k < domain.size(); ++k) labels[k] = *gbar[grid.index(phi(domain.point(k)))];
  return grid_cube(3 * m, n, std::move(labels));
}

std::optional<face_index> check_filler_contract(const cube_box& box, const grid_cube& filler) {
  const int m = box_level(box);
  for (int j = 1; j <= box.n; ++j)
    for (int e = 0; e < 2; ++e) {
      if (!box.has(j, e)) continue;
      if (filler.face(j, e) != c_star(box.at(j, e), m)) return face_index{j, e};
    }
  return std::nullopt;
}

cube_box random_open_box(const graph& g, int m, int n, int i, int eps, std::mt19937_64& rng) {
  open_box_realization real(m, n, i, eps);
  const auto& grid = real.grid();
  const auto verts = real.vertices();
  std::vector<point_t> pts;
  for (auto k : verts) pts.push_back(grid.point(k));
  std::vector<std::vector<std::size_t>> earlier(verts.size());
  for (std::size_t a = 0; a < verts.size(); ++a)
    for (std::size_t b = 0; b < a; ++b)
      if (real.adjacent(pts[a], pts[b])) earlier[a].push_back(b);
  std::vector<vertex_t> assign(verts.size());
  auto rec = [&](auto&& self, std::size_t a) -> bool {
    if (a == verts.size()) return true;
    std::vector<vertex_t> cand(g.vertex_count());
    for (vertex_t v = 0; v < cand.size(); ++v) cand[v] = v;
    shuffle(cand, rng);
    for (vertex_t c : cand) {
      bool ok = true;
      for (auto b : earlier[a]) ok = ok && g.adjacent_or_equal(assign[b], c);
      if (!ok) continue;
      assign[a] = c;
      if (self(self, a + 1)) return true;
    }
    return false;
  };
  if (!rec(rec, 0)) throw std::logic_error("no graph map from the open box");
  std::vector<vertex_t> full(grid.size(), 0);
  for (std::size_t a = 0; a < verts.size(); ++a) full[verts[a]] = assign[a];

  cube_box box{n, {i, eps}, std::vector<std::optional<grid_cube>>(2 * n)};
  const auto face_grid = grid_shape::cube(m, n - 1);
  for (int j = 1; j <= n; ++j)
    for (int e = 0; e < 2; ++e) {
      if (j == i && e == eps) continue;
      std::vector<vertex_t> labels(face_grid.size());
      for (std::size_t k = 0; k < face_grid.size(); ++k)
        labels[k] = full[grid.index(insert_coord(face_grid.point(k), j, e * m))];
      box.faces[face_slot(j, e)] = grid_cube(m, n - 1, std::move(labels));
    }
  return box;
}

point_t default_step(std::span<const int> v, int t, int m, int j, side s) {
  point_t out(v.begin(), v.end());
  for (std::size_t k = static_cast<std::size_t>(j + t); k < out.size(); ++k)
    out[k] = static_cast<int>(s == side::l ? l_of(out[k]) : r_of(out[k], m));
  return out;
}

grid_shape step_codomain(int m, int n, int j) {
  std::vector<int> sides(j + 1, m + 1);
  sides.resize(n, m);
  return grid_shape(sides);
}

namespace {

// l^k or r^k from I_{top} down to I_{top-k}.
int power_map(int v, int top, int k, side s) {
  for (int step = 0; step < k; ++step) {
    const int level = top - 1 - step;  // target level of this step
    v = static_cast<int>(s == side::l ? l_of(v) : r_of(v, level));
  }
  return v;
}

// id^a x f^b on a point of I_{m+1}^{a+b}: f applied to the last b coordinates.
point_t tail_map(std::span<const int> u, int keep, int m, side s) {
  point_t w(u.begin(), u.end());
  for (std::size_t k = keep; k < w.size(); ++k)
    w[k] = static_cast<int>(s == side::l ? l_of(w[k]) : r_of(w[k], m));
  return w;
}

}  // namespace

grid_map lstepbar(int m, int n, int j, side s, const step_function& step) {
  if (m < 1 || n < 1 || j < 0 || j > n - 1)
    throw invalid_argument("lstepbar needs m >= 1, n >= 1, 0 <= j <= n-1");
  grid_map f{grid_shape::cube(m + 1, n + 1), step_codomain(m, n, j), {}};
  f.image.resize(f.domain.size());
  for (std::size_t k = 0; k < f.domain.size(); ++k) {
    const point_t v = f.domain.point(k);
    const int t = power_map(v[n], m + 1, m, s);
    const point_t w = step(std::span<const int>(v).first(n), t, m, j, s);
    if (!f.codomain.contains(w)) throw invalid_argument("step map leaves its codomain");
    f.image[k] = f.codomain.index(w);
  }
  return f;
}

bool step_report::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const step_check& c) { return c.holds; });
}

step_report verify_step_props(int m, int n, int j, side s, const step_function& step) {
  const grid_map top = lstepbar(m, n, j, s, step);
  step_report report;

  step_check graph_check{0, 0, "graph-map", true, std::nullopt};
  top.domain.for_each_edge([&](std::size_t a, std::size_t b) {
    if (graph_check.holds && !equal_or_grid_adjacent(top.codomain.point(top.image[a]),
                                                     top.codomain.point(top.image[b]))) {
      graph_check.holds = false;
      graph_check.witness = top.domain.point(a);
    }
  });
  report.checks.push_back(graph_check);

  // The auxiliary map f : I_{m+1}^j x I_m^{n-j} -> I_{m+1}^{j+1} x I_m^{n-j-1}.
  auto aux = [&](std::span<const int> w) {
    const int last = w[n - 1];
    const int flag = power_map(last, m, m - 1, s);
    point_t out(w.begin(), w.begin() + j);
    out.push_back(flag == 0 ? m : m + 1);
    out.insert(out.end(), w.begin() + j, w.end() - 1);
    return out;
  };
  {
    std::vector<int> sides(j, m + 1);
    sides.resize(n, m);
    grid_shape aux_domain(sides);
    step_check c{j + 1, 1, "aux-graph-map", true, std::nullopt};
    aux_domain.for_each_edge([&](std::size_t a, std::size_t b) {
      if (c.holds && !equal_or_grid_adjacent(aux(aux_domain.point(a)), aux(aux_domain.point(b)))) {
        c.holds = false;
        c.witness = aux_domain.point(a);
      }
    });
    report.checks.push_back(c);
  }

  const auto face_domain = grid_shape::cube(m + 1, n);
  std::optional<grid_map> lower_prev, lower_same;
  if (j >= 1) lower_prev = lstepbar(m, n - 1, j - 1, s, step);
  if (j <= n - 2) lower_same = lstepbar(m, n - 1, j, s, step);

  for (int i = 1; i <= n + 1; ++i)
    for (int e = 0; e < 2; ++e) {
      step_check c{i, e, "", true, std::nullopt};
      for (std::size_t k = 0; k < face_domain.size() && c.holds; ++k) {
        const point_t u = face_domain.point(k);
        const point_t v = insert_coord(u, i, e * (m + 1));
        const point_t lhs = top.codomain.point(top.image[top.domain.index(v)]);
        point_t rhs;
        if (i == n + 1) {
          c.kind = "top-face";
          rhs = tail_map(u, j + e, m, s);
        } else if (i <= j) {
          c.kind = "inner-face";
          rhs = insert_coord((*lower_prev)(u), i, e * (m + 1));
        } else if (i > j + 1) {
          c.kind = "inner-iota";
          rhs = insert_coord((*lower_same)(u), i, e * m);
        } else if (e == 0) {
          c.kind = "outer-degenerate";
          point_t w = tail_map(u, j, m, s);
          w.pop_back();
          rhs = insert_coord(w, j + 1, 0);
        } else {
          c.kind = "outer-aux";
          rhs = aux(tail_map(u, j, m, s));
        }
        if (lhs != rhs) {
          c.holds = false;
          c.witness = v;
        }
      }
      report.checks.push_back(c);
    }
  return report;
}

grid_cube pad_end(const grid_cube& path, int k) {
  auto labels = path.labels();
  labels.insert(labels.end(), k, labels.back());
  return grid_cube(path.level() + k, 1, std::move(labels));
}

grid_cube pad_front(const grid_cube& path, int k) {
  auto labels = path.labels();
  labels.insert(labels.begin(), k, labels.front());
  return grid_cube(path.level() + k, 1, std::move(labels));
}

grid_cube concatenate_paths(const grid_cube& f, const grid_cube& g) {
  if (f.dim() != 1 || g.dim() != 1) throw invalid_argument("concatenation needs 1-cubes");
  if (f.labels().back() != g.labels().front())
    throw invalid_argument("concatenation: right endpoint of f differs from left endpoint of g");
  auto labels = f.labels();
  labels.insert(labels.end(), g.labels().begin() + 1, g.labels().end());
  return grid_cube(f.level() + g.level(), 1, std::move(labels));
}

grid_cube concatenation_square(const grid_cube& f, const grid_cube& g) {
  if (f.dim() != 1 || g.dim() != 1) throw invalid_argument("concatenation needs 1-cubes");
  if (f.labels().back() != g.labels().front())
    throw invalid_argument("concatenation: right endpoint of f differs from left endpoint of g");
  const int M = f.level(), N = g.level();
  const auto shape = grid_shape::cube(M + N, 2);
  std::vector<vertex_t> labels(shape.size());
  for (int a = 0; a <= M + N; ++a)
    for (int b = 0; b <= M + N; ++b) {
      const int p[2] = {a, b};
      labels[shape.index(p)] =
          a <= M ? f.labels()[std::max(a, std::min(b, M))] : g.labels()[a - M];
    }
  return grid_cube(M + N, 2, std::move(labels));
}

std::vector<std::string> check_concatenation_square(const grid_cube& f, const grid_cube& g,
                                                    const grid_cube& eta) {
  const int M = f.level(), N = g.level();
  std::vector<std::string> bad;
  if (eta.face(1, 0) != pad_end(f, N)) bad.push_back("d(1,0)");
  if (eta.face(1, 1) != grid_cube::constant(M + N, 1, g.labels().back())) bad.push_back("d(1,1)");
  if (eta.face(2, 0) != concatenate_paths(f, g)) bad.push_back("d(2,0)");
  if (eta.face(2, 1) != pad_front(g, M)) bad.push_back("d(2,1)");
  return bad;
}

}  // namespace dht
