#include "dht/graph.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "dht/errors.hpp"

namespace dht {

graph::graph(std::size_t vertex_count, const std::vector<edge_t>& edges) : adj_(vertex_count) {
  for (auto [u, v] : edges) {
    if (u >= vertex_count || v >= vertex_count)
      throw invalid_argument("edge {" + std::to_string(u) + "," + std::to_string(v) +
                             "} has an endpoint >= vertex count " + std::to_string(vertex_count));
    if (u == v) throw invalid_argument("loop at vertex " + std::to_string(u));
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (std::size_t v = 0; v < vertex_count; ++v) {
    auto& a = adj_[v];
    std::sort(a.begin(), a.end());
    auto dup = std::adjacent_find(a.begin(), a.end());
    if (dup != a.end())
      throw invalid_argument("duplicate edge {" + std::to_string(v) + "," + std::to_string(*dup) +
                             "}");
  }
  edge_count_ = edges.size();
}

bool graph::adjacent(vertex_t u, vertex_t v) const {
  const auto& a = adj_[u];
  return std::binary_search(a.begin(), a.end(), v);
}

std::vector<edge_t> graph::edges() const {
  std::vector<edge_t> out;
  out.reserve(edge_count_);
  for (vertex_t u = 0; u < adj_.size(); ++u)
    for (vertex_t v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

pointed_graph::pointed_graph(graph_ptr g_, vertex_t v) : g(std::move(g_)), basepoint(v) {
  if (v >= g->vertex_count()) throw invalid_argument("basepoint out of range");
}

bool satisfies_edge_condition(const graph& dom, const graph& cod,
                              std::span<const vertex_t> assignment) {
  if (assignment.size() != dom.vertex_count()) return false;
  for (vertex_t a : assignment)
    if (a >= cod.vertex_count()) return false;
  for (auto [u, v] : dom.edges())
    if (!cod.adjacent_or_equal(assignment[u], assignment[v])) return false;
  return true;
}

graph_map::graph_map(graph_ptr dom, graph_ptr cod, std::vector<vertex_t> assignment)
    : dom_(std::move(dom)), cod_(std::move(cod)), assignment_(std::move(assignment)) {
  if (!satisfies_edge_condition(*dom_, *cod_, assignment_))
    throw invalid_argument("assignment is not a graph map");
}

bool graph_map::operator==(const graph_map& other) const {
  return assignment_ == other.assignment_ && *dom_ == *other.dom_ && *cod_ == *other.cod_;
}

graph_map compose(const graph_map& g, const graph_map& f) {
  if (!(f.cod() == g.dom())) throw invalid_argument("compose: codomain/domain mismatch");
  std::vector<vertex_t> a(f.dom().vertex_count());
  for (vertex_t v = 0; v < a.size(); ++v) a[v] = g(f(v));
  return graph_map(f.dom_ptr(), g.cod_ptr(), std::move(a));
}

graph_map identity_map(const graph_ptr& g) {
  std::vector<vertex_t> a(g->vertex_count());
  for (vertex_t v = 0; v < a.size(); ++v) a[v] = v;
  return graph_map(g, g, std::move(a));
}

graph_map constant_map(const graph_ptr& dom, const graph_ptr& cod, vertex_t v) {
  return graph_map(dom, cod, std::vector<vertex_t>(dom->vertex_count(), v));
}

graph interval(std::size_t m) {
  std::vector<edge_t> e;
  for (vertex_t i = 0; i < m; ++i) e.emplace_back(i, i + 1);
  return graph(m + 1, e);
}

graph cycle(std::size_t m) {
  if (m < 3) throw invalid_argument("cycle length must be at least 3");
  std::vector<edge_t> e;
  for (vertex_t i = 0; i < m; ++i) e.emplace_back(i, static_cast<vertex_t>((i + 1) % m));
  return graph(m, e);
}

graph disjoint_union(const graph& a, const graph& b) {
  auto e = a.edges();
  auto shift = static_cast<vertex_t>(a.vertex_count());
  for (auto [u, v] : b.edges()) e.emplace_back(u + shift, v + shift);
  return graph(a.vertex_count() + b.vertex_count(), e);
}

graph box_product(const graph& g, const graph& h) {
  const auto nh = static_cast<vertex_t>(h.vertex_count());
  std::vector<edge_t> e;
  for (vertex_t v = 0; v < g.vertex_count(); ++v)
    for (auto [w, w2] : h.edges()) e.emplace_back(v * nh + w, v * nh + w2);
  for (auto [v, v2] : g.edges())
    for (vertex_t w = 0; w < nh; ++w) e.emplace_back(v * nh + w, v2 * nh + w);
  return graph(g.vertex_count() * h.vertex_count(), e);
}

graph categorical_product(const graph& g, const graph& h) {
  const auto nh = static_cast<vertex_t>(h.vertex_count());
  const auto n = static_cast<vertex_t>(g.vertex_count() * h.vertex_count());
  std::vector<edge_t> e;
  for (vertex_t a = 0; a < n; ++a)
    for (vertex_t b = a + 1; b < n; ++b)
      if (g.adjacent_or_equal(a / nh, b / nh) && h.adjacent_or_equal(a % nh, b % nh))
        e.emplace_back(a, b);
  return graph(n, e);
}

namespace {

// Calls visit(assignment) for every graph map in lexicographic order, where
// candidates(x) lists the allowed values of vertex x in increasing order.
template <class Candidates, class Visit>
void backtrack_maps(const graph& dom, const graph& cod, Candidates&& candidates, Visit&& visit) {
  const std::size_t n = dom.vertex_count();
  std::vector<vertex_t> a(n);
  // Earlier neighbours of each vertex constrain its value.
  std::vector<std::vector<vertex_t>> back(n);
  for (vertex_t x = 0; x < n; ++x)
    for (vertex_t y : dom.neighbors(x))
      if (y < x) back[x].push_back(y);
  auto rec = [&](auto&& self, std::size_t x) -> void {
    if (x == n) {
      visit(std::span<const vertex_t>(a));
      return;
    }
    for (vertex_t c : candidates(x)) {
      bool ok = true;
      for (vertex_t y : back[x])
        if (!cod.adjacent_or_equal(a[y], c)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      a[x] = c;
      self(self, x + 1);
    }
  };
  rec(rec, 0);
}

}  // namespace

hom_graph::hom_graph(graph_ptr dom, graph_ptr cod, std::size_t budget)
    : dom_(std::move(dom)), cod_(std::move(cod)), width_(dom_->vertex_count()) {
  std::vector<vertex_t> all(cod_->vertex_count());
  for (vertex_t v = 0; v < all.size(); ++v) all[v] = v;
  std::size_t count = 0;
  backtrack_maps(
      *dom_, *cod_, [&](std::size_t) -> const std::vector<vertex_t>& { return all; },
      [&](std::span<const vertex_t> a) {
        if (++count > budget)
          throw budget_exceeded("hom-graph has more than " + std::to_string(budget) +
                                " vertices");
        flat_.insert(flat_.end(), a.begin(), a.end());
      });

  // Neighbours of f are the maps g with g(x) in the closed neighbourhood of f(x).
  std::vector<edge_t> edges;
  std::vector<std::vector<vertex_t>> closed(width_);
  for (std::size_t id = 0; id < count; ++id) {
    auto f = assignment(id);
    for (std::size_t x = 0; x < width_; ++x) {
      auto nb = cod_->neighbors(f[x]);
      closed[x].assign(nb.begin(), nb.end());
      closed[x].insert(std::lower_bound(closed[x].begin(), closed[x].end(), f[x]), f[x]);
    }
    backtrack_maps(
        *dom_, *cod_, [&](std::size_t x) -> const std::vector<vertex_t>& { return closed[x]; },
        [&](std::span<const vertex_t> g) {
          auto other = find(g);
          if (*other > id) edges.emplace_back(static_cast<vertex_t>(id), static_cast<vertex_t>(*other));
        });
  }
  // A map from the empty graph is one vertex with no labels.
  if (width_ == 0) count = 1;
  graph_ = graph(count, edges);
}

std::span<const vertex_t> hom_graph::assignment(std::size_t id) const {
  return std::span<const vertex_t>(flat_).subspan(id * width_, width_);
}

graph_map hom_graph::map(std::size_t id) const {
  auto a = assignment(id);
  return graph_map(dom_, cod_, std::vector<vertex_t>(a.begin(), a.end()));
}

std::optional<std::size_t> hom_graph::find(std::span<const vertex_t> a) const {
  if (width_ == 0) return 0;
  std::size_t lo = 0, hi = flat_.size() / width_;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    auto s = assignment(mid);
    if (std::lexicographical_compare(s.begin(), s.end(), a.begin(), a.end()))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo * width_ < flat_.size() && std::ranges::equal(assignment(lo), a)) return lo;
  return std::nullopt;
}

interval_maps maps_l_r_c(std::size_t m) {
  auto im = share(interval(m));
  auto im1 = share(interval(m + 1));
  auto im2 = share(interval(m + 2));
  const auto mv = static_cast<vertex_t>(m);
  std::vector<vertex_t> l(m + 2), r(m + 2), c(m + 3);
  for (vertex_t v = 0; v <= m + 1; ++v) {
    l[v] = l_of(v);
    r[v] = r_of(v, mv);
  }
  for (vertex_t v = 0; v <= m + 2; ++v) c[v] = v == 0 ? 0 : (v == m + 2 ? mv : v - 1);
  return {graph_map(im1, im, l), graph_map(im1, im, r), graph_map(im2, im, c)};
}

partition connected_components(const graph& g) {
  constexpr auto unset = static_cast<std::size_t>(-1);
  partition p;
  p.component_of.assign(g.vertex_count(), unset);
  std::vector<vertex_t> stack;
  for (vertex_t s = 0; s < g.vertex_count(); ++s) {
    if (p.component_of[s] != unset) continue;
    p.component_of[s] = p.count;
    stack.push_back(s);
    while (!stack.empty()) {
      vertex_t v = stack.back();
      stack.pop_back();
      for (vertex_t w : g.neighbors(v))
        if (p.component_of[w] == unset) {
          p.component_of[w] = p.count;
          stack.push_back(w);
        }
    }
    ++p.count;
  }
  return p;
}

std::optional<std::vector<graph_map>> homotopic(const graph_map& f, const graph_map& g) {
  if (!(f.dom() == g.dom()) || !(f.cod() == g.cod()))
    throw invalid_argument("homotopic: maps have different domain or codomain");
  hom_graph hom(f.dom_ptr(), f.cod_ptr());
  const std::size_t src = *hom.find(f.assignment());
  const std::size_t dst = *hom.find(g.assignment());
  constexpr auto unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> parent(hom.size(), unset);
  parent[src] = src;
  std::deque<std::size_t> queue{src};
  while (!queue.empty() && parent[dst] == unset) {
    std::size_t v = queue.front();
    queue.pop_front();
    for (vertex_t w : hom.as_graph().neighbors(static_cast<vertex_t>(v)))
      if (parent[w] == unset) {
        parent[w] = v;
        queue.push_back(w);
      }
  }
  if (parent[dst] == unset) return std::nullopt;
  std::vector<graph_map> path;
  for (std::size_t v = dst;; v = parent[v]) {
    path.push_back(hom.map(v));
    if (v == src) break;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace dht
