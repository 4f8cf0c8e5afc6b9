#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace dht {

using vertex_t = std::uint32_t;
using edge_t = std::pair<vertex_t, vertex_t>;

// Finite simple graph on vertices 0..n-1. Immutable once built.
class graph {
 public:
  graph() = default;
  // Throws invalid_argument on loops, duplicate edges and out of range ids.
  graph(std::size_t vertex_count, const std::vector<edge_t>& edges);

  std::size_t vertex_count() const { return adj_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  bool adjacent(vertex_t u, vertex_t v) const;
  bool adjacent_or_equal(vertex_t u, vertex_t v) const { return u == v || adjacent(u, v); }
  // Sorted neighbour list.
  std::span<const vertex_t> neighbors(vertex_t v) const { return adj_[v]; }
  // Edges as (u, v) with u < v in lexicographic order.
  std::vector<edge_t> edges() const;

  bool operator==(const graph& other) const { return adj_ == other.adj_; }

 private:
  std::vector<std::vector<vertex_t>> adj_;
  std::size_t edge_count_ = 0;
};

using graph_ptr = std::shared_ptr<const graph>;

inline graph_ptr share(graph g) { return std::make_shared<const graph>(std::move(g)); }

struct pointed_graph {
  graph_ptr g;
  vertex_t basepoint = 0;

  pointed_graph(graph_ptr g_, vertex_t v);
};

// Vertex function dom -> cod sending every edge to an edge or a vertex.
class graph_map {
 public:
  // Throws invalid_argument if the edge condition fails.
  graph_map(graph_ptr dom, graph_ptr cod, std::vector<vertex_t> assignment);

  const graph& dom() const { return *dom_; }
  const graph& cod() const { return *cod_; }
  const graph_ptr& dom_ptr() const { return dom_; }
  const graph_ptr& cod_ptr() const { return cod_; }
  const std::vector<vertex_t>& assignment() const { return assignment_; }
  vertex_t operator()(vertex_t v) const { return assignment_[v]; }

  bool operator==(const graph_map& other) const;

 private:
  graph_ptr dom_;
  graph_ptr cod_;
  std::vector<vertex_t> assignment_;
};

bool satisfies_edge_condition(const graph& dom, const graph& cod,
                              std::span<const vertex_t> assignment);

graph_map compose(const graph_map& g, const graph_map& f);  // g after f
graph_map identity_map(const graph_ptr& g);
graph_map constant_map(const graph_ptr& dom, const graph_ptr& cod, vertex_t v);

graph interval(std::size_t m);
graph cycle(std::size_t m);
graph disjoint_union(const graph& a, const graph& b);

// Both products pair (v, w) as v * |H| + w.
graph box_product(const graph& g, const graph& h);
graph categorical_product(const graph& g, const graph& h);

// Vertices are all graph maps dom -> cod in lexicographic order of assignments.
class hom_graph {
 public:
  hom_graph(graph_ptr dom, graph_ptr cod, std::size_t budget = 10'000'000);

  const graph& as_graph() const { return graph_; }
  std::size_t size() const { return graph_.vertex_count(); }
  std::span<const vertex_t> assignment(std::size_t id) const;
  graph_map map(std::size_t id) const;
  std::optional<std::size_t> find(std::span<const vertex_t> assignment) const;

 private:
  graph_ptr dom_;
  graph_ptr cod_;
  std::size_t width_;
  std::vector<vertex_t> flat_;
  graph graph_;
};

// l, r : I_{m+1} -> I_m and c = l r = r l : I_{m+2} -> I_m.
struct interval_maps {
  graph_map l;
  graph_map r;
  graph_map c;
};
interval_maps maps_l_r_c(std::size_t m);

inline vertex_t l_of(vertex_t v) { return v == 0 ? 0 : v - 1; }
inline vertex_t r_of(vertex_t v, vertex_t m) { return v == m + 1 ? m : v; }

struct partition {
  std::vector<std::size_t> component_of;  // components numbered by first vertex
  std::size_t count = 0;
};
partition connected_components(const graph& g);

// Shortest path f = h_0, ..., h_k = g in the hom-graph, or nullopt.
std::optional<std::vector<graph_map>> homotopic(const graph_map& f, const graph_map& g);

}  // namespace dht
