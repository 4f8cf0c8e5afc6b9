#include "dht/homotopy.hpp"

#include <deque>
#include <limits>
#include <stdexcept>
#include <string>

#include "dht/errors.hpp"

namespace dht {

based_loop make_loop(const graph& g, vertex_t v, path_t labels) {
  if (labels.empty() || labels.size() % 2 == 0)
    throw invalid_argument("a based loop needs 2L+1 labels");
  if (labels.front() != v || labels.back() != v)
    throw invalid_argument("loop endpoints must equal the basepoint");
  for (std::size_t t = 0; t + 1 < labels.size(); ++t)
    if (labels[t] >= g.vertex_count() || !g.adjacent_or_equal(labels[t], labels[t + 1]))
      throw invalid_argument("loop step " + std::to_string(t) + " is not an edge");
  const int L = static_cast<int>(labels.size() / 2);
  return {v, L, std::move(labels)};
}

based_loop constant_loop(vertex_t v, int half_length) {
  return {v, half_length, path_t(2 * static_cast<std::size_t>(half_length) + 1, v)};
}

based_loop pad(const based_loop& p, int L) {
  if (L < p.half_length) throw invalid_argument("cannot pad a loop to a shorter window");
  const int extra = L - p.half_length;
  path_t labels(extra, p.basepoint);
  labels.insert(labels.end(), p.labels.begin(), p.labels.end());
  labels.insert(labels.end(), extra, p.basepoint);
  return {p.basepoint, L, std::move(labels)};
}

path_t concatenate(const path_t& f, const path_t& g) {
  if (f.empty() || g.empty() || f.back() != g.front())
    throw invalid_argument("concatenation: right endpoint of f differs from left endpoint of g");
  path_t out = f;
  out.insert(out.end(), g.begin() + 1, g.end());
  return out;
}

based_loop concatenate(const based_loop& f, const based_loop& g) {
  if (f.basepoint != g.basepoint) throw invalid_argument("concatenation: different basepoints");
  return {f.basepoint, f.half_length + g.half_length, concatenate(f.labels, g.labels)};
}

path_t reverse(const path_t& f) { return path_t(f.rbegin(), f.rend()); }

long winding_number(std::span<const vertex_t> walk, std::size_t m) {
  if (walk.empty() || walk.front() != walk.back())
    throw invalid_argument("winding number needs a closed walk");
  long steps = 0;
  for (std::size_t t = 0; t + 1 < walk.size(); ++t) {
    const std::size_t d = (walk[t + 1] + m - walk[t]) % m;
    if (d == 1)
      ++steps;
    else if (d == m - 1)
      --steps;
    else if (d != 0)
      throw invalid_argument("winding number: walk leaves the cycle");
  }
  return steps / static_cast<long>(m);
}

path_space::path_space(const graph& g, vertex_t s, vertex_t e, int k, std::size_t budget)
    : g_(g), s_(s), e_(e), k_(k) {
  const std::size_t n = g.vertex_count();
  if (s >= n || e >= n) throw invalid_argument("path endpoints out of range");
  if (k < 0) throw invalid_argument("negative path length");
  budget = std::min<std::size_t>(budget, std::numeric_limits<std::uint32_t>::max() - 1);
  closed_.resize(n);
  for (vertex_t v = 0; v < n; ++v) {
    auto nb = g.neighbors(v);
    closed_[v].assign(nb.begin(), nb.end());
    closed_[v].insert(std::lower_bound(closed_[v].begin(), closed_[v].end(), v), v);
  }
  if (n <= 4096) {
    dense_.assign(n * n, 0);
    for (vertex_t v = 0; v < n; ++v)
      for (vertex_t w : closed_[v]) dense_[v * n + w] = 1;
  }
  // Saturating counts: anything above the budget is only ever compared.
  const std::uint64_t cap = static_cast<std::uint64_t>(budget) + 1;
  count_.assign(k + 1, std::vector<std::uint64_t>(n, 0));
  offset_.assign(k + 1, {});
  count_[k][e] = 1;
  for (int t = k - 1; t >= 0; --t)
    for (vertex_t x = 0; x < n; ++x) {
      std::uint64_t sum = 0;
      for (vertex_t y : closed_[x]) sum = std::min(cap, sum + count_[t + 1][y]);
      count_[t][x] = sum;
    }
  for (int t = 1; t <= k; ++t) {
    offset_[t].resize(n);
    for (vertex_t x = 0; x < n; ++x) {
      auto& off = offset_[t][x];
      off.resize(closed_[x].size());
      std::uint64_t sum = 0;
      for (std::size_t j = 0; j < closed_[x].size(); ++j) {
        off[j] = sum;
        sum = std::min(cap, sum + count_[t][closed_[x][j]]);
      }
    }
  }
  if (count_[0][s] > budget)
    throw budget_exceeded("path space exceeds the budget of " + std::to_string(budget) +
                          " paths");
}

path_t path_space::unrank(std::uint64_t r) const {
  if (r >= size()) throw invalid_argument("path rank out of range");
  path_t q(k_ + 1);
  q[0] = s_;
  for (int t = 1; t <= k_; ++t) {
    const auto& cand = closed_[q[t - 1]];
    const auto& off = offset_[t][q[t - 1]];
    std::size_t j = cand.size() - 1;
    while (off[j] > r) --j;
    r -= off[j];
    q[t] = cand[j];
  }
  return q;
}

std::optional<std::uint64_t> path_space::rank(std::span<const vertex_t> p) const {
  if (p.size() != static_cast<std::size_t>(k_) + 1 || p[0] != s_ || p[k_] != e_)
    return std::nullopt;
  std::uint64_t r = 0;
  for (int t = 1; t <= k_; ++t) {
    const auto& cand = closed_[p[t - 1]];
    auto it = std::lower_bound(cand.begin(), cand.end(), p[t]);
    if (it == cand.end() || *it != p[t]) return std::nullopt;
    r += offset_[t][p[t - 1]][it - cand.begin()];
  }
  return r;
}

std::vector<std::uint64_t> path_space::neighbors(std::uint64_t r) const {
  std::vector<std::uint64_t> out;
  const path_t p = unrank(r);
  for_each_neighbor(
      p, [](std::uint64_t, std::uint64_t) { return true; },
      [&](std::uint64_t q) { out.push_back(q); });
  return out;
}

namespace {

// Smallest unvisited rank >= x; erase(x) marks x visited.
class unvisited_set {
 public:
  explicit unvisited_set(std::uint64_t n) : next_(n + 1) {
    for (std::uint64_t x = 0; x <= n; ++x) next_[x] = static_cast<std::uint32_t>(x);
  }
  std::uint64_t first_from(std::uint64_t x) {
    std::uint64_t root = x;
    while (next_[root] != root) root = next_[root];
    while (next_[x] != root) {
      std::uint64_t nx = next_[x];
      next_[x] = static_cast<std::uint32_t>(root);
      x = nx;
    }
    return root;
  }
  bool any_in(std::uint64_t lo, std::uint64_t hi) { return first_from(lo) < hi; }
  void erase(std::uint64_t x) { next_[x] = static_cast<std::uint32_t>(x + 1); }

 private:
  std::vector<std::uint32_t> next_;
};

constexpr std::uint32_t unset = std::numeric_limits<std::uint32_t>::max();

// BFS from `from`; parent links in `parent`, stops early once `to` is reached.
void bfs(const path_space& space, std::uint64_t from, std::uint64_t to, unvisited_set& todo,
         std::vector<std::uint32_t>& parent) {
  std::deque<std::uint64_t> queue{from};
  todo.erase(from);
  parent[from] = static_cast<std::uint32_t>(from);
  while (!queue.empty() && parent[to] == unset) {
    const std::uint64_t r = queue.front();
    queue.pop_front();
    space.for_each_neighbor(
        space.unrank(r), [&](std::uint64_t lo, std::uint64_t hi) { return todo.any_in(lo, hi); },
        [&](std::uint64_t q) {
          todo.erase(q);
          parent[q] = static_cast<std::uint32_t>(r);
          queue.push_back(q);
        });
  }
}

std::optional<std::vector<path_t>> chain(const path_space& space, const path_t& p,
                                         const path_t& q) {
  auto rp = space.rank(p), rq = space.rank(q);
  if (!rp || !rq) throw invalid_argument("path is not in the path space");
  unvisited_set todo(space.size());
  std::vector<std::uint32_t> parent(space.size(), unset);
  bfs(space, *rp, *rq, todo, parent);
  if (parent[*rq] == unset) return std::nullopt;
  std::vector<path_t> out;
  for (std::uint64_t r = *rq;; r = parent[r]) {
    out.push_back(space.unrank(r));
    if (r == *rp) break;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace

path_components components(const path_space& space) {
  path_components c;
  const std::uint64_t n = space.size();
  c.component_of.assign(n, unset);
  unvisited_set todo(n);
  for (std::uint64_t s = todo.first_from(0); s < n; s = todo.first_from(s)) {
    const auto id = static_cast<std::uint32_t>(c.count++);
    std::deque<std::uint64_t> queue{s};
    todo.erase(s);
    c.component_of[s] = id;
    while (!queue.empty()) {
      const std::uint64_t r = queue.front();
      queue.pop_front();
      space.for_each_neighbor(
          space.unrank(r), [&](std::uint64_t lo, std::uint64_t hi) { return todo.any_in(lo, hi); },
          [&](std::uint64_t q) {
            todo.erase(q);
            c.component_of[q] = id;
            queue.push_back(q);
          });
    }
  }
  return c;
}

truncated_loop_graph::truncated_loop_graph(const graph& g, vertex_t v, int L, std::size_t budget)
    : v_(v), L_(L), space_(g, v, v, 2 * L, budget), comps_(dht::components(space_)) {
  if (L < 0) throw invalid_argument("negative loop half-length");
}

based_loop truncated_loop_graph::loop(std::uint64_t r) const {
  return {v_, L_, space_.unrank(r)};
}

std::optional<std::uint64_t> truncated_loop_graph::find(const based_loop& p) const {
  if (p.basepoint != v_ || p.half_length != L_) return std::nullopt;
  return space_.rank(p.labels);
}

graph truncated_loop_graph::as_graph(std::size_t edge_budget) const {
  std::vector<edge_t> edges;
  for (std::uint64_t r = 0; r < size(); ++r)
    for (std::uint64_t q : space_.neighbors(r))
      if (q > r) {
        if (edges.size() >= edge_budget)
          throw budget_exceeded("loop graph has more than " + std::to_string(edge_budget) +
                                " edges");
        edges.emplace_back(static_cast<vertex_t>(r), static_cast<vertex_t>(q));
      }
  return graph(size(), edges);
}

truncated_loop_graph loop_graph(const graph& g, vertex_t v, int L, std::size_t budget) {
  return truncated_loop_graph(g, v, L, budget);
}

std::vector<a1_row> a1_estimate(const graph& g, vertex_t v, int L_max, std::size_t budget) {
  if (L_max < 1) throw invalid_argument("L_max must be at least 1");
  std::vector<a1_row> rows;
  truncated_loop_graph cur(g, v, 1, budget);
  for (int L = 1; L <= L_max; ++L) {
    truncated_loop_graph next(g, v, L + 1, budget);
    const auto& from = cur.components();
    const auto& to = next.components();
    std::vector<std::uint32_t> image(from.count, unset);
    bool well_defined = true;
    for (std::uint64_t r = 0; r < cur.size(); ++r) {
      const auto padded = next.find(pad(cur.loop(r), L + 1));
      const std::uint32_t c = to.component_of[*padded];
      auto& slot = image[from.component_of[r]];
      if (slot == unset)
        slot = c;
      else if (slot != c)
        well_defined = false;
    }
    if (!well_defined) throw std::logic_error("padding does not respect loop-graph components");
    std::vector<std::uint8_t> hit(to.count, 0);
    bool injective = true;
    for (auto c : image) {
      if (hit[c]) injective = false;
      hit[c] = 1;
    }
    const bool surjective = std::all_of(hit.begin(), hit.end(), [](auto h) { return h != 0; });
    rows.push_back({L, from.count, injective && surjective});
    cur = std::move(next);
  }
  return rows;
}

std::optional<std::vector<based_loop>> based_homotopic(const graph& g, const based_loop& p,
                                                       const based_loop& q, int L,
                                                       std::size_t budget) {
  if (p.basepoint != q.basepoint) throw invalid_argument("loops have different basepoints");
  const path_space space(g, p.basepoint, p.basepoint, 2 * L, budget);
  auto found = chain(space, pad(p, L).labels, pad(q, L).labels);
  if (!found) return std::nullopt;
  std::vector<based_loop> out;
  for (auto& labels : *found) out.push_back({p.basepoint, L, std::move(labels)});
  return out;
}

std::optional<std::vector<path_t>> path_homotopic(const graph& g, const path_t& p,
                                                  const path_t& q, std::size_t budget) {
  if (p.empty() || p.size() != q.size() || p.front() != q.front() || p.back() != q.back())
    throw invalid_argument("paths need equal length and endpoints");
  const path_space space(g, p.front(), p.back(), static_cast<int>(p.size()) - 1, budget);
  return chain(space, p, q);
}

}  // namespace dht
