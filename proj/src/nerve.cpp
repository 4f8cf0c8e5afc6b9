#include "dht/nerve.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "dht/errors.hpp"

namespace dht {

namespace {

std::vector<vertex_t> gather(const std::vector<vertex_t>& labels,
                             const std::vector<std::uint32_t>& index_map) {
  std::vector<vertex_t> out(index_map.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = labels[index_map[k]];
  return out;
}

std::size_t power(std::size_t base, int exp, std::size_t cap) {
  std::size_t r = 1;
  for (int k = 0; k < exp; ++k) {
    if (r > cap / base) return cap + 1;
    r *= base;
  }
  return r;
}

}  // namespace

grid_cube::grid_cube(int m, int n, std::vector<vertex_t> labels)
    : m_(m), n_(n), labels_(std::move(labels)) {
  if (m < 0 || n < 0) throw invalid_argument("grid cube needs m >= 0 and n >= 0");
  if (labels_.size() != grid_shape::cube(m, n).size())
    throw invalid_argument("grid cube label count does not match (m+1)^n");
}

grid_cube grid_cube::constant(int m, int n, vertex_t v) {
  return grid_cube(m, n, std::vector<vertex_t>(grid_shape::cube(m, n).size(), v));
}

bool grid_cube::is_graph_map(const graph& g) const {
  for (vertex_t v : labels_)
    if (v >= g.vertex_count()) return false;
  bool ok = true;
  shape().for_each_edge([&](std::size_t a, std::size_t b) {
    if (ok && !g.adjacent_or_equal(labels_[a], labels_[b])) ok = false;
  });
  return ok;
}

grid_cube grid_cube::face(int i, int eps) const {
  return grid_cube(m_, n_ - 1, gather(labels_, face_index_map(m_, n_, i, eps)));
}

grid_cube grid_cube::degeneracy(int i) const {
  return grid_cube(m_, n_ + 1, gather(labels_, degeneracy_index_map(m_, n_, i)));
}

grid_cube grid_cube::connection(int i, int eps) const {
  return grid_cube(m_, n_ + 1, gather(labels_, connection_index_map(m_, n_, i, eps)));
}

bool grid_cube::is_degenerate() const {
  for (int i = 1; i <= n_; ++i)
    if (face(i, 0).degeneracy(i) == *this) return true;
  return false;
}

bool grid_cube::is_connection() const {
  for (int i = 1; i < n_; ++i)
    for (int e = 0; e < 2; ++e)
      if (face(i + 1, e).connection(i, e) == *this) return true;
  return false;
}

grid_cube star_map(const grid_cube& x, side s) {
  const int m = x.level(), n = x.dim();
  auto target = grid_shape::cube(m + 1, n);
  auto source = x.shape();
  std::vector<vertex_t> out(target.size());
  point_t v(n);
  for (std::size_t k = 0; k < target.size(); ++k) {
    target.point(k, v);
    for (auto& c : v) c = static_cast<int>(s == side::l ? l_of(c) : r_of(c, m));
    out[k] = x.labels()[source.index(v)];
  }
  return grid_cube(m + 1, n, std::move(out));
}

grid_cube c_star(const grid_cube& x, int times) {
  grid_cube y = x;
  for (int t = 0; t < times; ++t) y = star_map(star_map(y, side::l), side::r);
  return y;
}

grid_cube precompose(const grid_cube& x, const grid_map& f) {
  if (!(f.codomain == x.shape())) throw invalid_argument("precompose: grid mismatch");
  const auto& sides = f.domain.sides();
  if (!sides.empty() && std::adjacent_find(sides.begin(), sides.end(), std::not_equal_to<>()) !=
                            sides.end())
    throw invalid_argument("precompose: domain is not a cube");
  std::vector<vertex_t> out(f.domain.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = x.labels()[f.image[k]];
  return grid_cube(sides.empty() ? x.level() : sides[0], f.domain.dim(), std::move(out));
}

std::size_t nerve_truncation::nondegenerate_count(int n) const {
  return static_cast<std::size_t>(std::count(thin_[n].begin(), thin_[n].end(), 0));
}

std::span<const vertex_t> nerve_truncation::labels(int n, cell_t c) const {
  const std::size_t w = grid_shape::cube(m_, n).size();
  return std::span<const vertex_t>(cells_[n]).subspan(c * w, w);
}

grid_cube nerve_truncation::cube(int n, cell_t c) const {
  auto l = labels(n, c);
  return grid_cube(m_, n, std::vector<vertex_t>(l.begin(), l.end()));
}

std::optional<cell_t> nerve_truncation::find(int n, std::span<const vertex_t> key) const {
  const std::size_t w = grid_shape::cube(m_, n).size();
  if (key.size() != w || key[0] >= g_.vertex_count()) return std::nullopt;
  std::size_t lo = first_index_[n][key[0]], hi = first_index_[n][key[0] + 1];
  const vertex_t* base = cells_[n].data();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (std::lexicographical_compare(base + mid * w, base + (mid + 1) * w, key.begin(), key.end()))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < first_index_[n][key[0] + 1] && std::equal(key.begin(), key.end(), base + lo * w))
    return static_cast<cell_t>(lo);
  return std::nullopt;
}

namespace {

// Backtracking over grid points in row-major order. Each point is checked
// against its already labelled grid neighbours (one coordinate smaller).
class cube_enumerator {
 public:
  cube_enumerator(const graph& g, int m, int n, std::size_t budget, std::atomic<std::size_t>& total,
                  std::atomic<bool>& stop)
      : g_(g), shape_(grid_shape::cube(m, n)), budget_(budget), total_(total), stop_(stop) {
    const std::size_t nv = g.vertex_count();
    closed_.resize(nv);
    for (vertex_t v = 0; v < nv; ++v) {
      auto nb = g.neighbors(v);
      closed_[v].assign(nb.begin(), nb.end());
      closed_[v].insert(std::lower_bound(closed_[v].begin(), closed_[v].end(), v), v);
    }
    if (nv <= 4096) {
      dense_.assign(nv * nv, 0);
      for (vertex_t v = 0; v < nv; ++v)
        for (vertex_t w : closed_[v]) dense_[v * nv + w] = 1;
    }
    back_.resize(shape_.size());
    point_t p(n);
    for (std::size_t k = 0; k < shape_.size(); ++k) {
      shape_.point(k, p);
      for (int j = 0; j < n; ++j)
        if (p[j] > 0) back_[k].push_back(k - shape_.stride(j));
    }
    labels_.resize(shape_.size());
  }

  // Appends every cube with first label v to out, in lexicographic order.
  void run(vertex_t v, std::vector<vertex_t>& out) {
    out_ = &out;
    labels_[0] = v;
    rec(1);
  }

 private:
  bool close(vertex_t a, vertex_t b) const {
    if (!dense_.empty()) return dense_[a * g_.vertex_count() + b] != 0;
    return g_.adjacent_or_equal(a, b);
  }

  void rec(std::size_t k) {
    if (stop_.load(std::memory_order_relaxed)) return;
    if (k == labels_.size()) {
      if (total_.fetch_add(1, std::memory_order_relaxed) + 1 > budget_) {
        stop_ = true;
        throw budget_exceeded("nerve enumeration exceeded the cell budget of " +
                              std::to_string(budget_) + " in dimension " +
                              std::to_string(shape_.dim()));
      }
      out_->insert(out_->end(), labels_.begin(), labels_.end());
      return;
    }
    const auto& back = back_[k];
    for (vertex_t c : closed_[labels_[back[0]]]) {
      bool ok = true;
      for (std::size_t b = 1; b < back.size(); ++b)
        if (!close(labels_[back[b]], c)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      labels_[k] = c;
      rec(k + 1);
    }
  }

  const graph& g_;
  grid_shape shape_;
  std::size_t budget_;
  std::atomic<std::size_t>& total_;
  std::atomic<bool>& stop_;
  std::vector<std::vector<vertex_t>> closed_;
  std::vector<std::uint8_t> dense_;
  std::vector<std::vector<std::size_t>> back_;
  std::vector<vertex_t> labels_;
  std::vector<vertex_t>* out_ = nullptr;
};

std::vector<vertex_t> enumerate_cubes(const graph& g, int m, int n, const nerve_options& opts) {
  const std::size_t nv = g.vertex_count();
  std::vector<std::vector<vertex_t>> by_first(nv);
  std::atomic<std::size_t> total{0};
  std::atomic<bool> stop{false};
  std::atomic<vertex_t> next{0};
  unsigned threads = opts.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                       : opts.threads;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, nv));
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    try {
      cube_enumerator e(g, m, n, opts.budget, total, stop);
      for (vertex_t v = next++; v < nv && !stop; v = next++) e.run(v, by_first[v]);
    } catch (...) {
      stop = true;
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  std::vector<vertex_t> out;
  out.reserve(total.load() * grid_shape::cube(m, n).size());
  for (auto& chunk : by_first) out.insert(out.end(), chunk.begin(), chunk.end());
  return out;
}

// Index maps k -> source such that x is in the image of an operator iff
// x[k] == x[source[k]] for all k.
std::vector<std::vector<std::uint32_t>> thinness_maps(int m, int n) {
  std::vector<std::vector<std::uint32_t>> out;
  auto chain = [](const std::vector<std::uint32_t>& outer, const std::vector<std::uint32_t>& inner) {
    std::vector<std::uint32_t> r(outer.size());
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = inner[outer[k]];
    return r;
  };
  for (int i = 1; i <= n; ++i)
    out.push_back(chain(degeneracy_index_map(m, n - 1, i), face_index_map(m, n, i, 0)));
  for (int i = 1; i < n; ++i)
    for (int e = 0; e < 2; ++e)
      out.push_back(chain(connection_index_map(m, n - 1, i, e), face_index_map(m, n, i + 1, e)));
  return out;
}

}  // namespace

nerve_truncation enumerate_nerve(const graph& g, int m, int max_dim, const nerve_options& opts) {
  if (m < 1) throw invalid_argument("nerve level m must be at least 1");
  if (max_dim < 0) throw invalid_argument("max dimension must be nonnegative");
  if (g.vertex_count() == 0) throw invalid_argument("nerve of the empty graph");
  const std::size_t points = power(static_cast<std::size_t>(m) + 1, max_dim, opts.budget);
  if (points > opts.budget)
    throw budget_exceeded("grid I_" + std::to_string(m) + "^" + std::to_string(max_dim) +
                          " exceeds the point budget of " + std::to_string(opts.budget));

  nerve_truncation t;
  t.g_ = g;
  t.m_ = m;
  std::vector<std::size_t> counts;
  for (int n = 0; n <= max_dim; ++n) {
    t.cells_.push_back(enumerate_cubes(g, m, n, opts));
    const std::size_t w = grid_shape::cube(m, n).size();
    const std::size_t count = t.cells_[n].size() / w;
    if (count >= std::numeric_limits<cell_t>::max())
      throw budget_exceeded("cell ids overflow in dimension " + std::to_string(n));
    counts.push_back(count);
    std::vector<std::size_t> first(g.vertex_count() + 1, 0);
    for (std::size_t c = 0; c < count; ++c) ++first[t.cells_[n][c * w] + 1];
    for (std::size_t v = 0; v < g.vertex_count(); ++v) first[v + 1] += first[v];
    t.first_index_.push_back(std::move(first));

    std::vector<std::uint8_t> thin(count, 0);
    const auto maps = thinness_maps(m, n);
    for (std::size_t c = 0; c < count; ++c) {
      const vertex_t* x = t.cells_[n].data() + c * w;
      for (const auto& src : maps) {
        bool same = true;
        for (std::size_t k = 0; k < w && same; ++k) same = x[k] == x[src[k]];
        if (same) {
          thin[c] = 1;
          break;
        }
      }
    }
    t.thin_.push_back(std::move(thin));
  }

  t.cubical_ = truncated_cubical_set(max_dim, counts);
  auto fill = [&](int n, int target, const std::vector<std::uint32_t>& index_map, auto&& set) {
    const std::size_t w = grid_shape::cube(m, n).size();
    std::vector<vertex_t> buf(index_map.size());
    for (cell_t c = 0; c < counts[n]; ++c) {
      const vertex_t* x = t.cells_[n].data() + static_cast<std::size_t>(c) * w;
      for (std::size_t k = 0; k < buf.size(); ++k) buf[k] = x[index_map[k]];
      auto y = t.find(target, buf);
      if (!y) throw std::logic_error("operator image missing from the nerve");
      set(c, *y);
    }
  };
  for (int n = 0; n <= max_dim; ++n) {
    for (int i = 1; i <= n; ++i)
      for (int e = 0; e < 2; ++e)
        fill(n, n - 1, face_index_map(m, n, i, e),
             [&](cell_t c, cell_t y) { t.cubical_.set_face(n, c, i, e, y); });
    if (n == max_dim) continue;
    for (int i = 1; i <= n + 1; ++i)
      fill(n, n + 1, degeneracy_index_map(m, n, i),
           [&](cell_t c, cell_t y) { t.cubical_.set_degeneracy(n, c, i, y); });
    for (int i = 1; i <= n; ++i)
      for (int e = 0; e < 2; ++e)
        fill(n, n + 1, connection_index_map(m, n, i, e),
             [&](cell_t c, cell_t y) { t.cubical_.set_connection(n, c, i, e, y); });
  }
  return t;
}

side chain_side(int k) { return k % 2 == 1 ? side::l : side::r; }

grid_cube push_forward(const grid_cube& x, int target_level) {
  if (target_level < x.level()) throw invalid_argument("push_forward: target below current level");
  grid_cube y = x;
  while (y.level() < target_level) y = star_map(y, chain_side(y.level()));
  return y;
}

bool colimit_equal(const stable_cube& a, const stable_cube& b) {
  if (a.rep.dim() != b.rep.dim()) return false;
  const int level = std::max(a.level(), b.level());
  return push_forward(a.rep, level).labels() == push_forward(b.rep, level).labels();
}

stable_cube canonicalize(const grid_cube& x) {
  grid_cube y = x;
  while (y.level() > 1) {
    const int k = y.level();
    const side s = chain_side(k - 1);
    // Preimage candidate through a section of l (u -> u+1) or r (u -> u).
    auto source = y.shape();
    auto target = grid_shape::cube(k - 1, y.dim());
    std::vector<vertex_t> pre(target.size());
    point_t u(y.dim());
    for (std::size_t idx = 0; idx < target.size(); ++idx) {
      target.point(idx, u);
      if (s == side::l)
        for (auto& c : u) ++c;
      pre[idx] = y.labels()[source.index(u)];
    }
    grid_cube candidate(k - 1, y.dim(), std::move(pre));
    if (star_map(candidate, s) != y) break;
    y = std::move(candidate);
  }
  return {y};
}

product_report product_compare(const graph& g, const graph& h, int m, int max_dim,
                               const nerve_options& opts) {
  const graph p = categorical_product(g, h);
  const auto np = enumerate_nerve(p, m, max_dim, opts);
  const auto ng = enumerate_nerve(g, m, max_dim, opts);
  const auto nh = enumerate_nerve(h, m, max_dim, opts);
  const auto wh = static_cast<vertex_t>(h.vertex_count());
  product_report report;
  // Cell pairs (a, b) of every dimension, indexed by product cell.
  std::vector<std::vector<std::pair<cell_t, cell_t>>> pairs(max_dim + 1);
  for (int n = 0; n <= max_dim; ++n) {
    report.product_counts.push_back(np.cell_count(n));
    report.left_counts.push_back(ng.cell_count(n));
    report.right_counts.push_back(nh.cell_count(n));
    const std::size_t w = grid_shape::cube(m, n).size();
    std::vector<vertex_t> a(w), b(w);
    std::vector<std::uint8_t> seen(ng.cell_count(n) * nh.cell_count(n), 0);
    for (cell_t z = 0; z < np.cell_count(n); ++z) {
      auto labels = np.labels(n, z);
      for (std::size_t k = 0; k < w; ++k) {
        a[k] = labels[k] / wh;
        b[k] = labels[k] % wh;
      }
      auto ia = ng.find(n, a);
      auto ib = nh.find(n, b);
      if (!ia || !ib) {
        report.bijective = false;
        pairs[n].emplace_back(0, 0);
        continue;
      }
      auto& s = seen[static_cast<std::size_t>(*ia) * nh.cell_count(n) + *ib];
      if (s) report.bijective = false;
      s = 1;
      pairs[n].emplace_back(*ia, *ib);
    }
    if (np.cell_count(n) != seen.size()) report.bijective = false;
  }
  if (!report.bijective) return report;

  const auto& xp = np.cubical();
  const auto& xg = ng.cubical();
  const auto& xh = nh.cubical();
  for (int n = 0; n <= max_dim && report.commutes; ++n)
    for (cell_t z = 0; z < np.cell_count(n) && report.commutes; ++z) {
      auto [a, b] = pairs[n][z];
      auto expect = [&](int target, cell_t pz, cell_t ga, cell_t hb) {
        if (pairs[target][pz] != std::make_pair(ga, hb)) report.commutes = false;
      };
      for (int i = 1; i <= n; ++i)
        for (int e = 0; e < 2; ++e)
          expect(n - 1, xp.face(n, z, i, e), xg.face(n, a, i, e), xh.face(n, b, i, e));
      if (n == max_dim) continue;
      for (int i = 1; i <= n + 1; ++i)
        expect(n + 1, xp.degeneracy(n, z, i), xg.degeneracy(n, a, i), xh.degeneracy(n, b, i));
      for (int i = 1; i <= n; ++i)
        for (int e = 0; e < 2; ++e)
          expect(n + 1, xp.connection(n, z, i, e), xg.connection(n, a, i, e),
                 xh.connection(n, b, i, e));
    }
  return report;
}

}  // namespace dht
