#include <doctest.h>

#include <map>
#include <numeric>
#include <random>
#include <set>

#include "dht/errors.hpp"
#include "dht/homotopy.hpp"
#include "dht/random.hpp"

using namespace dht;

namespace {

// All label sequences of length 2L+1 from v to v, odometer order.
std::vector<path_t> brute_loops(const graph& g, vertex_t v, int L) {
  const std::size_t len = 2 * L + 1, V = g.vertex_count();
  std::vector<path_t> out;
  path_t a(len, 0);
  while (true) {
    bool ok = a.front() == v && a.back() == v;
    for (std::size_t t = 1; t < len && ok; ++t) ok = g.adjacent_or_equal(a[t - 1], a[t]);
    if (ok) out.push_back(a);
    std::size_t p = len;
    while (p > 0 && ++a[p - 1] == V) a[--p] = 0;
    if (p == 0) break;
  }
  return out;
}

// Components of the loop graph by union-find over all pairs.
std::vector<std::size_t> brute_components(const graph& g, const std::vector<path_t>& loops) {
  std::vector<std::size_t> parent(loops.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t a = 0; a < loops.size(); ++a)
    for (std::size_t b = a + 1; b < loops.size(); ++b) {
      bool close = true;
      for (std::size_t t = 0; t < loops[a].size() && close; ++t)
        close = g.adjacent_or_equal(loops[a][t], loops[b][t]);
      if (close) parent[root(a)] = root(b);
    }
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < loops.size(); ++a) out.push_back(root(a));
  return out;
}

long step_sum_winding(const path_t& p, long m) {
  long s = 0;
  for (std::size_t t = 1; t < p.size(); ++t) {
    const long d = (static_cast<long>(p[t]) - static_cast<long>(p[t - 1]) + m) % m;
    s += d == 1 ? 1 : d == m - 1 ? -1 : 0;
  }
  return s / m;
}

}  // namespace

TEST_CASE("loop construction and padding") {
  const graph c5 = cycle(5);
  CHECK_THROWS_AS(make_loop(c5, 0, {0, 2, 0}), invalid_argument);
  CHECK_THROWS_AS(make_loop(c5, 0, {0, 1}), invalid_argument);
  CHECK_THROWS_AS(make_loop(c5, 0, {1, 0, 1}), invalid_argument);
  const auto p = make_loop(c5, 0, {0, 1, 0});
  CHECK(p.half_length == 1);
  CHECK(pad(p, 3).labels == path_t{0, 0, 0, 1, 0, 0, 0});
  CHECK(constant_loop(2, 1).labels == path_t{2, 2, 2});
}

TEST_CASE("path concatenation") {
  CHECK(concatenate(path_t{0, 1}, path_t{1, 2}) == path_t{0, 1, 2});
  CHECK(reverse(path_t{0, 1, 2}) == path_t{2, 1, 0});
  const graph c5 = cycle(5);
  const auto w = make_loop(c5, 0, {0, 1, 2, 3, 4, 0, 0});
  const auto ww = concatenate(w, w);
  CHECK(winding_number(ww.labels, 5) == 2);
  CHECK(step_sum_winding(ww.labels, 5) == 2);
  CHECK(ww.labels.front() == 0);
  CHECK(ww.labels.back() == 0);
}

TEST_CASE("winding numbers") {
  CHECK(winding_number(path_t{0, 1, 2, 3, 4, 0}, 5) == 1);
  CHECK(winding_number(path_t{0, 4, 3, 2, 1, 0}, 5) == -1);
  CHECK(winding_number(path_t{0, 1, 0}, 5) == 0);
  std::mt19937_64 rng(53);
  for (int k = 0; k < 50; ++k) {
    path_t p{0};
    for (int t = 0; t < 30; ++t) {
      const long d = static_cast<long>(uniform_index(rng, 3)) - 1;
      p.push_back(static_cast<vertex_t>((p.back() + 6 + d) % 6));
    }
    while (p.back() != 0) p.push_back(p.back() + 1 == 6 ? 0 : p.back() + 1);
    CHECK(winding_number(p, 6) == step_sum_winding(p, 6));
  }
}

TEST_CASE("path space ranks are lexicographic") {
  const graph g = cycle(5);
  const path_space s(g, 0, 2, 4);
  path_t prev;
  for (std::uint64_t r = 0; r < s.size(); ++r) {
    const auto p = s.unrank(r);
    CHECK(p.front() == 0);
    CHECK(p.back() == 2);
    CHECK(s.rank(p) == r);
    if (r > 0) CHECK(prev < p);
    prev = p;
  }
  CHECK_FALSE(s.rank(path_t{0, 2, 2, 2, 2}).has_value());
}

TEST_CASE("loop census matches brute force") {
  for (std::size_t m : {3, 4, 5}) {
    const graph g = cycle(m);
    for (int L = 1; L <= 3; ++L) {
      const auto loops = brute_loops(g, 0, L);
      const auto lg = loop_graph(g, 0, L);
      REQUIRE(lg.size() == loops.size());
      for (std::uint64_t r = 0; r < loops.size(); ++r) CHECK(lg.loop(r).labels == loops[r]);

      const auto roots = brute_components(g, loops);
      const auto& comp = lg.components();
      CHECK(comp.count == std::set<std::size_t>(roots.begin(), roots.end()).size());
      for (std::size_t a = 0; a < loops.size(); ++a)
        for (std::size_t b = a + 1; b < loops.size(); b += 3)
          CHECK((roots[a] == roots[b]) == (comp.component_of[a] == comp.component_of[b]));
    }
  }
}

TEST_CASE("explicit loop graph neighbours") {
  const graph g = cycle(4);
  const auto lg = loop_graph(g, 0, 2);
  const auto eg = lg.as_graph();
  for (std::uint64_t a = 0; a < lg.size(); ++a)
    for (std::uint64_t b = 0; b < lg.size(); ++b) {
      bool close = a != b;
      const auto p = lg.loop(a).labels, q = lg.loop(b).labels;
      for (std::size_t t = 0; t < p.size(); ++t) close = close && g.adjacent_or_equal(p[t], q[t]);
      CHECK(eg.adjacent(a, b) == close);
    }
  CHECK(lg.find(make_loop(g, 0, {0, 1, 2, 3, 0})).has_value());
  CHECK(loop_graph(interval(0), 0, 3).size() == 1);
  CHECK_THROWS_AS(lg.as_graph(3), budget_exceeded);
}

TEST_CASE("winding is constant on components of C5 loops") {
  const graph g = cycle(5);
  for (int L = 2; L <= 5; ++L) {
    const auto lg = loop_graph(g, 0, L);
    std::map<std::uint32_t, long> seen;
    std::set<long> windings;
    for (std::uint64_t r = 0; r < lg.size(); ++r) {
      const long w = step_sum_winding(lg.loop(r).labels, 5);
      windings.insert(w);
      const auto [it, fresh] = seen.emplace(lg.components().component_of[r], w);
      CHECK(it->second == w);
    }
    CHECK(lg.components().count == windings.size());
    if (L == 2) CHECK(windings == std::set<long>{0});
  }
}

TEST_CASE("a1 profiles") {
  const auto c4 = a1_estimate(cycle(4), 0, 5);
  for (const auto& row : c4) {
    CHECK(row.components == 1);
    CHECK(row.stabilized);
  }
  const auto c5 = a1_estimate(cycle(5), 0, 5);
  const std::vector<std::size_t> expect{1, 1, 3, 3, 5};
  for (std::size_t k = 0; k < c5.size(); ++k) CHECK(c5[k].components == expect[k]);
  for (const auto& row : a1_estimate(interval(3), 0, 4)) {
    CHECK(row.components == 1);
    CHECK(row.stabilized);
  }
}

TEST_CASE("based homotopy") {
  const graph c5 = cycle(5);
  const auto p = make_loop(c5, 0, {0, 1, 2, 3, 4, 0, 0});
  const auto self = based_homotopic(c5, p, pad(p, 4), 4);
  REQUIRE(self.has_value());
  CHECK(self->size() == 1);

  const auto back = make_loop(c5, 0, {0, 1, 0});
  const auto flat = based_homotopic(c5, back, constant_loop(0, 1), 1);
  REQUIRE(flat.has_value());
  CHECK(flat->size() == 2);

  const auto inv = make_loop(c5, 0, {0, 4, 3, 2, 1, 0, 0});
  for (int L = 3; L <= 5; ++L) CHECK_FALSE(based_homotopic(c5, p, inv, L).has_value());

  // A witness is a chain of pointwise-close loops.
  const auto q = make_loop(c5, 0, {0, 0, 1, 2, 3, 4, 0});
  const auto w = based_homotopic(c5, p, q, 3);
  REQUIRE(w.has_value());
  for (std::size_t k = 1; k < w->size(); ++k)
    for (std::size_t t = 0; t < 7; ++t)
      CHECK(c5.adjacent_or_equal((*w)[k - 1].labels[t], (*w)[k].labels[t]));
}

TEST_CASE("paths rel endpoints") {
  const graph c4 = cycle(4);
  // Middle labels 1 and 3 are not adjacent, so no homotopy at length 2.
  CHECK_FALSE(path_homotopic(c4, path_t{0, 1, 2}, path_t{0, 3, 2}).has_value());
  const path_t p{0, 1, 2, 2}, q{0, 3, 2, 2};
  const auto w = path_homotopic(c4, p, q);
  REQUIRE(w.has_value());
  CHECK(w->front() == p);
  CHECK(w->back() == q);
  for (std::size_t k = 1; k < w->size(); ++k)
    for (std::size_t t = 0; t < p.size(); ++t)
      CHECK(c4.adjacent_or_equal((*w)[k - 1][t], (*w)[k][t]));
  const graph c5 = cycle(5);
  CHECK_FALSE(path_homotopic(c5, path_t{0, 1, 2, 2}, path_t{0, 4, 3, 2}).has_value());
}
