#include <doctest.h>

#include <bit>
#include <map>
#include <numeric>
#include <random>

#include <boost/multiprecision/cpp_int.hpp>

#include "dht/errors.hpp"
#include "dht/homology.hpp"
#include "dht/random.hpp"

using namespace dht;
using rational = boost::multiprecision::cpp_rational;

namespace {

std::vector<long long> factors(const smith_result& r) {
  std::vector<long long> out;
  for (const auto& f : r.factors) out.push_back(f.convert_to<long long>());
  return out;
}

long long det(std::vector<std::vector<long long>> a) {
  const std::size_t n = a.size();
  if (n == 1) return a[0][0];
  long long d = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<long long>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<long long> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(a[r][k]);
      minor.push_back(row);
    }
    d += (c % 2 ? -1 : 1) * a[0][c] * det(minor);
  }
  return d;
}

// gcd of all k x k minors.
long long determinantal_divisor(const std::vector<std::vector<long long>>& a, std::size_t k) {
  const std::size_t R = a.size(), C = a[0].size();
  long long g = 0;
  for (unsigned rm = 0; rm < (1u << R); ++rm) {
    if (std::popcount(rm) != static_cast<int>(k)) continue;
    for (unsigned cm = 0; cm < (1u << C); ++cm) {
      if (std::popcount(cm) != static_cast<int>(k)) continue;
      std::vector<std::vector<long long>> sub;
      for (std::size_t r = 0; r < R; ++r) {
        if (!(rm >> r & 1)) continue;
        std::vector<long long> row;
        for (std::size_t c = 0; c < C; ++c)
          if (cm >> c & 1) row.push_back(a[r][c]);
        sub.push_back(row);
      }
      g = std::gcd(g, std::abs(det(sub)));
    }
  }
  return g;
}

std::size_t rational_rank(std::vector<std::vector<rational>> a) {
  std::size_t rank = 0;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
    std::size_t p = rank;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t r = 0; r < a.size(); ++r)
      if (r != rank && a[r][c] != 0) {
        const rational f = a[r][c] / a[rank][c];
        for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * a[rank][k];
      }
    ++rank;
  }
  return rank;
}

// Rational reduced H_1 of the 1-nerve, from scratch: squares (a b / c d) with
// a-b, c-d, a-c, b-d edges or equal, thin squares dropped.
std::size_t oracle_h1_rank(const graph& g, vertex_t base) {
  const vertex_t V = static_cast<vertex_t>(g.vertex_count());
  auto ok = [&](vertex_t u, vertex_t v) { return g.adjacent_or_equal(u, v); };
  std::vector<vertex_t> c0;
  for (vertex_t v = 0; v < V; ++v)
    if (v != base) c0.push_back(v);
  std::vector<std::pair<vertex_t, vertex_t>> c1;
  std::map<std::pair<vertex_t, vertex_t>, std::size_t> id1;
  for (vertex_t a = 0; a < V; ++a)
    for (vertex_t b = 0; b < V; ++b)
      if (a != b && ok(a, b)) {
        id1[{a, b}] = c1.size();
        c1.push_back({a, b});
      }
  std::vector<std::vector<rational>> d1(c0.size(), std::vector<rational>(c1.size()));
  for (std::size_t k = 0; k < c1.size(); ++k) {
    auto row = [&](vertex_t v) { return v < base ? v : v - 1; };
    if (c1[k].second != base) d1[row(c1[k].second)][k] += 1;
    if (c1[k].first != base) d1[row(c1[k].first)][k] -= 1;
  }
  std::vector<std::vector<rational>> d2(c1.size());
  for (vertex_t a = 0; a < V; ++a)
    for (vertex_t b = 0; b < V; ++b)
      for (vertex_t c = 0; c < V; ++c)
        for (vertex_t d = 0; d < V; ++d) {
          if (!ok(a, b) || !ok(c, d) || !ok(a, c) || !ok(b, d)) continue;
          // Thin: degenerate in a direction or a connection (max or min).
          const bool degenerate = (a == c && b == d) || (a == b && c == d);
          const bool connection = (b == d && c == d) || (a == b && a == c);
          if (degenerate || connection) continue;
          // Faces: d(1,0) = (a,b), d(1,1) = (c,d), d(2,0) = (a,c), d(2,1) = (b,d).
          std::vector<rational> col(c1.size());
          auto add = [&](vertex_t x, vertex_t y, int s) {
            if (x != y) col[id1.at({x, y})] += s;
          };
          add(c, d, -1);
          add(a, b, 1);
          add(b, d, 1);
          add(a, c, -1);
          for (std::size_t r = 0; r < c1.size(); ++r) d2[r].push_back(col[r]);
        }
  const std::size_t z1 = c1.size() - rational_rank(d1);
  return z1 - rational_rank(d2);
}

}  // namespace

TEST_CASE("smith normal form examples") {
  CHECK(factors(smith_normal_form(int_matrix{{2, 0}, {0, 3}})) == std::vector<long long>{1, 6});
  CHECK(factors(smith_normal_form(int_matrix{{2, 4}, {6, 8}})) == std::vector<long long>{2, 4});
  const auto z = smith_normal_form(int_matrix(3, 4));
  CHECK(z.rank == 0);
  CHECK(z.factors.empty());
}

TEST_CASE("smith normal form against determinantal divisors") {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 60; ++t) {
    const std::size_t R = 1 + uniform_index(rng, 4), C = 1 + uniform_index(rng, 4);
    std::vector<std::vector<long long>> a(R, std::vector<long long>(C));
    int_matrix m(R, C);
    for (std::size_t r = 0; r < R; ++r)
      for (std::size_t c = 0; c < C; ++c) {
        a[r][c] = static_cast<long long>(uniform_index(rng, 13)) - 6;
        if (uniform_index(rng, 3) == 0) a[r][c] = 0;
        m(r, c) = a[r][c];
      }
    const auto s = smith_normal_form(m);
    long long prod = 1;
    for (std::size_t k = 1; k <= std::min(R, C); ++k) {
      const long long dk = determinantal_divisor(a, k);
      if (k <= s.rank) {
        prod *= s.factors[k - 1].convert_to<long long>();
        CHECK(prod == dk);
      } else {
        CHECK(dk == 0);
      }
    }
    for (std::size_t k = 1; k < s.factors.size(); ++k)
      CHECK(s.factors[k] % s.factors[k - 1] == 0);
  }
}

TEST_CASE("boundary squares to zero") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 5; ++t) {
    const graph g = random_graph(3 + uniform_index(rng, 3), 0.5, rng);
    const auto nt = enumerate_nerve(g, 1, 3);
    CHECK(boundary_squared_zero(normalized_complex(nt, std::nullopt)));
    CHECK(boundary_squared_zero(normalized_complex(nt, vertex_t{0})));
  }
}

TEST_CASE("first homology of cycles") {
  CHECK(reduced_discrete_homology(cycle(3), 0, 1).trivial());
  CHECK(reduced_discrete_homology(cycle(4), 0, 1).trivial());
  for (std::size_t m = 5; m <= 8; ++m) {
    const auto h = reduced_discrete_homology(cycle(m), 0, 1);
    CHECK(h.rank == 1);
    CHECK(h.torsion.empty());
    CHECK(h.pretty() == "Z");
  }
}

TEST_CASE("homology agrees with the rational oracle") {
  std::mt19937_64 rng(37);
  std::vector<graph> gs = {cycle(3), cycle(4), cycle(5), cycle(6), interval(3),
                           disjoint_union(cycle(5), interval(1))};
  for (int t = 0; t < 6; ++t) gs.push_back(random_graph(3 + uniform_index(rng, 4), 0.45, rng));
  for (const auto& g : gs) CHECK(reduced_discrete_homology(g, 0, 1).rank == oracle_h1_rank(g, 0));
}

TEST_CASE("intervals and reduced zeroth homology") {
  for (std::size_t m = 1; m <= 3; ++m)
    for (int k = 1; k <= 2; ++k) CHECK(reduced_discrete_homology(interval(m), 0, k).trivial());
  CHECK(reduced_discrete_homology(cycle(5), 2, 0).trivial());
  CHECK(reduced_discrete_homology(disjoint_union(cycle(3), interval(1)), 0, 0).rank == 1);
}

TEST_CASE("homology needs the next dimension") {
  const auto nt = enumerate_nerve(cycle(5), 1, 1);
  CHECK_THROWS_AS(homology(normalized_complex(nt, vertex_t{0}), 1), insufficient_truncation);
}

TEST_CASE("pretty printing") {
  homology_group h;
  CHECK(h.pretty() == "0");
  h.rank = 2;
  h.torsion = {2};
  CHECK(h.pretty() == "Z^2 ⊕ Z/2");
}
