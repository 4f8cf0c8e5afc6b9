#include <doctest.h>

#include <random>

#include "dht/errors.hpp"
#include "dht/kan.hpp"
#include "dht/random.hpp"

using namespace dht;

TEST_CASE("open box realization at level one") {
  // The square with its (2,1)-face removed: three edges, four vertices.
  open_box_realization box(1, 2, 2, 1);
  CHECK(box.vertices().size() == 4);
  int edges = 0;
  box.grid().for_each_edge([&](std::size_t a, std::size_t b) {
    edges += box.adjacent(box.grid().point(a), box.grid().point(b));
  });
  CHECK(edges == 3);
  CHECK_FALSE(box.adjacent(point_t{0, 1}, point_t{1, 1}));
  CHECK(box.faces_through(point_t{0, 0}) == std::vector<face_index>{{1, 0}, {2, 0}});
}

TEST_CASE("open box edges are induced from level two on") {
  for (int n = 2; n <= 3; ++n)
    for (int i = 1; i <= n; ++i)
      for (int e = 0; e < 2; ++e) {
        open_box_realization box(2, n, i, e);
        box.grid().for_each_edge([&](std::size_t a, std::size_t b) {
          const auto p = box.grid().point(a), q = box.grid().point(b);
          CHECK(box.adjacent(p, q) == (box.contains(p) && box.contains(q)));
        });
      }
}

TEST_CASE("phi value at an interior column") {
  const phi_parameters p(2, 2, 2, 1);
  CHECK(p(point_t{3, 3}) == point_t{1, 0});
  // Coordinates other than i at 0 or 3m land on 0 or m.
  CHECK(p(point_t{0, 5})[0] == 0);
  CHECK(p(point_t{6, 1})[0] == 2);
}

TEST_CASE("phi cross-sections for the (3,1)-box at level two") {
  const phi_parameters p(2, 3, 3, 1);
  for (int a = 0; a <= 6; ++a)
    for (int b = 0; b <= 6; ++b) {
      const int d = p.dist(point_t{a, b});
      for (int c = 0; c <= 6; ++c) {
        const int out = p(point_t{a, b, c})[2];
        CAPTURE(a);
        CAPTURE(b);
        CAPTURE(c);
        if (c <= 2 || d == 0) CHECK(out == 0);
        if (c == 3 && d >= 2) CHECK(out == 1);
        if (c >= 4 && d == 1) CHECK(out == 1);
        if (c >= 4 && d >= 2) CHECK(out == 2);
      }
    }
}

TEST_CASE("phi passes exhaustively") {
  for (int m = 1; m <= 2; ++m)
    for (int n = 1; n <= 3; ++n)
      for (int i = 1; i <= n; ++i)
        for (int e = 0; e < 2; ++e) {
          const auto r = verify_phi(phi_parameters(m, n, i, e));
          CHECK(r.ok());
          CHECK_FALSE(r.witness.has_value());
        }
}

TEST_CASE("mutated phi is rejected with a witness") {
  const phi_parameters p(2, 2, 2, 1);
  // Clamp bound of the i-th coordinate off by one.
  auto broken = [&p](std::span<const int> v) {
    point_t out = p(v);
    const int d = p.dist(std::vector<int>{v[0]});
    const int t = std::max(p.alpha(1 - p.eps, v[1]) - 1, 0);
    out[1] = (1 - p.eps) * p.m +
             (2 * p.eps - 1) * phi_parameters::bound(t, d - p.alpha(p.eps, v[1]));
    return out;
  };
  const auto r = verify_phi(p, broken);
  CHECK_FALSE(r.triangle_commutes);
  CHECK(r.witness.has_value());
}

TEST_CASE("lambda figure at n = 1") {
  // Rows t = 0, 1; columns v = 0, 1, 2.
  const std::vector<std::vector<int>> expect = {{0, 0, 1}, {0, 1, 2}};
  for (int t = 0; t <= 1; ++t)
    for (int v = 0; v <= 2; ++v)
      CHECK(default_step(std::vector<int>{v}, t, 1, 0, side::l) == point_t{expect[t][v]});
}

TEST_CASE("lambda cross-sections at n = 2") {
  // Panels indexed [j][t][v2][v1] -> image pair.
  using P = std::pair<int, int>;
  const P fig[2][2][3][3] = {
      {{{{0, 0}, {0, 0}, {1, 0}}, {{0, 0}, {0, 0}, {1, 0}}, {{0, 1}, {0, 1}, {1, 1}}},
       {{{0, 0}, {1, 0}, {2, 0}}, {{0, 0}, {1, 0}, {2, 0}}, {{0, 1}, {1, 1}, {2, 1}}}},
      {{{{0, 0}, {1, 0}, {2, 0}}, {{0, 0}, {1, 0}, {2, 0}}, {{0, 1}, {1, 1}, {2, 1}}},
       {{{0, 0}, {1, 0}, {2, 0}}, {{0, 1}, {1, 1}, {2, 1}}, {{0, 2}, {1, 2}, {2, 2}}}}};
  for (int j = 0; j <= 1; ++j)
    for (int t = 0; t <= 1; ++t)
      for (int v2 = 0; v2 <= 2; ++v2)
        for (int v1 = 0; v1 <= 2; ++v1) {
          const auto [a, b] = fig[j][t][v2][v1];
          CHECK(default_step(std::vector<int>{v1, v2}, t, 1, j, side::l) == point_t{a, b});
        }
}

TEST_CASE("rho steps mirror lambda") {
  CHECK(default_step(std::vector<int>{0, 2}, 0, 1, 0, side::r) == point_t{0, 1});
  CHECK(default_step(std::vector<int>{1, 2}, 1, 1, 0, side::r) == point_t{1, 1});
}

TEST_CASE("lambda-bar bottom slab factors through l") {
  for (int m = 1; m <= 2; ++m)
    for (int n = 1; n <= 3; ++n)
      for (int j = 0; j < n; ++j) {
        const auto f = lstepbar(m, n, j, side::l);
        CHECK(f.codomain == step_codomain(m, n, j));
        for (std::size_t k = 0; k < f.domain.size(); ++k) {
          const auto v = f.domain.point(k);
          if (v[n] != 0) continue;
          point_t expect(v.begin(), v.begin() + n);
          for (int c = j; c < n; ++c) expect[c] = l_of(expect[c]);
          CHECK(f(v) == expect);
        }
      }
}

TEST_CASE("step map face factorizations hold exhaustively") {
  for (int m = 1; m <= 3; ++m)
    for (int n = 1; n <= 3; ++n)
      for (int j = 0; j < n; ++j)
        for (side s : {side::l, side::r}) {
          const auto r = verify_step_props(m, n, j, s);
          CHECK(r.ok());
          CHECK_FALSE(r.checks.empty());
        }
}

TEST_CASE("mutated step map names a failing face") {
  auto broken = [](std::span<const int> v, int t, int m, int j, side s) {
    point_t out = default_step(v, t, m, j, s);
    if (t == 1 && v[0] == 0) out[0] = std::min(out[0] + 1, m + 1);
    return out;
  };
  const auto r = verify_step_props(1, 2, 0, side::l, broken);
  REQUIRE_FALSE(r.ok());
  bool named = false;
  for (const auto& c : r.checks)
    if (!c.holds) named = named || (c.witness.has_value() && c.i >= 1 && !c.kind.empty());
  CHECK(named);
}

TEST_CASE("constant box gives a constant filler") {
  cube_box box{2, {1, 0}, {}};
  for (int s = 0; s < 4; ++s) box.faces.emplace_back(grid_cube::constant(1, 1, 3));
  box.faces[face_slot(1, 0)].reset();
  const auto f = fill_open_box(cycle(5), box);
  CHECK(f == grid_cube::constant(3, 2, 3));
}

TEST_CASE("filler of a forgotten face from an existing square") {
  const graph g = cycle(5);
  const auto t = enumerate_nerve(g, 1, 2);
  std::mt19937_64 rng(41);
  for (int k = 0; k < 30; ++k) {
    const auto x = t.cube(2, static_cast<cell_t>(uniform_index(rng, t.cell_count(2))));
    boundary_family<grid_cube> b{2, {}};
    for (int i = 1; i <= 2; ++i)
      for (int e = 0; e < 2; ++e) b.faces.push_back(x.face(i, e));
    const int i = 1 + static_cast<int>(uniform_index(rng, 2));
    const int e = static_cast<int>(uniform_index(rng, 2));
    const auto box = forget_face(b, i, e);
    const auto f = fill_open_box(g, box);
    CHECK(f.level() == 3);
    CHECK(f.is_graph_map(g));
    CHECK_FALSE(check_filler_contract(box, f).has_value());
  }
}

TEST_CASE("random boxes over random graphs") {
  std::mt19937_64 rng(43);
  for (int k = 0; k < 40; ++k) {
    const graph g = random_graph(3 + uniform_index(rng, 6), 0.2 + 0.6 * uniform_unit(rng), rng);
    const int n = 2 + static_cast<int>(uniform_index(rng, 2));
    const int i = 1 + static_cast<int>(uniform_index(rng, n));
    const int e = static_cast<int>(uniform_index(rng, 2));
    const auto box = random_open_box(g, 1, n, i, e, rng);
    CHECK_FALSE(find_incompatibility(box, [](const grid_cube& c, int a, int b) {
                  return c.face(a, b);
                }).has_value());
    const auto f = fill_open_box(g, box);
    CHECK(f.is_graph_map(g));
    CHECK_FALSE(check_filler_contract(box, f).has_value());
  }
}

TEST_CASE("incompatible box is rejected") {
  cube_box box{2, {1, 0}, {}};
  for (int s = 0; s < 4; ++s) box.faces.emplace_back(grid_cube::constant(1, 1, 0));
  box.faces[face_slot(1, 0)].reset();
  box.faces[face_slot(2, 1)] = grid_cube(1, 1, {1, 1});
  CHECK_THROWS_AS(fill_open_box(cycle(5), box), invalid_argument);
}

TEST_CASE("concatenation squares") {
  const grid_cube f(1, 1, {0, 1}), g(1, 1, {1, 2});
  const auto eta = concatenation_square(f, g);
  CHECK(eta.level() == 2);
  CHECK(eta.face(2, 0).labels() == std::vector<vertex_t>{0, 1, 2});
  CHECK(eta.is_graph_map(interval(2)));
  CHECK(check_concatenation_square(f, g, eta).empty());
  CHECK(concatenate_paths(f, g).labels() == std::vector<vertex_t>{0, 1, 2});

  const auto c = grid_cube::constant(2, 1, 4);
  CHECK(concatenation_square(c, c) == grid_cube::constant(4, 2, 4));

  std::mt19937_64 rng(47);
  const graph c5 = cycle(5);
  for (int k = 0; k < 20; ++k) {
    std::vector<vertex_t> p{static_cast<vertex_t>(uniform_index(rng, 5))};
    const int M = 1 + static_cast<int>(uniform_index(rng, 3));
    const int N = 1 + static_cast<int>(uniform_index(rng, 3));
    for (int s = 0; s < M + N; ++s) {
      const auto nb = c5.neighbors(p.back());
      const auto r = uniform_index(rng, nb.size() + 1);
      p.push_back(r == nb.size() ? p.back() : nb[r]);
    }
    const grid_cube a(M, 1, std::vector<vertex_t>(p.begin(), p.begin() + M + 1));
    const grid_cube b(N, 1, std::vector<vertex_t>(p.begin() + M, p.end()));
    const auto sq = concatenation_square(a, b);
    CHECK(sq.is_graph_map(c5));
    CHECK(check_concatenation_square(a, b, sq).empty());
  }

  const auto bad = grid_cube::constant(2, 2, 0);
  CHECK_FALSE(check_concatenation_square(f, g, bad).empty());
}

TEST_CASE("path padding") {
  const grid_cube f(1, 1, {0, 1});
  CHECK(pad_end(f, 2).labels() == std::vector<vertex_t>{0, 1, 1, 1});
  CHECK(pad_front(f, 1).labels() == std::vector<vertex_t>{0, 0, 1});
}
