// Properties of the seeded instance families, checked over many seeds.

#include "doctest.h"
#include "selectra/generators.hpp"

using namespace selectra;

TEST_CASE("grids have the expected cell counts") {
  CHECK(path_complex(3)->num_cells() == 7);
  // Kuhn square: 4 vertices, 5 edges, 2 triangles.
  CHECK(kuhn_grid({1, 1})->num_cells() == 11);
  // Kuhn cube: 8 + 19 + 18 + 6.
  CHECK(kuhn_grid({1, 1, 1})->num_cells() == 51);
  auto k = kuhn_grid({2, 2});
  CHECK(k->dimension() == 2);
  CHECK(k->maximal_cells().size() == 8);
}

TEST_CASE("random complexes respect the budget and are deterministic") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Rng a(seed), b(seed);
    auto k1 = random_complex(a, 3, 500);
    auto k2 = random_complex(b, 3, 500);
    CHECK(k1->num_cells() <= 500);
    CHECK(k1->vertices() == k2->vertices());
    CHECK(k1->num_cells() == k2->num_cells());
  }
}

TEST_CASE("nested families are open / l.s.c. by construction") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    auto k = random_complex(rng, 2, 60);
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 2));
    for (auto kind : {BodyKind::Box, BodyKind::VPolytope, BodyKind::HPolytope}) {
      auto phi = random_open_relation(rng, k, n, kind);
      CHECK(is_open_relation(phi).holds);
      CHECK(is_lsc_relation(phi).holds);
    }
    auto iv = random_open_relation(rng, k, 1, BodyKind::Interval);
    CHECK(is_open_relation(iv).holds);
    for (auto kind : {BodyKind::Box, BodyKind::VPolytope}) {
      auto phi = random_closed_relation(rng, k, n, kind);
      CHECK(is_lsc_relation(phi).holds);
    }
  }
}

TEST_CASE("envelopes are semicontinuous and separated") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Rng rng(seed);
    auto k = random_complex(rng, 3, 200);
    auto [xi, eta] = random_envelopes(rng, k, seed % 2 == 0);
    CHECK(classify_scalar(xi).is_usc());
    CHECK(classify_scalar(eta).is_lsc());
    for (CellId c = 0; c < k->num_cells(); ++c) CHECK(xi[c] < eta[c]);
  }
}

TEST_CASE("increasing covers and subcomplexes") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Rng rng(seed);
    auto k = random_complex(rng, 2, 100);
    auto omega = random_increasing_cover(rng, k, static_cast<std::size_t>(rng.uniform(1, 5)));
    CHECK(is_increasing_cover(omega).holds);
    auto a = random_subcomplex(rng, *k);
    CHECK(is_downward_closed(*k, a));
    CHECK_FALSE(a.empty());
  }
}

TEST_CASE("random members lie in their bodies") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    auto k = random_complex(rng, 2, 40);
    auto phi = random_open_relation(rng, k, 2, seed % 2 ? BodyKind::VPolytope : BodyKind::Box);
    auto a = random_subcomplex(rng, *k);
    auto g = random_vertex_selection(rng, phi, a);
    for (const auto& [v, y] : g) {
      for (CellId c : cofaces(*k, k->vertex_cell(v))) {
        if (a.contains(c)) CHECK(membership(phi[c], y).position == Position::Inside);
      }
    }
  }
}
