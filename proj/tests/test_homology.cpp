#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "topocat/homology.hpp"

using namespace topocat;

namespace {

SimplicialSet hollow_triangle() {
  return from_abstract_complex(3, {{0, 1}, {1, 2}, {0, 2}}, 2);
}

SimplicialSet tetra_boundary() {
  return from_abstract_complex(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}, 3);
}

FinCategory bz2() {
  FinCategory c;
  c.objects = {"*"};
  c.morphisms = {{0, 0, "id"}, {0, 0, "t"}};
  c.identities = {0};
  c.init_table();
  c.set_composite(0, 0, 0);
  c.set_composite(0, 1, 1);
  c.set_composite(1, 0, 1);
  c.set_composite(1, 1, 0);
  return c;
}

// fraction-free Bareiss elimination, used as an independent rank oracle
long long bareiss_rank(std::vector<std::vector<long long>> a) {
  int n = static_cast<int>(a.size());
  int m = n ? static_cast<int>(a[0].size()) : 0;
  long long prev = 1, rank = 0;
  int row = 0;
  for (int col = 0; col < m && row < n; ++col) {
    int piv = -1;
    for (int r = row; r < n; ++r)
      if (a[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[row], a[piv]);
    for (int r = row + 1; r < n; ++r)
      for (int c = col + 1; c < m; ++c)
        a[r][c] = (a[row][col] * a[r][c] - a[r][col] * a[row][c]) / prev;
    for (int r = row + 1; r < n; ++r) a[r][col] = 0;
    prev = a[row][col];
    ++row;
    ++rank;
  }
  return rank;
}

IntMatrix random_matrix(std::mt19937_64& rng, int rows, int cols, int spread) {
  IntMatrix m = IntMatrix::zero(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r)
      if (rng() % 3 == 0)
        m.set(r, c, static_cast<long long>(rng() % (2 * spread + 1)) - spread);
  m.normalize();
  return m;
}

SimplicialSet random_complex(std::mt19937_64& rng) {
  int n = 3 + static_cast<int>(rng() % 5);
  int nfacets = 2 + static_cast<int>(rng() % 6);
  std::set<std::vector<int>> facets;
  for (int i = 0; i < nfacets; ++i) {
    int d = 1 + static_cast<int>(rng() % 3);
    if (d >= n) d = n - 1;  // a facet needs d + 1 distinct vertices
    std::set<int> vs;
    while (static_cast<int>(vs.size()) <= d) vs.insert(static_cast<int>(rng() % n));
    facets.insert(std::vector<int>(vs.begin(), vs.end()));
  }
  return from_abstract_complex(n, {facets.begin(), facets.end()}, 4);
}

}  // namespace

TEST_CASE("smith normal form on known matrices") {
  IntMatrix m = IntMatrix::zero(2, 2);
  m.set(0, 0, 2);
  m.set(0, 1, 4);
  m.set(1, 1, 4);
  m.normalize();
  CHECK(smith(m) == std::vector<long long>{2, 4});

  IntMatrix z = IntMatrix::zero(3, 5);
  CHECK(smith(z).empty());

  IntMatrix d = IntMatrix::zero(3, 3);
  d.set(0, 0, 6);
  d.set(1, 1, 4);
  d.set(2, 2, 10);
  d.normalize();
  auto f = d;
  CHECK(smith(f) == std::vector<long long>{2, 2, 60});
}

TEST_CASE("smith rank agrees with Bareiss elimination") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 60; ++trial) {
    int rows = 1 + static_cast<int>(rng() % 6);
    int cols = 1 + static_cast<int>(rng() % 6);
    auto m = random_matrix(rng, rows, cols, 4);
    std::vector<std::vector<long long>> dense(rows, std::vector<long long>(cols, 0));
    for (int c = 0; c < cols; ++c)
      for (auto& [r, v] : m.col[c]) dense[r][c] = v;
    CHECK(static_cast<long long>(smith(m).size()) == bareiss_rank(dense));
  }
}

TEST_CASE("smith invariant factors form a divisibility chain") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    auto m = random_matrix(rng, 2 + static_cast<int>(rng() % 5),
                           2 + static_cast<int>(rng() % 5), 9);
    auto f = smith(m);
    for (size_t i = 0; i + 1 < f.size(); ++i) {
      CHECK(f[i] > 0);
      CHECK(f[i + 1] % f[i] == 0);
    }
  }
}

TEST_CASE("matrix and chain complex serialization round trips") {
  std::mt19937_64 rng(3);
  auto m = random_matrix(rng, 4, 5, 3);
  auto back = IntMatrix::parse(m.serialize());
  CHECK(back.serialize() == m.serialize());

  auto cc = normalized_chains(tetra_boundary(), 3);
  auto cc2 = ChainComplex::parse(cc.serialize());
  CHECK(cc2.serialize() == cc.serialize());
  CHECK(cc2.complete == cc.complete);
  CHECK(cc2.ranks == cc.ranks);

  CHECK_THROWS(ChainComplex::parse("garbage"));
  CHECK_THROWS(IntMatrix::parse("2 2\n5 0 1\n"));
}

TEST_CASE("homology of standard spaces") {
  auto h1 = homology(normalized_chains(hollow_triangle(), 2), 2);
  CHECK(h1.betti == std::vector<long long>{1, 1, 0});
  CHECK(h1.torsion[1].empty());

  auto h2 = homology(normalized_chains(tetra_boundary(), 3), 2);
  CHECK(h2.betti == std::vector<long long>{1, 0, 1});

  auto pt = homology(normalized_chains(point_sset(), 0), 0);
  CHECK(pt.betti == std::vector<long long>{1});
}

TEST_CASE("nerve of the cyclic group of order two has 2-torsion") {
  auto cc = normalized_chains(nerve(bz2(), 4), 4);
  CHECK(cc.valid_through() == 3);
  auto h = homology(cc, 3);
  CHECK(h.betti == std::vector<long long>{1, 0, 0, 0});
  CHECK(h.torsion[1] == std::vector<long long>{2});
  CHECK(h.torsion[2].empty());
  CHECK(h.torsion[3] == std::vector<long long>{2});
  CHECK_THROWS_WITH(homology(cc, 4), "degree beyond validity range");
}

TEST_CASE("boundary of boundary vanishes on constructed complexes") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    auto X = random_complex(rng);
    auto cc = normalized_chains(X, X.top_dim);
    CHECK(cc.validate().empty());
    auto [red, log] = coreduce(cc);
    CHECK(red.validate().empty());
  }
  auto nc = normalized_chains(nerve(bz2(), 3), 3);
  CHECK(nc.validate().empty());
}

TEST_CASE("coreduce preserves homology on 100 seeded random complexes") {
  std::mt19937_64 rng(2026);
  for (int trial = 0; trial < 100; ++trial) {
    auto X = random_complex(rng);
    auto cc = normalized_chains(X, X.top_dim);
    auto [red, log] = coreduce(cc);
    CHECK(log.cells_after <= log.cells_before);
    CHECK(red.ranks.size() == cc.ranks.size());
    int through = cc.valid_through();
    auto direct = homology(cc, through);
    auto reduced = homology(red, through);
    CHECK(direct.betti == reduced.betti);
    CHECK(direct.torsion == reduced.torsion);
  }
}

TEST_CASE("coreduce preserves torsion") {
  auto cc = normalized_chains(nerve(bz2(), 4), 4);
  auto [red, log] = coreduce(cc);
  auto a = homology(cc, 3);
  auto b = homology(red, 3);
  CHECK(a.betti == b.betti);
  CHECK(a.torsion == b.torsion);
}

TEST_CASE("Euler characteristic matches alternating Betti sum") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    auto X = random_complex(rng);
    auto cc = normalized_chains(X, X.top_dim);
    auto h = homology(cc, cc.valid_through());
    long long chi_cells = 0, chi_betti = 0;
    for (int d = 0; d <= cc.top(); ++d) chi_cells += (d % 2 ? -1 : 1) * cc.ranks[d];
    for (int d = 0; d <= h.valid_through; ++d) chi_betti += (d % 2 ? -1 : 1) * h.betti[d];
    CHECK(chi_cells == chi_betti);
  }
}

TEST_CASE("F2 Betti numbers satisfy the universal coefficient identity") {
  std::mt19937_64 rng(17);
  auto check_one = [](const ChainComplex& cc, int through) {
    auto h = homology(cc, through);
    auto f2 = betti_f2(cc, through);
    for (int d = 0; d <= through; ++d) {
      long long even_here = 0, even_below = 0;
      for (long long t : h.torsion[d])
        if (t % 2 == 0) ++even_here;
      if (d >= 1)
        for (long long t : h.torsion[d - 1])
          if (t % 2 == 0) ++even_below;
      CHECK(f2[d] == h.betti[d] + even_here + even_below);
    }
  };
  check_one(normalized_chains(nerve(bz2(), 4), 4), 3);
  for (int trial = 0; trial < 25; ++trial) {
    auto X = random_complex(rng);
    auto cc = normalized_chains(X, X.top_dim);
    check_one(cc, cc.valid_through());
  }
}

TEST_CASE("order complex chains of a poset") {
  // barycentric subdivision of the triangle rim
  std::set<std::pair<int, int>> rel = {{0, 3}, {1, 3}, {1, 4}, {2, 4}, {0, 5}, {2, 5}};
  auto p = FinPoset::from_pairs({"v0", "v1", "v2", "e01", "e12", "e02"}, rel);
  auto cc = order_complex_chains(p, 2);
  CHECK(cc.complete);
  CHECK(cc.ranks == std::vector<long long>{6, 6, 0});
  auto h = homology(cc, 1);
  CHECK(h.betti == std::vector<long long>{1, 1});

  // truncation is flagged when longer chains exist
  auto chain3 = FinPoset::from_pairs({"a", "b", "c"}, {{0, 1}, {0, 2}, {1, 2}});
  auto t = order_complex_chains(chain3, 1);
  CHECK(!t.complete);
  CHECK(t.valid_through() == 0);
}

TEST_CASE("direct sums add Betti numbers and merge torsion") {
  HomologySummary a, b;
  a.valid_through = b.valid_through = 1;
  a.betti = {1, 2};
  a.torsion = {{}, {4}};
  b.betti = {2, 0};
  b.torsion = {{}, {2}};
  auto s = direct_sum(a, b);
  CHECK(s.betti == std::vector<long long>{3, 2});
  CHECK(s.torsion[1] == std::vector<long long>{2, 4});
}

TEST_CASE("arbitrary precision path and 64-bit factor guard") {
  std::vector<std::vector<BigInt>> a(2, std::vector<BigInt>(2, 0));
  BigInt big = BigInt(1) << 100;
  a[0][0] = big;
  a[1][1] = 3 * big;
  auto f = detail::smith_dense<BigInt>(std::move(a));
  REQUIRE(f.size() == 2);
  CHECK(f[0] == big);
  CHECK(f[1] == 3 * big);

  IntMatrix m = IntMatrix::zero(2, 2);
  m.set(0, 0, 1LL << 62);
  m.set(1, 1, 1LL << 62);
  m.set(0, 1, 1);
  m.normalize();
  // second invariant factor has magnitude near 2^124
  CHECK_THROWS_WITH(smith(m), "smith: invariant factor exceeds 64 bits");
}
