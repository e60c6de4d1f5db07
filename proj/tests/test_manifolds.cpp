#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "topocat/homology.hpp"
#include "topocat/manifolds.hpp"

using namespace topocat;

namespace {

HomologySummary poset_homology(const FinPoset& p, int through) {
  auto cc = order_complex_chains(p, through + 1);
  auto [red, log] = coreduce(cc);
  return homology(red, std::min(through, red.valid_through()));
}

HomologySummary complex_homology(const SimplicialSet& X) {
  auto cc = normalized_chains(X, X.top_dim);
  auto [red, log] = coreduce(cc);
  return homology(red, red.valid_through());
}

}  // namespace

TEST_CASE("model parsing and adjacency") {
  auto L3 = ManifoldModel::parse("interval:3");
  CHECK(L3.num_points() == 3);
  CHECK(L3.adjacent(0, 1));
  CHECK(!L3.adjacent(0, 2));
  auto C4 = ManifoldModel::parse("cycle:4");
  CHECK(C4.adjacent(0, 3));
  auto G = ManifoldModel::parse("grid:2x3");
  CHECK(G.num_points() == 6);
  CHECK(G.dim() == 2);
  CHECK(G.adjacent(0, 3));
  CHECK(!G.adjacent(0, 4));
  CHECK_THROWS_WITH(ManifoldModel::parse("cycle:2"),
                    "model too small: a cycle needs at least 3 points");
  CHECK_THROWS(ManifoldModel::parse("torus:5"));
  CHECK_THROWS(ManifoldModel::parse("interval:0"));
  CHECK(ManifoldModel::parse(L3.spec()).spec() == L3.spec());
}

TEST_CASE("ball enumeration and basis validation") {
  auto L3 = ManifoldModel::parse("interval:3");
  auto C4 = ManifoldModel::parse("cycle:4");
  CHECK(enumerate_balls(L3).size() == 6);
  CHECK(enumerate_balls(C4).size() == 12);
  CHECK(enumerate_balls(ManifoldModel::parse("grid:1x1")).size() == 1);
  CHECK(validate_basis(L3, enumerate_balls(L3)));

  std::vector<Ball> singles;
  for (const auto& b : enumerate_balls(L3))
    if (b.points.size() == 1) singles.push_back(b);
  CHECK(validate_basis(L3, singles));

  std::vector<Ball> broken;
  for (const auto& b : enumerate_balls(L3)) {
    bool has1 = std::binary_search(b.points.begin(), b.points.end(), 1);
    if (has1 && b.points.size() <= 2) continue;
    broken.push_back(b);
  }
  CHECK(!validate_basis(L3, broken));
}

TEST_CASE("stride sub-basis keeps singletons and is a basis") {
  auto C8 = ManifoldModel::parse("cycle:8");
  auto sub = subfamily_from_spec(C8, "stride:2");
  CHECK(sub.size() < enumerate_balls(C8).size());
  CHECK(validate_basis(C8, sub));
  CHECK(subfamily_from_spec(C8, "full").size() == enumerate_balls(C8).size());
  CHECK_THROWS(subfamily_from_spec(C8, "every-other"));
}

TEST_CASE("isotopy equivalence is componentwise ball-in-ball") {
  auto L3 = ManifoldModel::parse("interval:3");
  auto U = OpenSetRep::make(L3, {1});
  auto V = OpenSetRep::make(L3, {0, 1, 2});
  auto W = OpenSetRep::make(L3, {0, 2});
  auto E = OpenSetRep::make(L3, {});
  CHECK(is_isotopy_equiv(U, V));
  CHECK(!is_isotopy_equiv(W, V));
  CHECK(is_isotopy_equiv(E, E));
  CHECK(!is_isotopy_equiv(E, V));
  CHECK_THROWS_WITH(is_isotopy_equiv(V, U), "not a subset");
}

TEST_CASE("ball poset object counts") {
  auto L3 = ManifoldModel::parse("interval:3");
  auto bL3 = build_Bk(L3, enumerate_balls(L3), 1);
  CHECK(bL3.size() == 7);
  CHECK(bL3.objects[0].points.empty());
  CHECK(bL3.bk_poset().validate().empty());
  CHECK(bL3.ak_poset().validate().empty());
  CHECK(build_Bk(L3, enumerate_balls(L3), 0).size() == 1);

  auto C4 = ManifoldModel::parse("cycle:4");
  CHECK(build_Bk(C4, enumerate_balls(C4), 2).size() == 15);
  auto C6 = ManifoldModel::parse("cycle:6");
  CHECK(build_Bk(C6, enumerate_balls(C6), 2).size() == 61);
  auto L6 = ManifoldModel::parse("interval:6");
  CHECK(build_Bk(L6, enumerate_balls(L6), 2).size() == 57);
  auto C8 = ManifoldModel::parse("cycle:8");
  CHECK(build_Bk(C8, enumerate_balls(C8), 2).size() == 197);

  CHECK_THROWS_WITH(build_Bk(L3, {}, 1), "family is not a basis");
}

TEST_CASE("isotopy equivalences refine inclusions and fix component counts") {
  for (const char* spec : {"interval:3", "cycle:4", "cycle:6"}) {
    auto m = ManifoldModel::parse(spec);
    auto b = build_Bk(m, enumerate_balls(m), 2);
    for (int x = 0; x < b.size(); ++x)
      for (int y = 0; y < b.size(); ++y)
        if (b.ak[x][y]) {
          CHECK(b.leq[x][y]);
          CHECK(b.objects[x].components.size() == b.objects[y].components.size());
        }
  }
}

TEST_CASE("restriction keeps exactly the subsets of the region") {
  auto L3 = ManifoldModel::parse("interval:3");
  auto b = build_Bk(L3, enumerate_balls(L3), 1);
  auto r = restrict_to(b, OpenSetRep::make(L3, {0, 1}));
  CHECK(r.size() == 4);
  for (int i = 0; i < r.size(); ++i)
    CHECK(r.objects[i].subset_of(OpenSetRep::make(L3, {0, 1})));
}

TEST_CASE("string poset object counts") {
  auto L3 = ManifoldModel::parse("interval:3");
  auto b = build_Bk(L3, enumerate_balls(L3), 1);
  auto sp = build_AkBkp_poset(b, 1, whole_model(L3));
  int pairs = 0;
  for (int x = 0; x < b.size(); ++x)
    for (int y = 0; y < b.size(); ++y)
      if (b.leq[x][y]) ++pairs;
  CHECK(static_cast<int>(sp.chains.size()) == pairs);
  CHECK(sp.chains.size() == 22);
  CHECK(sp.poset.validate().empty());
  auto cat = build_AkBkp(b, 0, whole_model(L3));
  CHECK(validate_category(cat).ok());
  CHECK(cat.num_objects() == 7);
}

TEST_CASE("constant-string functor is well defined") {
  auto L3 = ManifoldModel::parse("interval:3");
  auto b = build_Bk(L3, enumerate_balls(L3), 1);
  auto r = build_AkqBk(b, 1, whole_model(L3));
  CHECK(r->J.validate().empty());
  CHECK(r->J.source == &r->bk_cat);
  CHECK(r->J.target == &r->string_cat);
  auto r0 = build_AkqBk(b, 0, whole_model(L3));
  CHECK(r0->string_cat.num_objects() == b.size());
}

TEST_CASE("configuration complexes of small graphs") {
  auto L3 = ManifoldModel::parse("interval:3");
  auto c0 = config_complex(L3, 0);
  CHECK(c0.count(0) == 1);

  auto one = complex_homology(config_complex(ManifoldModel::parse("interval:6"), 1));
  CHECK(one.betti[0] == 1);
  for (int d = 1; d <= one.valid_through; ++d) CHECK(one.betti[d] == 0);

  auto circ = complex_homology(config_complex(ManifoldModel::parse("cycle:6"), 1));
  CHECK(circ.betti[0] == 1);
  CHECK(circ.betti[1] == 1);

  // two points on a circle again give a circle, including at the tight size
  for (const char* spec : {"cycle:6", "cycle:7", "cycle:8"}) {
    auto h = complex_homology(config_complex(ManifoldModel::parse(spec), 2));
    CHECK(h.betti[0] == 1);
    CHECK(h.betti[1] == 1);
    for (int d = 2; d <= h.valid_through; ++d) CHECK(h.betti[d] == 0);
    for (int d = 0; d <= h.valid_through; ++d) CHECK(h.torsion[d].empty());
  }
  // two points on an interval: contractible
  for (const char* spec : {"interval:6", "interval:7"}) {
    auto h = complex_homology(config_complex(ManifoldModel::parse(spec), 2));
    CHECK(h.betti[0] == 1);
    for (int d = 1; d <= h.valid_through; ++d) CHECK(h.betti[d] == 0);
  }
  // three points on a circle at the tight size
  auto h3 = complex_homology(config_complex(ManifoldModel::parse("cycle:9"), 3));
  CHECK(h3.betti[0] == 1);
  CHECK(h3.betti[1] == 1);

  CHECK_THROWS_WITH(config_complex(ManifoldModel::parse("cycle:5"), 2),
                    "model too small for j");
  CHECK_THROWS(config_complex(ManifoldModel::parse("grid:2x2"), 1));
}

TEST_CASE("classifying spaces of the isotopy-equivalence posets") {
  auto C6 = ManifoldModel::parse("cycle:6");
  auto b1 = build_Bk(C6, enumerate_balls(C6), 1);
  auto h1 = poset_homology(b1.ak_poset(), 1);
  CHECK(h1.betti == std::vector<long long>{2, 1});

  auto L6 = ManifoldModel::parse("interval:6");
  auto b2 = build_Bk(L6, enumerate_balls(L6), 2);
  auto h2 = poset_homology(b2.ak_poset(), 1);
  CHECK(h2.betti == std::vector<long long>{3, 0});

  auto b3 = build_Bk(C6, enumerate_balls(C6), 2);
  auto h3 = poset_homology(b3.ak_poset(), 1);
  CHECK(h3.betti == std::vector<long long>{3, 2});
}

TEST_CASE("open set representation normalizes components") {
  auto C6 = ManifoldModel::parse("cycle:6");
  auto u = OpenSetRep::make(C6, {5, 0, 2, 3});
  CHECK(u.components.size() == 2);  // {5,0} wraps, {2,3}
  CHECK(u.points == std::vector<int>({0, 2, 3, 5}));
  auto v = OpenSetRep::make(C6, {0, 2, 3, 5});
  CHECK(u == v);
  CHECK(u.subset_of(whole_model(C6)));
}
