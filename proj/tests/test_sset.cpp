#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "topocat/sset.hpp"

using namespace topocat;

namespace {

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

SimplicialSet circle() { return from_abstract_complex(3, {{0, 1}, {1, 2}, {0, 2}}, 2); }

SimplicialMap identity_map(std::shared_ptr<const SimplicialSet> x) {
  SimplicialMap f;
  f.source = x;
  f.target = x;
  f.images.resize(x->top_dim + 1);
  for (int d = 0; d <= x->top_dim; ++d)
    for (int i = 0; i < x->count(d); ++i)
      f.images[d].push_back({d, i, identity_surj(d)});
  return f;
}

SimplicialMap constant_map(std::shared_ptr<const SimplicialSet> x,
                           std::shared_ptr<const SimplicialSet> pt) {
  SimplicialMap f;
  f.source = x;
  f.target = pt;
  f.images.resize(x->top_dim + 1);
  for (int d = 0; d <= x->top_dim; ++d)
    for (int i = 0; i < x->count(d); ++i)
      f.images[d].push_back({0, 0, SurjMap(d + 1, 0)});
  return f;
}

// circle mapping to a point over the arrow poset
struct CylinderSetup {
  FinCategory C;
  SSetValuedFunctor F;
  std::shared_ptr<SimplicialSet> v0, v1;
};

CylinderSetup cylinder() {
  CylinderSetup s;
  s.C = FinPoset::from_pairs({"a", "b"}, {{0, 1}}).to_category();
  s.v0 = std::make_shared<SimplicialSet>(circle());
  s.v1 = std::make_shared<SimplicialSet>(point_sset());
  s.F.source = &s.C;
  s.F.values = {s.v0, s.v1};
  for (int m = 0; m < s.C.num_morphisms(); ++m) {
    const auto& mo = s.C.morphisms[m];
    if (mo.src == mo.dst)
      s.F.actions.push_back(identity_map(s.F.values[mo.src]));
    else
      s.F.actions.push_back(constant_map(s.v0, s.v1));
  }
  return s;
}

}  // namespace

TEST_CASE("surjection algebra") {
  CHECK(is_identity_surj(identity_surj(3)));
  SurjMap s0(3, 0);  // [2] ->> [0]
  auto comp = compose_surj(SurjMap{0}, s0);
  CHECK(comp == s0);
  SurjMap a = {0, 0, 1};
  SurjMap b = {0, 1, 1};
  auto ab = compose_surj(a, b);  // a . b pointwise
  CHECK(ab == SurjMap{0, 0, 0});
}

TEST_CASE("abstract complexes satisfy the simplicial identities") {
  auto s1 = circle();
  CHECK(s1.audit().empty());
  CHECK(s1.count(0) == 3);
  CHECK(s1.count(1) == 3);
  CHECK(s1.count(2) == 0);
  auto tetra = from_abstract_complex(4, {{0, 1, 2, 3}}, 3);
  CHECK(tetra.audit().empty());
  CHECK(tetra.count(2) == 4);
  CHECK(tetra.count(3) == 1);
}

TEST_CASE("faces of degenerate simplices normalize correctly") {
  auto s1 = circle();
  SimplexRef e = s1.nondeg_ref(1, 0);
  auto deg = s1.degenerate(e, 0);  // a 2-simplex, degenerate
  CHECK(deg.dim() == 2);
  CHECK(!deg.nondegenerate());
  // d_0 s_0 = id
  CHECK(s1.face(deg, 0) == e);
  CHECK(s1.face(deg, 1) == e);
}

TEST_CASE("nerve counts composable strings") {
  auto ng = nerve(bz2(), 4);
  CHECK(ng.audit().empty());
  CHECK(ng.truncated);
  for (int d = 0; d <= 4; ++d) CHECK(ng.count(d) == 1);

  auto p = FinPoset::from_pairs({"a", "b", "c"}, {{0, 1}, {0, 2}, {1, 2}});
  auto np = nerve(p.to_category(), 3);
  CHECK(!np.truncated);
  CHECK(np.count(0) == 3);
  CHECK(np.count(1) == 3);
  CHECK(np.count(2) == 1);
  CHECK(np.count(3) == 0);
}

TEST_CASE("nerve map turns identities into degeneracies") {
  auto p = FinPoset::from_pairs({"a", "b"}, {{0, 1}}).to_category();
  auto t = terminal_category();
  CatFunctor collapse;
  collapse.source = &p;
  collapse.target = &t;
  collapse.on_objects = {0, 0};
  collapse.on_morphisms.assign(p.num_morphisms(), 0);
  auto np = nerve_indexed(p, 2);
  auto nt = nerve_indexed(t, 2);
  auto f = nerve_map(collapse, np, nt);
  CHECK(f.audit().empty());
  REQUIRE(f.images[1].size() == 1);  // the one non-identity string
  CHECK(f.images[1][0].base_dim == 0);
  CHECK(!f.images[1][0].nondegenerate());
}

TEST_CASE("pi0 counts connected components") {
  auto two = from_abstract_complex(4, {{0, 1}, {2, 3}}, 1);
  CHECK(pi0(two) == 2);
  CHECK(pi0(circle()) == 1);
}

TEST_CASE("bisimplicial replacement and diagonal of a mapping cylinder") {
  auto s = cylinder();
  auto hc = hocolim_indexed(s.C, s.F, 3);
  CHECK(hc.srep.biset->audit().empty());
  CHECK(hc.diag.sset->audit().empty());
  CHECK(pi0(*hc.diag.sset) == 1);
  // vertices: one per (object, vertex of value)
  CHECK(hc.diag.sset->count(0) == 4);
}

TEST_CASE("projection to the nerve and vertex fibers") {
  auto s = cylinder();
  auto hc = hocolim_indexed(s.C, s.F, 3);
  auto proj = projection_to_nerve(hc);
  CHECK(proj.audit().empty());
  auto fib0 = vertex_fiber(proj, 0);
  CHECK(fib0.audit().empty());
  CHECK(sset_isomorphic(fib0, *s.v0));
  auto fib1 = vertex_fiber(proj, 1);
  CHECK(sset_isomorphic(fib1, *s.v1));
}

TEST_CASE("simplicial set isomorphism distinguishes shapes") {
  auto a = circle();
  auto b = circle();
  CHECK(sset_isomorphic(a, b));
  auto interval = from_abstract_complex(3, {{0, 1}, {1, 2}}, 1);
  CHECK(!sset_isomorphic(a, interval));
  CHECK(sset_isomorphic(point_sset(), point_sset()));
}

TEST_CASE("discrete limits enumerate matching families") {
  auto p = FinPoset::from_pairs({"a", "b"}, {{0, 1}});
  auto C = p.to_category();
  FinSetFunctor F;
  F.source = &C;
  F.sizes = {2, 3};
  F.actions.resize(C.num_morphisms());
  for (int m = 0; m < C.num_morphisms(); ++m) {
    const auto& mo = C.morphisms[m];
    if (mo.src == mo.dst) {
      F.actions[m].resize(F.sizes[mo.src]);
      std::iota(F.actions[m].begin(), F.actions[m].end(), 0);
    } else {
      F.actions[m] = {0, 2};
    }
  }
  auto lim = limit_discrete(F);
  CHECK(lim.size() == 2);  // the graph of the map
  CHECK(lim[0] == std::vector<int>{0, 0});
  CHECK(lim[1] == std::vector<int>{1, 2});
}

TEST_CASE("cosimplicial descriptor passes its audit") {
  auto p = FinPoset::from_pairs({"a", "b"}, {{0, 1}});
  auto C = p.to_category();
  FinSetFunctor F;
  F.source = &C;
  F.sizes = {2, 2};
  F.actions.resize(C.num_morphisms());
  for (int m = 0; m < C.num_morphisms(); ++m) {
    const auto& mo = C.morphisms[m];
    if (mo.src == mo.dst)
      F.actions[m] = {0, 1};
    else
      F.actions[m] = {1, 0};
  }
  auto D = crep_describe(F, 3);
  CHECK(crep_audit(D).empty());
}
