#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "topocat/fincat.hpp"

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

FinCategory bz3() {
  FinCategory c;
  c.objects = {"*"};
  c.morphisms = {{0, 0, "e"}, {0, 0, "a"}, {0, 0, "b"}};
  c.identities = {0};
  c.init_table();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) c.set_composite(i, j, (i + j) % 3);
  return c;
}

// one-object category from a permutation group given as vectors
FinCategory perm_group(const std::vector<std::vector<int>>& elems) {
  FinCategory c;
  c.objects = {"*"};
  int id = -1;
  for (size_t i = 0; i < elems.size(); ++i) {
    bool is_id = true;
    for (size_t j = 0; j < elems[i].size(); ++j)
      if (elems[i][j] != static_cast<int>(j)) is_id = false;
    if (is_id) id = static_cast<int>(i);
    c.morphisms.push_back({0, 0, "g" + std::to_string(i)});
  }
  c.identities = {id};
  c.init_table();
  for (size_t i = 0; i < elems.size(); ++i)
    for (size_t j = 0; j < elems.size(); ++j) {
      std::vector<int> prod(elems[i].size());
      for (size_t x = 0; x < prod.size(); ++x) prod[x] = elems[i][elems[j][x]];
      for (size_t t = 0; t < elems.size(); ++t)
        if (elems[t] == prod)
          c.set_composite(static_cast<int>(i), static_cast<int>(j),
                          static_cast<int>(t));
    }
  return c;
}

std::vector<std::vector<int>> all_perms3() {
  std::vector<int> p = {0, 1, 2};
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace

TEST_CASE("category validation catches broken composition") {
  auto g = bz2();
  CHECK(validate_category(g).ok());
  g.set_composite(0, 1, 0);  // id.t = id breaks the identity law
  CHECK(!validate_category(g).ok());
}

TEST_CASE("poset to category round trip") {
  auto p = FinPoset::from_pairs({"a", "b", "c"}, {{0, 1}, {0, 2}, {1, 2}});
  CHECK(p.validate().empty());
  auto c = p.to_category();
  CHECK(c.thin);
  CHECK(validate_category(c).ok());
  CHECK(c.num_morphisms() == 6);
  auto back = category_to_poset(c);
  CHECK(back.leq == p.leq);

  auto bad = FinPoset::from_pairs({"a", "b"}, {{0, 1}, {1, 0}});
  CHECK(!bad.validate().empty());
}

TEST_CASE("opposite category reverses morphisms") {
  auto p = FinPoset::from_pairs({"a", "b"}, {{0, 1}});
  auto c = p.to_category();
  auto op = opposite(c);
  CHECK(validate_category(op).ok());
  CHECK(op.hom(1, 0).size() == 1);
  CHECK(op.hom(0, 1).empty());
  CHECK(categories_isomorphic(opposite(op), c).has_value());
}

TEST_CASE("full and wide subcategories") {
  auto p = FinPoset::from_pairs({"a", "b", "c"}, {{0, 1}, {0, 2}, {1, 2}});
  auto c = p.to_category();
  std::vector<int> omap;
  auto sub = full_subcategory(c, [](int o) { return o != 1; }, &omap);
  CHECK(validate_category(sub).ok());
  CHECK(sub.num_objects() == 2);
  CHECK(sub.num_morphisms() == 3);
  CHECK(omap[1] == -1);

  auto wide = wide_subcategory(c, [&](int m) {
    const auto& mo = c.morphisms[m];
    return mo.src == mo.dst || (mo.src == 0 && mo.dst == 1);
  });
  CHECK(validate_category(wide).ok());
  CHECK(wide.num_objects() == 3);
  CHECK(wide.num_morphisms() == 4);
  // dropping the composite a<=c breaks closure under composition
  CHECK_THROWS(wide_subcategory(c, [&](int m) {
    const auto& mo = c.morphisms[m];
    return !(mo.src == 0 && mo.dst == 2);
  }));
}

TEST_CASE("comma category of the identity has initial objects") {
  auto p = FinPoset::from_pairs({"a", "b", "c"}, {{0, 1}, {0, 2}, {1, 2}});
  auto c = p.to_category();
  auto J = identity_functor(c);
  for (int d = 0; d < c.num_objects(); ++d) {
    auto com = comma_category(J, d);
    CHECK(validate_category(com.cat).ok());
    auto ini = has_initial(com.cat);
    REQUIRE(ini.has_value());
    CHECK(com.witnesses[*ini].c == d);  // the identity on d is initial
  }
}

TEST_CASE("grothendieck over the terminal category is the fiber") {
  auto T = terminal_category();
  CatValuedFunctor F;
  F.source = &T;
  F.fibers = {bz2()};
  CatFunctor idf = identity_functor(F.fibers[0]);
  F.actions = {idf};
  auto gr = grothendieck(T, F);
  CHECK(validate_category(gr.cat).ok());
  CHECK(categories_isomorphic(gr.cat, bz2()).has_value());
  auto proj = grothendieck_projection(gr, T);
  CHECK(proj.validate().empty());
}

TEST_CASE("grothendieck handles non-injective actions") {
  // base: a <= b, fiber over a is a 2-chain, over b a point; the action
  // collapses the chain, so distinct sources share the same (f, g) label
  auto p = FinPoset::from_pairs({"a", "b"}, {{0, 1}});
  auto base = p.to_category();
  CatValuedFunctor F;
  F.source = &base;
  F.fibers = {FinPoset::from_pairs({"x", "y"}, {{0, 1}}).to_category(),
              FinPoset::from_pairs({"z"}, {}).to_category()};
  F.actions.resize(base.num_morphisms());
  for (int m = 0; m < base.num_morphisms(); ++m) {
    const auto& mo = base.morphisms[m];
    CatFunctor f;
    f.source = &F.fibers[mo.src];
    f.target = &F.fibers[mo.dst];
    if (mo.src == mo.dst) {
      f = identity_functor(F.fibers[mo.src]);
    } else {
      f.on_objects = {0, 0};
      f.on_morphisms.assign(F.fibers[0].num_morphisms(), 0);
    }
    F.actions[m] = f;
  }
  auto gr = grothendieck(base, F);
  CHECK(validate_category(gr.cat).ok());
  CHECK(gr.cat.num_objects() == 3);
  CHECK(has_initial(gr.cat).has_value());
}

TEST_CASE("semidirect product of Z/2 acting on Z/3 is the symmetric group") {
  auto c2 = bz2();
  CatValuedFunctor F;
  F.source = &c2;
  F.fibers = {bz3()};
  CatFunctor inv;  // inversion swaps the two generators
  inv.source = &F.fibers[0];
  inv.target = &F.fibers[0];
  inv.on_objects = {0};
  inv.on_morphisms = {0, 2, 1};
  F.actions = {identity_functor(F.fibers[0]), inv};
  CHECK(F.actions[1].validate().empty());
  auto gr = grothendieck(c2, F);
  CHECK(validate_category(gr.cat).ok());
  CHECK(gr.cat.num_objects() == 1);
  CHECK(gr.cat.num_morphisms() == 6);
  auto s3 = perm_group(all_perms3());
  CHECK(validate_category(s3).ok());
  CHECK(categories_isomorphic(gr.cat, s3).has_value());
  // and it is not the cyclic group of order 6
  std::vector<std::vector<int>> z6;
  for (int r = 0; r < 6; ++r) {
    std::vector<int> perm(6);
    for (int i = 0; i < 6; ++i) perm[i] = (i + r) % 6;
    z6.push_back(perm);
  }
  CHECK(!categories_isomorphic(gr.cat, perm_group(z6)).has_value());
}

TEST_CASE("category isomorphism search with and without hints") {
  auto p = FinPoset::from_pairs({"a", "b", "c"}, {{0, 1}, {0, 2}});
  auto q = FinPoset::from_pairs({"u", "v", "w"}, {{2, 0}, {2, 1}});
  auto c = p.to_category();
  auto d = q.to_category();
  auto found = categories_isomorphic(c, d);
  REQUIRE(found.has_value());
  CHECK(detail::validate_iso(c, d, *found));
  std::vector<int> hint = {2, 0, 1};
  auto hinted = categories_isomorphic(c, d, hint);
  CHECK(hinted.has_value());
  std::vector<int> bad_hint = {0, 1, 2};
  CHECK(!categories_isomorphic(c, d, bad_hint).has_value());

  auto line = FinPoset::from_pairs({"a", "b", "c"}, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(!categories_isomorphic(c, line.to_category()).has_value());
}

TEST_CASE("serialization round trips through text") {
  for (auto cat : {bz2(), bz3(), FinPoset::from_pairs({"a", "b"}, {{0, 1}}).to_category()}) {
    auto text = serialize_category(cat);
    auto back = parse_category(text);
    CHECK(validate_category(back).ok());
    CHECK(serialize_category(back) == text);
    CHECK(categories_isomorphic(cat, back).has_value());
  }
  CHECK_THROWS(parse_category("not a category"));
}

TEST_CASE("functor validation") {
  auto p = FinPoset::from_pairs({"a", "b"}, {{0, 1}}).to_category();
  auto q = FinPoset::from_pairs({"u", "v"}, {{0, 1}}).to_category();
  CatFunctor f;
  f.source = &p;
  f.target = &q;
  f.on_objects = {0, 1};
  f.on_morphisms.resize(p.num_morphisms());
  for (int m = 0; m < p.num_morphisms(); ++m) {
    const auto& mo = p.morphisms[m];
    f.on_morphisms[m] = q.hom_exists(mo.src, mo.dst);
  }
  CHECK(f.validate().empty());
  f.on_morphisms[p.identities[0]] = q.hom_exists(0, 1);
  CHECK(!f.validate().empty());
}
