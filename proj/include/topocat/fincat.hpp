#ifndef TOPOCAT_FINCAT_HPP
#define TOPOCAT_FINCAT_HPP

// Finite categories and posets with explicit composition, plus the
// categorical constructions used throughout: opposites, subcategories,
// comma categories, the Grothendieck construction, initial-object and
// isomorphism searches.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace topocat {

struct Morphism {
  int src = -1;
  int dst = -1;
  std::string name;
};

// A finite category.  Objects and morphisms are indexed by position.
// Thin categories (at most one morphism per ordered object pair) derive
// composition from hom lookup; general categories carry an explicit
// table, dense below 10^4 morphisms and sparse above.
class FinCategory {
 public:
  std::vector<std::string> objects;
  std::vector<Morphism> morphisms;
  std::vector<int> identities;  // object -> morphism index

  bool thin = false;

  // thin mode: hom_thin[src] maps dst -> morphism index
  std::vector<std::map<int, int>> hom_thin;

  // table mode
  bool dense = false;
  std::vector<int32_t> comp_dense;            // g * m + f
  std::map<std::pair<int, int>, int> comp_sparse;  // (g, f) -> g.f

  int num_objects() const { return static_cast<int>(objects.size()); }
  int num_morphisms() const { return static_cast<int>(morphisms.size()); }

  bool is_identity(int m) const {
    return identities[morphisms[m].src] == m && morphisms[m].src == morphisms[m].dst;
  }

  bool composable(int g, int f) const { return morphisms[f].dst == morphisms[g].src; }

  // g.f, or -1 when the pair is not composable / the entry is missing.
  int compose(int g, int f) const {
    if (!composable(g, f)) return -1;
    if (thin) {
      const auto& row = hom_thin[morphisms[f].src];
      auto it = row.find(morphisms[g].dst);
      return it == row.end() ? -1 : it->second;
    }
    if (dense) return comp_dense[static_cast<size_t>(g) * morphisms.size() + f];
    auto it = comp_sparse.find({g, f});
    return it == comp_sparse.end() ? -1 : it->second;
  }

  void set_composite(int g, int f, int h) {
    if (thin) return;  // derived
    if (dense)
      comp_dense[static_cast<size_t>(g) * morphisms.size() + f] = h;
    else
      comp_sparse[{g, f}] = h;
  }

  void init_table() {
    thin = false;
    dense = morphisms.size() < 10000;
    if (dense) comp_dense.assign(morphisms.size() * morphisms.size(), -1);
  }

  // Rebuilds hom_thin from the morphism list; fails if not actually thin.
  void init_thin() {
    thin = true;
    hom_thin.assign(objects.size(), {});
    for (int m = 0; m < num_morphisms(); ++m) {
      auto [it, inserted] = hom_thin[morphisms[m].src].insert({morphisms[m].dst, m});
      if (!inserted) throw std::runtime_error("init_thin: category is not thin");
    }
  }

  int hom_exists(int a, int b) const {
    if (thin) {
      auto it = hom_thin[a].find(b);
      return it == hom_thin[a].end() ? -1 : it->second;
    }
    for (int m = 0; m < num_morphisms(); ++m)
      if (morphisms[m].src == a && morphisms[m].dst == b) return m;
    return -1;
  }

  std::vector<int> hom(int a, int b) const {
    std::vector<int> out;
    if (thin) {
      auto it = hom_thin[a].find(b);
      if (it != hom_thin[a].end()) out.push_back(it->second);
      return out;
    }
    for (int m = 0; m < num_morphisms(); ++m)
      if (morphisms[m].src == a && morphisms[m].dst == b) out.push_back(m);
    return out;
  }
};

inline FinCategory terminal_category() {
  FinCategory c;
  c.objects = {"*"};
  c.morphisms = {{0, 0, "id"}};
  c.identities = {0};
  c.init_thin();
  return c;
}

// ---------------------------------------------------------------------------
// Posets

class FinPoset {
 public:
  std::vector<std::string> elements;
  std::vector<std::vector<bool>> leq;  // leq[a][b] means a <= b

  int size() const { return static_cast<int>(elements.size()); }

  static FinPoset from_pairs(std::vector<std::string> elems,
                             const std::set<std::pair<int, int>>& pairs) {
    FinPoset p;
    p.elements = std::move(elems);
    p.leq.assign(p.elements.size(), std::vector<bool>(p.elements.size(), false));
    for (int i = 0; i < p.size(); ++i) p.leq[i][i] = true;
    for (auto& [a, b] : pairs) p.leq[a][b] = true;
    return p;
  }

  std::vector<std::string> validate() const {
    std::vector<std::string> bad;
    int n = size();
    for (int a = 0; a < n; ++a)
      if (!leq[a][a]) bad.push_back("not reflexive at " + elements[a]);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (a != b && leq[a][b] && leq[b][a])
          bad.push_back("antisymmetry fails: " + elements[a] + ", " + elements[b]);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (!leq[a][b]) continue;
        for (int c = 0; c < n; ++c)
          if (leq[b][c] && !leq[a][c])
            bad.push_back("transitivity fails: " + elements[a] + " <= " + elements[b] +
                          " <= " + elements[c]);
      }
    return bad;
  }

  FinCategory to_category() const {
    FinCategory c;
    c.objects = elements;
    c.identities.assign(size(), -1);
    for (int a = 0; a < size(); ++a)
      for (int b = 0; b < size(); ++b)
        if (leq[a][b]) {
          int m = c.num_morphisms();
          c.morphisms.push_back({a, b, elements[a] + "<=" + elements[b]});
          if (a == b) c.identities[a] = m;
        }
    c.init_thin();
    return c;
  }
};

// Recovers the order relation from a thin category with at most one
// morphism per ordered pair.
inline FinPoset category_to_poset(const FinCategory& c) {
  FinPoset p;
  p.elements = c.objects;
  p.leq.assign(c.num_objects(), std::vector<bool>(c.num_objects(), false));
  for (const auto& m : c.morphisms) p.leq[m.src][m.dst] = true;
  return p;
}

// ---------------------------------------------------------------------------
// Functors

class CatFunctor {
 public:
  const FinCategory* source = nullptr;
  const FinCategory* target = nullptr;
  std::vector<int> on_objects;
  std::vector<int> on_morphisms;

  int obj(int c) const { return on_objects[c]; }
  int mor(int f) const { return on_morphisms[f]; }

  std::vector<std::string> validate() const {
    std::vector<std::string> bad;
    for (int c = 0; c < source->num_objects(); ++c)
      if (on_morphisms[source->identities[c]] != target->identities[on_objects[c]])
        bad.push_back("identity not preserved at object " + source->objects[c]);
    for (int f = 0; f < source->num_morphisms(); ++f) {
      const auto& m = source->morphisms[f];
      const auto& im = target->morphisms[on_morphisms[f]];
      if (im.src != on_objects[m.src] || im.dst != on_objects[m.dst])
        bad.push_back("source/target not preserved at morphism " + m.name);
    }
    for (int g = 0; g < source->num_morphisms(); ++g)
      for (int f = 0; f < source->num_morphisms(); ++f) {
        if (!source->composable(g, f)) continue;
        int gf = source->compose(g, f);
        int im = target->compose(on_morphisms[g], on_morphisms[f]);
        if (gf < 0 || im < 0 || on_morphisms[gf] != im)
          bad.push_back("composition not preserved at (" + source->morphisms[g].name +
                        ", " + source->morphisms[f].name + ")");
      }
    return bad;
  }
};

inline CatFunctor identity_functor(const FinCategory& c) {
  CatFunctor f;
  f.source = &c;
  f.target = &c;
  f.on_objects.resize(c.num_objects());
  f.on_morphisms.resize(c.num_morphisms());
  for (int i = 0; i < c.num_objects(); ++i) f.on_objects[i] = i;
  for (int i = 0; i < c.num_morphisms(); ++i) f.on_morphisms[i] = i;
  return f;
}

// F : C -> Cat, strict.  Fibers are stored by value; the assignment on
// morphisms gives a functor F(f) : F(src f) -> F(dst f).
class CatValuedFunctor {
 public:
  const FinCategory* source = nullptr;
  std::vector<FinCategory> fibers;          // per object
  std::vector<CatFunctor> actions;          // per morphism

  const FinCategory& fiber(int c) const { return fibers[c]; }
  const CatFunctor& action(int f) const { return actions[f]; }
};

// ---------------------------------------------------------------------------
// validate_category

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

inline ValidationReport validate_category(const FinCategory& c) {
  ValidationReport rep;
  auto& bad = rep.violations;
  if (static_cast<int>(c.identities.size()) != c.num_objects()) {
    bad.push_back("identity assignment incomplete");
    return rep;
  }
  for (int o = 0; o < c.num_objects(); ++o) {
    int id = c.identities[o];
    if (id < 0 || id >= c.num_morphisms() || c.morphisms[id].src != o ||
        c.morphisms[id].dst != o)
      bad.push_back("bad identity at object " + c.objects[o]);
  }
  for (int f = 0; f < c.num_morphisms(); ++f) {
    int idd = c.identities[c.morphisms[f].dst];
    int ids = c.identities[c.morphisms[f].src];
    if (c.compose(idd, f) != f) bad.push_back("id.f != f for " + c.morphisms[f].name);
    if (c.compose(f, ids) != f) bad.push_back("f.id != f for " + c.morphisms[f].name);
  }
  for (int g = 0; g < c.num_morphisms(); ++g)
    for (int f = 0; f < c.num_morphisms(); ++f) {
      if (!c.composable(g, f)) continue;
      int gf = c.compose(g, f);
      if (gf < 0) {
        bad.push_back("composite missing for (" + c.morphisms[g].name + ", " +
                      c.morphisms[f].name + ")");
        continue;
      }
      if (c.morphisms[gf].src != c.morphisms[f].src ||
          c.morphisms[gf].dst != c.morphisms[g].dst)
        bad.push_back("composite has wrong endpoints for (" + c.morphisms[g].name +
                      ", " + c.morphisms[f].name + ")");
    }
  for (int h = 0; h < c.num_morphisms(); ++h)
    for (int g = 0; g < c.num_morphisms(); ++g) {
      if (!c.composable(h, g)) continue;
      int hg = c.compose(h, g);
      if (hg < 0) continue;
      for (int f = 0; f < c.num_morphisms(); ++f) {
        if (!c.composable(g, f)) continue;
        int gf = c.compose(g, f);
        if (gf < 0) continue;
        if (c.compose(hg, f) != c.compose(h, gf))
          bad.push_back("associativity fails at (" + c.morphisms[h].name + ", " +
                        c.morphisms[g].name + ", " + c.morphisms[f].name + ")");
      }
    }
  return rep;
}

// ---------------------------------------------------------------------------
// opposite / subcategories

inline FinCategory opposite(const FinCategory& c) {
  FinCategory op;
  op.objects = c.objects;
  op.identities = c.identities;
  op.morphisms = c.morphisms;
  for (auto& m : op.morphisms) std::swap(m.src, m.dst);
  if (c.thin) {
    op.init_thin();
  } else {
    op.init_table();
    for (int g = 0; g < c.num_morphisms(); ++g)
      for (int f = 0; f < c.num_morphisms(); ++f)
        if (c.composable(g, f)) op.set_composite(f, g, c.compose(g, f));
  }
  return op;
}

template <class Pred>
FinCategory full_subcategory(const FinCategory& c, Pred keep_object,
                             std::vector<int>* object_map_out = nullptr) {
  FinCategory sub;
  std::vector<int> omap(c.num_objects(), -1);
  for (int o = 0; o < c.num_objects(); ++o)
    if (keep_object(o)) {
      omap[o] = sub.num_objects();
      sub.objects.push_back(c.objects[o]);
    }
  std::vector<int> mmap(c.num_morphisms(), -1);
  for (int m = 0; m < c.num_morphisms(); ++m) {
    const auto& mor = c.morphisms[m];
    if (omap[mor.src] >= 0 && omap[mor.dst] >= 0) {
      mmap[m] = sub.num_morphisms();
      sub.morphisms.push_back({omap[mor.src], omap[mor.dst], mor.name});
    }
  }
  sub.identities.assign(sub.num_objects(), -1);
  for (int o = 0; o < c.num_objects(); ++o)
    if (omap[o] >= 0) sub.identities[omap[o]] = mmap[c.identities[o]];
  if (c.thin) {
    sub.init_thin();
  } else {
    sub.init_table();
    for (int g = 0; g < c.num_morphisms(); ++g)
      for (int f = 0; f < c.num_morphisms(); ++f)
        if (mmap[g] >= 0 && mmap[f] >= 0 && c.composable(g, f))
          sub.set_composite(mmap[g], mmap[f], mmap[c.compose(g, f)]);
  }
  if (object_map_out) *object_map_out = omap;
  return sub;
}

template <class Pred>
FinCategory wide_subcategory(const FinCategory& c, Pred keep_morphism) {
  std::vector<int> mmap(c.num_morphisms(), -1);
  FinCategory sub;
  sub.objects = c.objects;
  for (int m = 0; m < c.num_morphisms(); ++m) {
    if (keep_morphism(m)) {
      mmap[m] = sub.num_morphisms();
      sub.morphisms.push_back(c.morphisms[m]);
    }
  }
  sub.identities.assign(sub.num_objects(), -1);
  for (int o = 0; o < c.num_objects(); ++o) {
    if (mmap[c.identities[o]] < 0)
      throw std::runtime_error("wide_subcategory: predicate drops an identity");
    sub.identities[o] = mmap[c.identities[o]];
  }
  // closure check
  for (int g = 0; g < c.num_morphisms(); ++g)
    for (int f = 0; f < c.num_morphisms(); ++f)
      if (mmap[g] >= 0 && mmap[f] >= 0 && c.composable(g, f)) {
        int gf = c.compose(g, f);
        if (gf < 0 || mmap[gf] < 0)
          throw std::runtime_error("wide_subcategory: not closed under composition");
      }
  if (c.thin) {
    sub.init_thin();
  } else {
    sub.init_table();
    for (int g = 0; g < c.num_morphisms(); ++g)
      for (int f = 0; f < c.num_morphisms(); ++f)
        if (mmap[g] >= 0 && mmap[f] >= 0 && c.composable(g, f))
          sub.set_composite(mmap[g], mmap[f], mmap[c.compose(g, f)]);
  }
  return sub;
}

// ---------------------------------------------------------------------------
// Comma category (d | J) for J : C -> D.
//
// Objects are pairs (c, f : d -> J(c)); morphisms (c,f) -> (c',f') are
// C-morphisms u with J(u) . f = f'.

struct CommaObject {
  int c;  // object of C
  int f;  // morphism d -> J(c) in D
};

struct CommaCategory {
  FinCategory cat;
  std::vector<CommaObject> witnesses;  // per object of cat
};

inline CommaCategory comma_category(const CatFunctor& J, int d) {
  const FinCategory& C = *J.source;
  const FinCategory& D = *J.target;
  CommaCategory out;
  std::map<std::pair<int, int>, int> index;
  for (int c = 0; c < C.num_objects(); ++c)
    for (int f : D.hom(d, J.obj(c))) {
      index[{c, f}] = out.cat.num_objects();
      out.witnesses.push_back({c, f});
      out.cat.objects.push_back("(" + C.objects[c] + "," + D.morphisms[f].name + ")");
    }
  int n = out.cat.num_objects();
  // morphisms: u : c -> c' with J(u) . f = f'
  struct M {
    int a, b, u;
  };
  std::vector<M> raw;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const auto& oa = out.witnesses[a];
      const auto& ob = out.witnesses[b];
      for (int u : C.hom(oa.c, ob.c))
        if (D.compose(J.mor(u), oa.f) == ob.f) raw.push_back({a, b, u});
    }
  std::map<std::pair<std::pair<int, int>, int>, int> midx;
  out.cat.identities.assign(n, -1);
  for (const auto& m : raw) {
    int id = out.cat.num_morphisms();
    midx[{{m.a, m.b}, m.u}] = id;
    out.cat.morphisms.push_back(
        {m.a, m.b, C.morphisms[m.u].name + "@" + std::to_string(m.a)});
    if (m.a == m.b && m.u == C.identities[out.witnesses[m.a].c])
      out.cat.identities[m.a] = id;
  }
  out.cat.init_table();
  for (size_t i = 0; i < raw.size(); ++i)
    for (size_t j = 0; j < raw.size(); ++j)
      if (raw[j].b == raw[i].a) {
        int comp = C.compose(raw[i].u, raw[j].u);
        auto it = midx.find({{raw[j].a, raw[i].b}, comp});
        if (it != midx.end())
          out.cat.set_composite(static_cast<int>(i), static_cast<int>(j), it->second);
      }
  return out;
}

// ---------------------------------------------------------------------------
// Grothendieck construction C \int F.
//
// Objects are pairs (c, x), morphisms (f, g) with g : F(f)(x) -> x',
// composed by the twisted law (f', g') . (f, g) = (f'.f, g' . F(f')(g)).

struct GrothendieckResult {
  FinCategory cat;
  std::vector<std::pair<int, int>> object_pairs;      // (c, x)
  std::vector<std::pair<int, int>> morphism_pairs;    // (f, g)
  std::vector<int> projection_obj;                    // to C
  std::vector<int> projection_mor;
};

inline GrothendieckResult grothendieck(const FinCategory& C, const CatValuedFunctor& F) {
  GrothendieckResult out;
  std::map<std::pair<int, int>, int> oidx;
  for (int c = 0; c < C.num_objects(); ++c)
    for (int x = 0; x < F.fiber(c).num_objects(); ++x) {
      oidx[{c, x}] = out.cat.num_objects();
      out.object_pairs.push_back({c, x});
      out.projection_obj.push_back(c);
      out.cat.objects.push_back("(" + C.objects[c] + "," + F.fiber(c).objects[x] + ")");
    }
  // keyed by (f, source x, g): distinct sources can share (f, g) when F(f)
  // identifies objects
  std::map<std::tuple<int, int, int>, int> midx;
  out.cat.identities.assign(out.cat.num_objects(), -1);
  for (int f = 0; f < C.num_morphisms(); ++f) {
    int c = C.morphisms[f].src, cp = C.morphisms[f].dst;
    const CatFunctor& Ff = F.action(f);
    const FinCategory& Fcp = F.fiber(cp);
    for (int x = 0; x < F.fiber(c).num_objects(); ++x) {
      int fx = Ff.obj(x);
      for (int g = 0; g < Fcp.num_morphisms(); ++g) {
        if (Fcp.morphisms[g].src != fx) continue;
        int xp = Fcp.morphisms[g].dst;
        int id = out.cat.num_morphisms();
        midx[{f, x, g}] = id;
        out.morphism_pairs.push_back({f, g});
        out.projection_mor.push_back(f);
        out.cat.morphisms.push_back({oidx.at({c, x}), oidx.at({cp, xp}),
                                     "(" + C.morphisms[f].name + "," +
                                         Fcp.morphisms[g].name + ")"});
        if (f == C.identities[c] && g == Fcp.identities[xp] && fx == xp)
          out.cat.identities[oidx.at({c, x})] = id;
      }
    }
  }
  out.cat.init_table();
  int M = out.cat.num_morphisms();
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j) {
      if (out.cat.morphisms[j].dst != out.cat.morphisms[i].src) continue;
      auto [f2, g2] = out.morphism_pairs[i];  // second arrow
      auto [f1, g1] = out.morphism_pairs[j];  // first arrow
      int f = C.compose(f2, f1);
      // g = g2 . F(f2)(g1)
      int tg1 = F.action(f2).mor(g1);
      int g = F.fiber(C.morphisms[f2].dst).compose(g2, tg1);
      int x0 = out.object_pairs[out.cat.morphisms[j].src].second;
      auto it = midx.find({f, x0, g});
      if (it == midx.end())
        throw std::runtime_error("grothendieck: composite missing from index");
      out.cat.set_composite(i, j, it->second);
    }
  return out;
}

inline CatFunctor grothendieck_projection(const GrothendieckResult& g,
                                          const FinCategory& C) {
  CatFunctor p;
  p.source = &g.cat;
  p.target = &C;
  p.on_objects = g.projection_obj;
  p.on_morphisms = g.projection_mor;
  return p;
}

// ---------------------------------------------------------------------------
// has_initial

inline std::optional<int> has_initial(const FinCategory& c) {
  std::vector<int> candidates;
  for (int a = 0; a < c.num_objects(); ++a) {
    bool ok = true;
    for (int b = 0; b < c.num_objects() && ok; ++b)
      if (c.hom(a, b).size() != 1) ok = false;
    if (ok) candidates.push_back(a);
  }
  if (candidates.empty()) return std::nullopt;
  // initial objects are unique up to unique iso; report the lowest identifier
  return *std::min_element(candidates.begin(), candidates.end(),
                           [&](int a, int b) { return c.objects[a] < c.objects[b]; });
}

// ---------------------------------------------------------------------------
// Category isomorphism

struct CatIso {
  std::vector<int> obj_map;  // C objects -> D objects
  std::vector<int> mor_map;  // C morphisms -> D morphisms
};

namespace detail {

inline bool validate_iso(const FinCategory& C, const FinCategory& D, const CatIso& iso) {
  std::vector<int> oseen(D.num_objects(), 0), mseen(D.num_morphisms(), 0);
  for (int v : iso.obj_map) {
    if (v < 0 || v >= D.num_objects() || oseen[v]++) return false;
  }
  for (int v : iso.mor_map) {
    if (v < 0 || v >= D.num_morphisms() || mseen[v]++) return false;
  }
  if (C.num_objects() != D.num_objects() || C.num_morphisms() != D.num_morphisms())
    return false;
  for (int m = 0; m < C.num_morphisms(); ++m) {
    const auto& a = C.morphisms[m];
    const auto& b = D.morphisms[iso.mor_map[m]];
    if (b.src != iso.obj_map[a.src] || b.dst != iso.obj_map[a.dst]) return false;
  }
  for (int o = 0; o < C.num_objects(); ++o)
    if (iso.mor_map[C.identities[o]] != D.identities[iso.obj_map[o]]) return false;
  for (int g = 0; g < C.num_morphisms(); ++g)
    for (int f = 0; f < C.num_morphisms(); ++f)
      if (C.composable(g, f)) {
        int lhs = iso.mor_map[C.compose(g, f)];
        int rhs = D.compose(iso.mor_map[g], iso.mor_map[f]);
        if (lhs != rhs) return false;
      }
  return true;
}

// Backtracking morphism assignment for a fixed object bijection.
inline bool assign_morphisms(const FinCategory& C, const FinCategory& D,
                             const std::vector<int>& obj_map, CatIso& out,
                             long long& budget) {
  int M = C.num_morphisms();
  std::vector<int> mm(M, -1);
  std::vector<char> used(D.num_morphisms(), 0);
  // identities are forced
  for (int o = 0; o < C.num_objects(); ++o) {
    int t = D.identities[obj_map[o]];
    mm[C.identities[o]] = t;
    used[t] = 1;
  }
  std::vector<int> order;
  for (int m = 0; m < M; ++m)
    if (mm[m] < 0) order.push_back(m);

  std::function<bool(size_t)> rec = [&](size_t k) -> bool {
    if (--budget < 0) throw std::runtime_error("search exceeded budget");
    if (k == order.size()) {
      CatIso iso{obj_map, mm};
      if (validate_iso(C, D, iso)) {
        out = iso;
        return true;
      }
      return false;
    }
    int m = order[k];
    const auto& mo = C.morphisms[m];
    for (int t = 0; t < D.num_morphisms(); ++t) {
      if (used[t]) continue;
      const auto& to = D.morphisms[t];
      if (to.src != obj_map[mo.src] || to.dst != obj_map[mo.dst]) continue;
      // partial composition consistency
      bool ok = true;
      mm[m] = t;
      for (int other = 0; other < M && ok; ++other) {
        if (mm[other] < 0) continue;
        if (C.composable(m, other)) {
          int c = C.compose(m, other);
          if (mm[c] >= 0 && D.compose(t, mm[other]) != mm[c]) ok = false;
        }
        if (ok && C.composable(other, m)) {
          int c = C.compose(other, m);
          if (mm[c] >= 0 && D.compose(mm[other], t) != mm[c]) ok = false;
        }
      }
      if (ok) {
        used[t] = 1;
        if (rec(k + 1)) return true;
        used[t] = 0;
      }
      mm[m] = -1;
    }
    return false;
  };
  return rec(0);
}

}  // namespace detail

// When a hint (object correspondence) is given, only that correspondence is
// validated.  Unhinted search prunes on per-object in/out morphism counts and
// throws once the node budget is exceeded.
inline std::optional<CatIso> categories_isomorphic(
    const FinCategory& C, const FinCategory& D,
    const std::optional<std::vector<int>>& hint = std::nullopt,
    long long budget = 1000000) {
  if (C.num_objects() != D.num_objects() || C.num_morphisms() != D.num_morphisms())
    return std::nullopt;
  if (hint) {
    CatIso out;
    if (C.thin && D.thin) {
      // morphism map is forced in thin categories
      out.obj_map = *hint;
      out.mor_map.assign(C.num_morphisms(), -1);
      for (int m = 0; m < C.num_morphisms(); ++m) {
        const auto& mo = C.morphisms[m];
        int t = D.hom_exists((*hint)[mo.src], (*hint)[mo.dst]);
        if (t < 0) return std::nullopt;
        out.mor_map[m] = t;
      }
      if (detail::validate_iso(C, D, out)) return out;
      return std::nullopt;
    }
    if (detail::assign_morphisms(C, D, *hint, out, budget)) return out;
    return std::nullopt;
  }
  // degree sequences per object
  auto degrees = [](const FinCategory& c) {
    std::vector<std::pair<int, int>> d(c.num_objects(), {0, 0});
    for (const auto& m : c.morphisms) {
      d[m.src].first++;
      d[m.dst].second++;
    }
    return d;
  };
  auto dc = degrees(C), dd = degrees(D);
  int N = C.num_objects();
  std::vector<int> om(N, -1);
  std::vector<char> used(N, 0);
  CatIso out;
  std::function<bool(int)> rec = [&](int k) -> bool {
    if (--budget < 0) throw std::runtime_error("search exceeded budget");
    if (k == N) return detail::assign_morphisms(C, D, om, out, budget);
    for (int t = 0; t < N; ++t) {
      if (used[t] || dd[t] != dc[k]) continue;
      om[k] = t;
      used[t] = 1;
      if (rec(k + 1)) return true;
      used[t] = 0;
      om[k] = -1;
    }
    return false;
  };
  if (rec(0)) return out;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Serialization: three sections (objects, morphisms, composition),
// order-normalized so equal categories serialize identically.

inline std::string serialize_category(const FinCategory& c) {
  std::vector<int> oorder(c.num_objects());
  for (int i = 0; i < c.num_objects(); ++i) oorder[i] = i;
  std::sort(oorder.begin(), oorder.end(),
            [&](int a, int b) { return c.objects[a] < c.objects[b]; });
  std::vector<int> orank(c.num_objects());
  for (int i = 0; i < c.num_objects(); ++i) orank[oorder[i]] = i;

  std::vector<int> morder(c.num_morphisms());
  for (int i = 0; i < c.num_morphisms(); ++i) morder[i] = i;
  std::sort(morder.begin(), morder.end(), [&](int a, int b) {
    const auto& ma = c.morphisms[a];
    const auto& mb = c.morphisms[b];
    return std::tie(orank[ma.src], orank[ma.dst], ma.name) <
           std::tie(orank[mb.src], orank[mb.dst], mb.name);
  });
  std::vector<int> mrank(c.num_morphisms());
  for (int i = 0; i < c.num_morphisms(); ++i) mrank[morder[i]] = i;

  std::ostringstream os;
  os << "objects\n";
  for (int i : oorder) os << c.objects[i] << "\n";
  os << "morphisms\n";
  for (int i : morder)
    os << mrank[i] << ": " << orank[c.morphisms[i].src] << " -> "
       << orank[c.morphisms[i].dst] << "\n";
  os << "composition\n";
  std::vector<std::string> lines;
  for (int g = 0; g < c.num_morphisms(); ++g)
    for (int f = 0; f < c.num_morphisms(); ++f)
      if (c.composable(g, f)) {
        int h = c.compose(g, f);
        if (h >= 0)
          lines.push_back(std::to_string(mrank[g]) + " . " + std::to_string(mrank[f]) +
                          " = " + std::to_string(mrank[h]));
      }
  std::sort(lines.begin(), lines.end());
  for (auto& l : lines) os << l << "\n";
  return os.str();
}

inline FinCategory parse_category(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  FinCategory c;
  int section = 0;
  std::vector<std::tuple<int, int, int>> comps;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line == "objects") { section = 1; continue; }
    if (line == "morphisms") { section = 2; continue; }
    if (line == "composition") { section = 3; continue; }
    if (section == 1) {
      c.objects.push_back(line);
    } else if (section == 2) {
      int id, s, d;
      char colon;
      std::string arrow;
      std::istringstream ls(line);
      ls >> id >> s;
      // format "id: src -> dst": re-parse
      ls.clear();
      ls.str(line);
      ls >> id >> colon;
      ls.clear();
      ls.str(line.substr(line.find(':') + 1));
      ls >> s >> arrow >> d;
      if (static_cast<int>(c.morphisms.size()) != id)
        throw std::runtime_error("parse_category: morphism ids must be consecutive");
      c.morphisms.push_back({s, d, "m" + std::to_string(id)});
    } else if (section == 3) {
      std::istringstream ls(line);
      int g, f, h;
      std::string dot, eq;
      ls >> g >> dot >> f >> eq >> h;
      comps.push_back({g, f, h});
    } else {
      throw std::runtime_error("parse_category: text before section header");
    }
  }
  c.identities.assign(c.num_objects(), -1);
  // identities are the endomorphisms acting as two-sided units
  c.init_table();
  for (auto& [g, f, h] : comps) c.set_composite(g, f, h);
  for (int m = 0; m < c.num_morphisms(); ++m) {
    if (c.morphisms[m].src != c.morphisms[m].dst) continue;
    bool unit = true;
    for (int f = 0; f < c.num_morphisms() && unit; ++f) {
      if (c.morphisms[f].dst == c.morphisms[m].src && c.compose(m, f) != f) unit = false;
      if (c.morphisms[f].src == c.morphisms[m].src && c.compose(f, m) != f) unit = false;
    }
    if (unit) c.identities[c.morphisms[m].src] = m;
  }
  return c;
}

}  // namespace topocat

#endif  // TOPOCAT_FINCAT_HPP
