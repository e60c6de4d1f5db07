#pragma once

// Desk-scale verifications of the equivalence results.  Every check builds
// both sides of a claimed equivalence independently and compares integer
// homology (or a categorical witness) exactly within the valid degree range.

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "topocat/homology.hpp"
#include "topocat/manifolds.hpp"

namespace topocat {

// ---------------------------------------------------------------------------
// CheckReport

struct CheckReport {
  std::string name;
  std::vector<std::pair<std::string, std::string>> params;  // deterministic order
  std::string verdict;  // pass | fail | inconclusive-truncation | inconclusive
  std::string left, right;
  int degrees_valid = -1;
  double wall_time_ms = 0.0;
  std::string stabilization;  // empty when no sweep applies
  std::string note;

  bool passed() const { return verdict == "pass"; }

  // machine output omits wall time so identical runs are byte-identical
  nlohmann::ordered_json to_json(bool machine) const {
    nlohmann::ordered_json j;
    j["v"] = 1;
    j["name"] = name;
    nlohmann::ordered_json p = nlohmann::ordered_json::object();
    for (const auto& [k, v] : params) p[k] = v;
    j["params"] = p;
    j["verdict"] = verdict;
    j["left"] = left;
    j["right"] = right;
    j["degrees_valid"] = degrees_valid;
    if (!machine) j["wall_time_ms"] = wall_time_ms;
    j["stabilization"] = stabilization;
    j["note"] = note;
    return j;
  }
  std::string machine_line() const { return to_json(true).dump(); }

  std::string table_line() const {
    std::ostringstream os;
    os << name;
    for (const auto& [k, v] : params) os << " " << k << "=" << v;
    os << " | " << verdict;
    if (degrees_valid >= 0) os << " through degree " << degrees_valid;
    if (!left.empty()) os << " | left: " << left << " | right: " << right;
    if (!stabilization.empty()) os << " | sweep: " << stabilization;
    if (!note.empty()) os << " | " << note;
    os << " | " << wall_time_ms << " ms";
    return os.str();
  }
};

namespace detail {

using Clock = std::chrono::steady_clock;
inline double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// zero homology above the top of a complete complex
inline HomologySummary pad_summary(HomologySummary h, int through) {
  while (h.valid_through < through) {
    h.betti.push_back(0);
    h.torsion.push_back({});
    ++h.valid_through;
  }
  return h;
}

inline HomologySummary capped_homology(const ChainComplex& cc, int through) {
  auto [red, log] = coreduce(cc);
  int d = std::min(through, red.valid_through());
  auto h = homology(red, d);
  if (cc.complete) h = pad_summary(h, through);
  return h;
}

inline HomologySummary sset_homology(const SimplicialSet& X, int through) {
  auto cc = normalized_chains(X, X.top_dim);
  return capped_homology(cc, through);
}

inline std::string compare_verdict(const HomologySummary& l, const HomologySummary& r,
                                   int want, int& degrees_valid) {
  int d = std::min({want, l.valid_through, r.valid_through});
  degrees_valid = d;
  if (d < 0 || !l.equals_through(r, d)) return "fail";
  return d < want ? "inconclusive-truncation" : "pass";
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Barycentric retraction onto the covering tail of a coordinate string.
//
// A point carries coordinates (x_0,...,x_r) summing to 1 and a flag index q
// from which every later stage of the string covers the configuration; the
// retraction zeroes the head and renormalizes the tail.

constexpr double kBaryTol = 1e-12;

struct BarycentricPoint {
  std::vector<double> x;
  int q = 0;

  std::vector<std::string> validate() const {
    std::vector<std::string> bad;
    double s = 0;
    for (double v : x) {
      if (v < -kBaryTol) bad.push_back("negative coordinate");
      s += v;
    }
    if (std::abs(s - 1.0) > kBaryTol) bad.push_back("coordinates do not sum to 1");
    if (q < 0 || q >= static_cast<int>(x.size())) bad.push_back("flag index out of range");
    double tail = 0;
    for (int i = q; i < static_cast<int>(x.size()); ++i) tail += x[i];
    if (tail <= kBaryTol) bad.push_back("no nonzero coordinate past the flag");
    return bad;
  }
};

inline BarycentricPoint bary_retract(const BarycentricPoint& p) {
  double tail = 0;
  for (int i = p.q; i < static_cast<int>(p.x.size()); ++i) tail += p.x[i];
  if (tail <= kBaryTol) throw std::runtime_error("zero tail");
  BarycentricPoint out;
  out.q = p.q;
  out.x.assign(p.x.size(), 0.0);
  for (int i = p.q; i < static_cast<int>(p.x.size()); ++i) out.x[i] = p.x[i] / tail;
  return out;
}

inline BarycentricPoint bary_homotopy(const BarycentricPoint& p, double t) {
  BarycentricPoint r = bary_retract(p);
  BarycentricPoint out;
  out.q = p.q;
  out.x.resize(p.x.size());
  for (size_t i = 0; i < p.x.size(); ++i) out.x[i] = (1 - t) * p.x[i] + t * r.x[i];
  return out;
}

// ---------------------------------------------------------------------------
// verify_nerve_ak: the classifying space of the isotopy-equivalence poset
// splits as a disjoint union of configuration complexes, one per ball count.

inline CheckReport verify_nerve_ak(const ManifoldModel& model, int k, int max_degree) {
  if (model.num_points() < 3 * k) throw std::runtime_error("model too small");
  auto t0 = detail::Clock::now();
  CheckReport rep;
  rep.name = "nerve-ak";
  rep.params = {{"model", model.spec()},
                {"k", std::to_string(k)},
                {"max_degree", std::to_string(max_degree)}};

  auto both_sides = [&](const ManifoldModel& m) {
    auto bundle = build_Bk(m, enumerate_balls(m), k);
    auto cc = order_complex_chains(bundle.ak_poset(), max_degree + 1);
    auto lh = detail::capped_homology(cc, max_degree);
    HomologySummary rh;
    rh.valid_through = max_degree;
    rh.betti.assign(max_degree + 1, 0);
    rh.torsion.assign(max_degree + 1, {});
    for (int j = 0; j <= k; ++j) {
      auto conf = config_complex(m, j);
      rh = direct_sum(rh, detail::sset_homology(conf, max_degree));
    }
    return std::make_pair(lh, rh);
  };

  auto [lh, rh] = both_sides(model);
  rep.left = lh.to_string();
  rep.right = rh.to_string();
  rep.verdict = detail::compare_verdict(lh, rh, max_degree, rep.degrees_valid);

  // resolution sweep: the verdict and both sides must persist at finer scales
  bool stable = rep.passed();
  for (int extra = 1; extra <= 2 && stable; ++extra) {
    ManifoldModel finer = model;
    if (finer.kind == ModelKind::Grid) break;
    finer.cols += extra;
    auto [l2, r2] = both_sides(finer);
    int dv = -1;
    if (detail::compare_verdict(l2, r2, max_degree, dv) != "pass" ||
        !l2.equals_through(lh, std::min(lh.valid_through, l2.valid_through)))
      stable = false;
  }
  rep.stabilization = stable ? "stable" : "unstable";
  rep.wall_time_ms = detail::ms_since(t0);
  return rep;
}

// ---------------------------------------------------------------------------
// verify_thomason: the nerve of the Grothendieck construction has the
// homology of the homotopy colimit of the objectwise nerves.

inline CheckReport verify_thomason(
    const FinCategory& C, const CatValuedFunctor& F, int through,
    std::vector<std::pair<std::string, std::string>> params = {}) {
  auto t0 = detail::Clock::now();
  CheckReport rep;
  rep.name = "thomason";
  rep.params = std::move(params);
  rep.params.push_back({"max_degree", std::to_string(through)});
  int top = through + 1;

  auto gr = grothendieck(C, F);
  auto lh = detail::sset_homology(nerve(gr.cat, top), through);

  std::vector<NerveResult> fiber_nerves;
  for (int c = 0; c < C.num_objects(); ++c)
    fiber_nerves.push_back(nerve_indexed(F.fiber(c), top));
  SSetValuedFunctor NF;
  NF.source = &C;
  for (int c = 0; c < C.num_objects(); ++c) NF.values.push_back(fiber_nerves[c].sset);
  for (int m = 0; m < C.num_morphisms(); ++m) {
    const auto& mo = C.morphisms[m];
    NF.actions.push_back(
        nerve_map(F.action(m), fiber_nerves[mo.src], fiber_nerves[mo.dst]));
  }
  auto rh = detail::sset_homology(hocolim(C, NF, top), through);

  rep.left = lh.to_string();
  rep.right = rh.to_string();
  rep.verdict = detail::compare_verdict(lh, rh, through, rep.degrees_valid);
  rep.wall_time_ms = detail::ms_since(t0);
  return rep;
}

// ---------------------------------------------------------------------------
// verify_vertex_fiber: the strict fiber of hocolim(F) -> nerve(C) over the
// vertex of an object c is F(c) itself.

inline CheckReport verify_vertex_fiber(
    const FinCategory& C, const SSetValuedFunctor& F,
    std::vector<std::pair<std::string, std::string>> params = {}) {
  auto t0 = detail::Clock::now();
  CheckReport rep;
  rep.name = "fiber";
  rep.params = std::move(params);
  int top = 1;
  for (const auto& v : F.values) top = std::max(top, v->top_dim + 1);
  auto hc = hocolim_indexed(C, F, top);
  auto proj = projection_to_nerve(hc);
  int good = 0;
  std::string failures;
  for (int c = 0; c < C.num_objects(); ++c) {
    auto fib = vertex_fiber(proj, c);
    if (sset_isomorphic(fib, F.value(c)))
      ++good;
    else
      failures += (failures.empty() ? "" : ",") + C.objects[c];
  }
  rep.left = std::to_string(good) + "/" + std::to_string(C.num_objects()) + " fibers";
  rep.right = "objectwise values";
  rep.verdict = failures.empty() ? "pass" : "fail";
  if (!failures.empty()) rep.note = "mismatch at " + failures;
  rep.wall_time_ms = detail::ms_since(t0);
  return rep;
}

// ---------------------------------------------------------------------------
// verify_homotopy_terminal_J: every comma category under the constant-string
// functor J has an initial object, so J is homotopy terminal.  A missing
// initial object is inconclusive rather than a refutation: contractibility
// could still hold, but this check does not compute it.

inline CheckReport verify_homotopy_terminal_J(const PosetBundle& bundle, int q,
                                              const OpenSetRep& V) {
  auto t0 = detail::Clock::now();
  CheckReport rep;
  rep.name = "terminal-j";
  rep.params = {{"model", bundle.model.spec()},
                {"k", std::to_string(bundle.k)},
                {"q", std::to_string(q)},
                {"region", V.name()}};
  auto r = build_AkqBk(bundle, q, V);
  int n = r->string_cat.num_objects();
  int with_initial = 0, constant = 0;
  std::string missing;
  for (int x = 0; x < n; ++x) {
    auto com = comma_category(r->J, x);
    auto ini = has_initial(com.cat);
    if (!ini) {
      missing += (missing.empty() ? "" : ",") + r->string_cat.objects[x];
      continue;
    }
    ++with_initial;
    if (com.witnesses[*ini].c == r->strings.chains[x].back()) ++constant;
  }
  rep.left = std::to_string(with_initial) + "/" + std::to_string(n) +
             " comma categories with initial object";
  rep.right = std::to_string(constant) + " constant strings";
  rep.verdict = missing.empty() ? "pass" : "inconclusive";
  if (!missing.empty()) rep.note = "no initial object under " + missing;
  rep.wall_time_ms = detail::ms_since(t0);
  return rep;
}

// ---------------------------------------------------------------------------
// verify_grothendieck_decomposition: a p-string U_0 -> ... -> U_p is the same
// as a pair (U_p, (p-1)-string inside U_p); the identification is validated
// as a hinted isomorphism onto the Grothendieck construction of the fiberwise
// string posets over the isotopy-equivalence category.

inline CheckReport verify_grothendieck_decomposition(const PosetBundle& bundle, int p,
                                                     const OpenSetRep& V) {
  if (p < 1) throw std::runtime_error("decomposition needs p >= 1");
  auto t0 = detail::Clock::now();
  CheckReport rep;
  rep.name = "decomposition";
  rep.params = {{"model", bundle.model.spec()},
                {"k", std::to_string(bundle.k)},
                {"p", std::to_string(p)},
                {"region", V.name()}};

  auto restricted = restrict_to(bundle, V);
  auto lhs_sp = build_AkBkp_poset(restricted, p, whole_model(bundle.model));
  auto lhs = lhs_sp.poset.to_category();
  auto akc = restricted.ak_category();

  CatValuedFunctor F;
  F.source = &akc;
  std::vector<std::unique_ptr<StringPoset>> fiber_sps;
  for (int v = 0; v < restricted.size(); ++v) {
    auto sp = std::make_unique<StringPoset>(
        build_AkBkp_poset(restricted, p - 1, restricted.objects[v]));
    F.fibers.push_back(sp->poset.to_category());
    fiber_sps.push_back(std::move(sp));
  }
  // chain index translation between the two restrictions
  auto translate = [&](int s, int d, const std::vector<int>& ch) {
    std::vector<int> tgt;
    for (int x : ch)
      tgt.push_back(fiber_sps[d]->restricted.find_object(
          fiber_sps[s]->restricted.objects[x]));
    for (size_t i = 0; i < fiber_sps[d]->chains.size(); ++i)
      if (fiber_sps[d]->chains[i] == tgt) return static_cast<int>(i);
    return -1;
  };
  F.actions.resize(akc.num_morphisms());
  bool wired = true;
  for (int m = 0; m < akc.num_morphisms() && wired; ++m) {
    int s = akc.morphisms[m].src, d = akc.morphisms[m].dst;
    CatFunctor& f = F.actions[m];
    f.source = &F.fibers[s];
    f.target = &F.fibers[d];
    for (const auto& ch : fiber_sps[s]->chains) {
      int idx = translate(s, d, ch);
      if (idx < 0) wired = false;
      f.on_objects.push_back(idx);
    }
    f.on_morphisms.resize(F.fibers[s].num_morphisms());
    for (int mm = 0; mm < F.fibers[s].num_morphisms() && wired; ++mm) {
      int a = f.on_objects[F.fibers[s].morphisms[mm].src];
      int b = f.on_objects[F.fibers[s].morphisms[mm].dst];
      int im = a >= 0 && b >= 0 ? F.fibers[d].hom_exists(a, b) : -1;
      if (im < 0) wired = false;
      f.on_morphisms[mm] = im;
    }
  }

  bool ok = false;
  if (wired) {
    auto gr = grothendieck(akc, F);
    rep.left = std::to_string(lhs.num_objects()) + " strings";
    rep.right = std::to_string(gr.cat.num_objects()) + " pairs";
    std::map<std::pair<int, int>, int> gidx;
    for (int i = 0; i < gr.cat.num_objects(); ++i) gidx[gr.object_pairs[i]] = i;
    std::vector<int> hint(lhs.num_objects(), -1);
    bool hinted = true;
    for (size_t i = 0; i < lhs_sp.chains.size() && hinted; ++i) {
      // chain indices live in the restriction to V; translate to the fiber
      const auto& ch = lhs_sp.chains[i];
      int up = ch.back();
      std::vector<int> head;
      for (size_t j = 0; j + 1 < ch.size(); ++j)
        head.push_back(fiber_sps[up]->restricted.find_object(
            lhs_sp.restricted.objects[ch[j]]));
      int x = -1;
      for (size_t j = 0; j < fiber_sps[up]->chains.size(); ++j)
        if (fiber_sps[up]->chains[j] == head) x = static_cast<int>(j);
      auto it = x >= 0 ? gidx.find({up, x}) : gidx.end();
      if (it == gidx.end())
        hinted = false;
      else
        hint[i] = it->second;
    }
    if (hinted) ok = categories_isomorphic(lhs, gr.cat, hint).has_value();
  } else {
    rep.left = std::to_string(lhs.num_objects()) + " strings";
    rep.right = "fiberwise functor not well defined";
  }
  rep.verdict = ok ? "pass" : "fail";
  rep.wall_time_ms = detail::ms_since(t0);
  return rep;
}

// ---------------------------------------------------------------------------
// verify_refinement: passing to a sub-basis does not change the homology of
// the string-category nerves.

inline CheckReport verify_refinement(const ManifoldModel& model, int k, int p,
                                     const OpenSetRep& V, const std::string& subspec,
                                     int max_degree = 1) {
  auto t0 = detail::Clock::now();
  CheckReport rep;
  rep.name = "refinement";
  rep.params = {{"model", model.spec()}, {"k", std::to_string(k)},
                {"p", std::to_string(p)}, {"region", V.name()},
                {"subbasis", subspec},   {"max_degree", std::to_string(max_degree)}};
  auto full = enumerate_balls(model);
  auto sub = subfamily_from_spec(model, subspec);
  if (!validate_basis(model, sub)) throw std::runtime_error("subfamily not a basis");
  auto homology_of = [&](const std::vector<Ball>& family) {
    auto bundle = build_Bk(model, family, k);
    auto sp = build_AkBkp_poset(bundle, p, V);
    auto cc = order_complex_chains(sp.poset, max_degree + 1);
    return detail::capped_homology(cc, max_degree);
  };
  auto lh = homology_of(full);
  auto rh = homology_of(sub);
  rep.left = lh.to_string();
  rep.right = rh.to_string();
  rep.verdict = detail::compare_verdict(lh, rh, max_degree, rep.degrees_valid);
  rep.note = "pi0 " + std::string(lh.betti[0] == rh.betti[0] ? "agrees" : "differs");
  rep.wall_time_ms = detail::ms_since(t0);
  return rep;
}

// ---------------------------------------------------------------------------
// Discrete right Kan extension: the limit of a set-valued cofunctor over the
// restriction of the ball poset to a region.

struct DiscreteCofunctor {
  std::function<int(const OpenSetRep&)> size;
  // U <= W gives F(W) -> F(U)
  std::function<int(const OpenSetRep& U, const OpenSetRep& W, int x)> map;
};

inline std::vector<std::vector<int>> kan_extend_discrete(const PosetBundle& bundle,
                                                         const DiscreteCofunctor& F,
                                                         const OpenSetRep& V) {
  auto restricted = restrict_to(bundle, V);
  int n = restricted.size();
  FinPoset op;
  op.elements.resize(n);
  op.leq.assign(n, std::vector<bool>(n, false));
  for (int a = 0; a < n; ++a) {
    op.elements[a] = restricted.objects[a].name();
    for (int b = 0; b < n; ++b) op.leq[a][b] = restricted.leq[b][a];
  }
  FinCategory cat = op.to_category();
  FinSetFunctor G;
  G.source = &cat;
  for (int a = 0; a < n; ++a) G.sizes.push_back(F.size(restricted.objects[a]));
  for (const auto& m : cat.morphisms) {
    std::vector<int> act(G.sizes[m.src]);
    for (int x = 0; x < G.sizes[m.src]; ++x)
      act[x] = F.map(restricted.objects[m.dst], restricted.objects[m.src], x);
    G.actions.push_back(std::move(act));
  }
  return limit_discrete(G);
}

// ---------------------------------------------------------------------------
// Seeded random instances for the batched checks.  Base categories are forest
// posets (every element has at most one parent), so comparable pairs are
// joined by a unique covering path and edgewise assignments compose strictly.

namespace rnd {

inline FinPoset random_forest_poset(std::mt19937_64& rng, int max_elems,
                                    std::vector<int>* parents_out = nullptr) {
  int n = 1 + static_cast<int>(rng() % max_elems);
  std::vector<int> parent(n, -1);
  for (int i = 1; i < n; ++i)
    if (rng() % 3) parent[i] = static_cast<int>(rng() % i);
  FinPoset p;
  for (int i = 0; i < n; ++i) p.elements.push_back("x" + std::to_string(i));
  p.leq.assign(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i)
    for (int a = i; a >= 0; a = parent[a]) p.leq[i][a] = true;
  if (parents_out) *parents_out = parent;
  return p;
}

// monotone map between posets by rejection, constant fallback
inline std::vector<int> random_monotone_map(std::mt19937_64& rng, const FinPoset& src,
                                            const FinPoset& dst) {
  int n = src.size(), m = dst.size();
  for (int attempt = 0; attempt < 200; ++attempt) {
    std::vector<int> f(n);
    for (int i = 0; i < n; ++i) f[i] = static_cast<int>(rng() % m);
    bool ok = true;
    for (int a = 0; a < n && ok; ++a)
      for (int b = 0; b < n && ok; ++b)
        if (src.leq[a][b] && !dst.leq[f[a]][f[b]]) ok = false;
    if (ok) return f;
  }
  return std::vector<int>(n, static_cast<int>(rng() % m));
}

struct RandomCatDiagram {
  FinCategory base;
  FinPoset base_poset;
  CatValuedFunctor F;  // valid while this struct stays in place
};

inline std::unique_ptr<RandomCatDiagram> random_poset_diagram(std::uint64_t seed,
                                                              int max_objects,
                                                              int max_fiber) {
  std::mt19937_64 rng(seed);
  auto out = std::make_unique<RandomCatDiagram>();
  std::vector<int> parent;
  out->base_poset = random_forest_poset(rng, max_objects, &parent);
  out->base = out->base_poset.to_category();
  int n = out->base_poset.size();
  std::vector<FinPoset> fiber_posets;
  for (int i = 0; i < n; ++i) fiber_posets.push_back(random_forest_poset(rng, max_fiber));
  // one monotone map per covering edge; general morphisms compose the path
  std::vector<std::vector<int>> edge_map(n);
  for (int i = 0; i < n; ++i)
    if (parent[i] >= 0)
      edge_map[i] = random_monotone_map(rng, fiber_posets[i], fiber_posets[parent[i]]);
  out->F.source = &out->base;
  for (int i = 0; i < n; ++i) out->F.fibers.push_back(fiber_posets[i].to_category());
  for (const auto& mo : out->base.morphisms) {
    CatFunctor f;
    f.source = &out->F.fibers[mo.src];
    f.target = &out->F.fibers[mo.dst];
    int sz = fiber_posets[mo.src].size();
    f.on_objects.resize(sz);
    for (int x = 0; x < sz; ++x) {
      int y = x;
      for (int a = mo.src; a != mo.dst; a = parent[a]) y = edge_map[a][y];
      f.on_objects[x] = y;
    }
    f.on_morphisms.resize(out->F.fibers[mo.src].num_morphisms());
    for (int mm = 0; mm < out->F.fibers[mo.src].num_morphisms(); ++mm) {
      const auto& fm = out->F.fibers[mo.src].morphisms[mm];
      f.on_morphisms[mm] =
          out->F.fibers[mo.dst].hom_exists(f.on_objects[fm.src], f.on_objects[fm.dst]);
    }
    out->F.actions.push_back(std::move(f));
  }
  return out;
}

// simplex vertices by iterated faces; 0-simplices are never degenerate
inline std::vector<int> simplex_vertices(const SimplicialSet& X, SimplexRef x) {
  std::vector<int> out;
  int d = x.dim();
  for (int j = 0; j <= d; ++j) {
    SimplexRef y = x;
    while (y.dim() > j) y = X.face(y, y.dim());
    for (int t = 0; t < j; ++t) y = X.face(y, 0);
    out.push_back(y.base_idx);
  }
  return out;
}

// simplicial map induced by a weakly monotone vertex map; requires every
// source simplex to land on a simplex of the target
inline std::optional<SimplicialMap> vertex_induced_map(
    std::shared_ptr<const SimplicialSet> src, std::shared_ptr<const SimplicialSet> dst,
    const std::vector<int>& vmap) {
  std::map<std::vector<int>, std::pair<int, int>> by_vertices;
  for (int d = 0; d <= dst->top_dim; ++d)
    for (int i = 0; i < dst->count(d); ++i)
      by_vertices[simplex_vertices(*dst, dst->nondeg_ref(d, i))] = {d, i};
  SimplicialMap out;
  out.source = src;
  out.target = dst;
  out.images.resize(src->top_dim + 1);
  for (int d = 0; d <= src->top_dim; ++d)
    for (int i = 0; i < src->count(d); ++i) {
      auto vs = simplex_vertices(*src, src->nondeg_ref(d, i));
      std::vector<int> image;
      SurjMap surj(d + 1);
      for (int j = 0; j <= d; ++j) {
        int v = vmap[vs[j]];
        if (image.empty() || image.back() != v) {
          if (!image.empty() && image.back() > v) return std::nullopt;  // not monotone
          image.push_back(v);
        }
        surj[j] = static_cast<int>(image.size()) - 1;
      }
      auto it = by_vertices.find(image);
      if (it == by_vertices.end()) return std::nullopt;
      out.images[d].push_back({it->second.first, it->second.second, surj});
    }
  return out;
}

struct RandomSsetDiagram {
  FinCategory base;
  FinPoset base_poset;
  SSetValuedFunctor F;  // valid while this struct stays in place
};

inline std::unique_ptr<RandomSsetDiagram> random_sset_diagram(std::uint64_t seed,
                                                              int max_objects) {
  std::mt19937_64 rng(seed);
  auto out = std::make_unique<RandomSsetDiagram>();
  std::vector<int> parent;
  out->base_poset = random_forest_poset(rng, max_objects, &parent);
  out->base = out->base_poset.to_category();
  int n = out->base_poset.size();
  std::vector<std::shared_ptr<SimplicialSet>> values;
  std::vector<int> nverts;
  for (int i = 0; i < n; ++i) {
    int m = static_cast<int>(rng() % 3);  // simplex dimension 0..2
    bool hollow = m == 2 && (rng() % 2);
    std::vector<std::vector<int>> facets;
    if (hollow)
      facets = {{0, 1}, {1, 2}, {0, 2}};
    else {
      std::vector<int> all(m + 1);
      std::iota(all.begin(), all.end(), 0);
      facets = {all};
    }
    values.push_back(
        std::make_shared<SimplicialSet>(from_abstract_complex(m + 1, facets, 2)));
    nverts.push_back(m + 1);
  }
  // one induced map per covering edge, by rejection over vertex maps
  std::vector<SimplicialMap> edge_map(n);
  for (int i = 0; i < n; ++i) {
    if (parent[i] < 0) continue;
    int pa = parent[i];
    std::optional<SimplicialMap> got;
    for (int attempt = 0; attempt < 200 && !got; ++attempt) {
      std::vector<int> vm(nverts[i]);
      int cur = static_cast<int>(rng() % nverts[pa]);
      for (int v = 0; v < nverts[i]; ++v) {
        vm[v] = cur;
        cur = std::min(nverts[pa] - 1, cur + static_cast<int>(rng() % 2));
      }
      got = vertex_induced_map(values[i], values[pa], vm);
    }
    if (!got) {
      std::vector<int> vm(nverts[i], 0);  // constant map always works
      got = vertex_induced_map(values[i], values[pa], vm);
    }
    edge_map[i] = *got;
  }
  out->F.source = &out->base;
  out->F.values.assign(values.begin(), values.end());
  for (const auto& mo : out->base.morphisms) {
    SimplicialMap f;
    f.source = values[mo.src];
    f.target = values[mo.dst];
    f.images.resize(values[mo.src]->top_dim + 1);
    for (int d = 0; d <= values[mo.src]->top_dim; ++d)
      for (int i = 0; i < values[mo.src]->count(d); ++i) {
        SimplexRef ref = values[mo.src]->nondeg_ref(d, i);
        for (int a = mo.src; a != mo.dst; a = parent[a]) ref = edge_map[a].apply(ref);
        f.images[d].push_back(ref);
      }
    out->F.actions.push_back(std::move(f));
  }
  return out;
}

inline std::uint64_t instance_seed(std::uint64_t seed, std::uint64_t i) {
  // splitmix64 step keeps per-instance streams independent of each other
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (i + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace rnd

inline CheckReport verify_thomason_random(std::uint64_t seed, int index, int through) {
  auto inst = rnd::random_poset_diagram(rnd::instance_seed(seed, index), 4, 4);
  return verify_thomason(inst->base, inst->F, through,
                         {{"seed", std::to_string(seed)},
                          {"instance", std::to_string(index)}});
}

inline CheckReport verify_fiber_random(std::uint64_t seed, int index) {
  auto inst = rnd::random_sset_diagram(rnd::instance_seed(seed, index), 4);
  return verify_vertex_fiber(inst->base, inst->F,
                             {{"seed", std::to_string(seed)},
                              {"instance", std::to_string(index)}});
}

// ---------------------------------------------------------------------------
// Barycentric batch check: idempotence, homotopy endpoints, and agreement of
// the retraction across shared faces under the recharacterized flag index.

inline CheckReport verify_bary(std::uint64_t seed, int count) {
  auto t0 = detail::Clock::now();
  CheckReport rep;
  rep.name = "bary";
  rep.params = {{"seed", std::to_string(seed)}, {"count", std::to_string(count)}};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  int bad = 0;
  auto close = [&](const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
      if (std::abs(a[i] - b[i]) > kBaryTol) return false;
    return true;
  };
  for (int it = 0; it < count; ++it) {
    int r = 1 + static_cast<int>(rng() % 6);
    BarycentricPoint p;
    p.x.resize(r + 1);
    double s = 0;
    for (double& v : p.x) {
      v = unif(rng) + 1e-6;
      s += v;
    }
    for (double& v : p.x) v /= s;
    p.q = static_cast<int>(rng() % (r + 1));
    if (!p.validate().empty()) {
      ++bad;
      continue;
    }
    auto rp = bary_retract(p);
    if (!close(bary_retract(rp).x, rp.x)) ++bad;
    if (!close(bary_homotopy(p, 0.0).x, p.x)) ++bad;
    if (!close(bary_homotopy(p, 1.0).x, rp.x)) ++bad;
    {
      double sum = 0;
      for (double v : bary_homotopy(p, unif(rng)).x) sum += v;
      if (std::abs(sum - 1.0) > 1e-9) ++bad;
    }
    // shared face: zero a strict subset of coordinates while keeping the tail
    // inhabited; both the point and its face must retract consistently
    BarycentricPoint f = p;
    int kill = static_cast<int>(rng() % (r + 1));
    if (kill != p.q || p.q < r) {
      double removed = f.x[kill == p.q && p.q < r ? r : kill];
      f.x[kill == p.q && p.q < r ? r : kill] = 0;
      int keep = -1;
      for (int i = f.q; i <= r; ++i)
        if (f.x[i] > kBaryTol) keep = i;
      if (keep >= 0) {
        f.x[keep] += removed;  // stay on the simplex
        // recharacterized flag: first index >= q with a nonzero coordinate
        int q2 = f.q;
        while (q2 <= r && f.x[q2] <= kBaryTol) ++q2;
        BarycentricPoint g = f;
        g.q = q2;
        auto rf = bary_retract(f);
        auto rg = bary_retract(g);
        if (!close(rf.x, rg.x)) ++bad;
      }
    }
  }
  rep.left = std::to_string(count - bad) + "/" + std::to_string(count);
  rep.right = "expected identities";
  rep.verdict = bad == 0 ? "pass" : "fail";
  rep.wall_time_ms = detail::ms_since(t0);
  return rep;
}

}  // namespace topocat
