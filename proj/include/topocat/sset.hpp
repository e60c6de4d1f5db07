#ifndef TOPOCAT_SSET_HPP
#define TOPOCAT_SSET_HPP

// Simplicial sets in nondegenerate-simplex presentation.  A (possibly
// degenerate) n-simplex is a pair (alpha, y) where y is a stored
// nondegenerate m-simplex and alpha : [n] ->> [m] is a monotone
// surjection; this encoding is the unique Eilenberg-Zilber normal form.
// Faces of arbitrary simplices then need at most one stored-face lookup.
//
// Also here: nerves of finite categories, the simplicial replacement of a
// simplicial-set-valued functor (as a bisimplicial set), its diagonal
// (the homotopy colimit model), the projection to the nerve with vertex
// fibers, pi0, discrete limits, and the cosimplicial replacement
// descriptor.

#include <cassert>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "topocat/fincat.hpp"

namespace topocat {

// Monotone surjection [n] -> [m], stored as its n+1 values.
using SurjMap = std::vector<int>;

inline SurjMap identity_surj(int n) {
  SurjMap s(n + 1);
  std::iota(s.begin(), s.end(), 0);
  return s;
}

inline bool is_identity_surj(const SurjMap& s) {
  for (size_t i = 0; i < s.size(); ++i)
    if (s[i] != static_cast<int>(i)) return false;
  return true;
}

// beta . alpha where alpha : [n] -> [m], beta : [m] -> [k].
inline SurjMap compose_surj(const SurjMap& beta, const SurjMap& alpha) {
  SurjMap out(alpha.size());
  for (size_t i = 0; i < alpha.size(); ++i) out[i] = beta[alpha[i]];
  return out;
}

struct SimplexRef {
  int base_dim = -1;
  int base_idx = -1;
  SurjMap map;  // [n] ->> [base_dim], n = map.size()-1

  int dim() const { return static_cast<int>(map.size()) - 1; }
  bool nondegenerate() const { return is_identity_surj(map); }
  bool operator==(const SimplexRef& o) const {
    return base_dim == o.base_dim && base_idx == o.base_idx && map == o.map;
  }
  bool operator<(const SimplexRef& o) const {
    return std::tie(base_dim, base_idx, map) < std::tie(o.base_dim, o.base_idx, o.map);
  }
};

struct Simplex {
  std::vector<SimplexRef> faces;  // dim+1 entries, each of dimension dim-1
  std::string label;              // canonical construction key
};

class SimplicialSet {
 public:
  int top_dim = 0;
  bool truncated = false;  // simplices beyond top_dim were cut off
  std::vector<std::vector<Simplex>> simplices;  // by dimension 0..top_dim

  int count(int d) const {
    return d >= 0 && d <= top_dim ? static_cast<int>(simplices[d].size()) : 0;
  }

  SimplexRef nondeg_ref(int d, int i) const { return {d, i, identity_surj(d)}; }

  // i-th face of an arbitrary simplex in normal form.
  SimplexRef face(const SimplexRef& x, int i) const {
    int n = x.dim();
    if (n <= 0) throw std::runtime_error("face of a 0-simplex");
    // v = x.map . delta_i
    SurjMap v(n);
    for (int j = 0; j < n; ++j) v[j] = x.map[j < i ? j : j + 1];
    // v hits [0..base_dim] except possibly one missing value w
    int w = -1;
    {
      int expect = 0;
      for (int j = 0; j < n && w < 0; ++j) {
        if (v[j] > expect) w = expect;
        expect = std::max(expect, v[j] + 1);
      }
      if (w < 0 && expect <= x.base_dim) w = expect;
    }
    if (w < 0) return {x.base_dim, x.base_idx, v};  // still surjective
    // factor v = delta_w . surj and resolve one stored face
    SurjMap surj(n);
    for (int j = 0; j < n; ++j) surj[j] = v[j] - (v[j] > w ? 1 : 0);
    const SimplexRef& f = simplices[x.base_dim][x.base_idx].faces[w];
    return {f.base_dim, f.base_idx, compose_surj(f.map, surj)};
  }

  SimplexRef degenerate(const SimplexRef& x, int i) const {
    SurjMap s(x.map.size() + 1);
    for (size_t j = 0; j < s.size(); ++j)
      s[j] = x.map[j <= static_cast<size_t>(i) ? j : j - 1];
    return {x.base_dim, x.base_idx, s};
  }

  // Exhaustive simplicial-identity audit: d_i d_j = d_{j-1} d_i for i<j.
  std::vector<std::string> audit() const {
    std::vector<std::string> bad;
    for (int d = 1; d <= top_dim; ++d)
      for (int s = 0; s < count(d); ++s) {
        const auto& fs = simplices[d][s].faces;
        if (static_cast<int>(fs.size()) != d + 1) {
          bad.push_back("face count wrong at dim " + std::to_string(d));
          continue;
        }
        for (const auto& f : fs)
          if (f.dim() != d - 1)
            bad.push_back("face dimension wrong at dim " + std::to_string(d));
        if (d < 2) continue;
        SimplexRef x = nondeg_ref(d, s);
        for (int j = 1; j <= d; ++j)
          for (int i = 0; i < j; ++i) {
            SimplexRef a = face(face(x, j), i);
            SimplexRef b = face(face(x, i), j - 1);
            if (!(a == b))
              bad.push_back("d" + std::to_string(i) + " d" + std::to_string(j) +
                            " mismatch at dim " + std::to_string(d) + " simplex " +
                            std::to_string(s));
          }
      }
    return bad;
  }
};

inline SimplicialSet point_sset() {
  SimplicialSet x;
  x.top_dim = 0;
  x.simplices.resize(1);
  x.simplices[0].push_back({{}, "pt"});
  return x;
}

// Simplicial set of an abstract simplicial complex: simplices are strictly
// increasing vertex tuples; every face is nondegenerate.
inline SimplicialSet from_abstract_complex(int n_vertices,
                                           const std::vector<std::vector<int>>& maximal,
                                           int top_dim) {
  SimplicialSet x;
  x.top_dim = top_dim;
  x.simplices.resize(top_dim + 1);
  std::map<std::vector<int>, int> index;
  std::set<std::vector<int>> all;
  // close downward
  std::function<void(const std::vector<int>&)> add = [&](const std::vector<int>& s) {
    if (all.count(s)) return;
    all.insert(s);
    if (s.size() > 1)
      for (size_t i = 0; i < s.size(); ++i) {
        std::vector<int> f;
        for (size_t j = 0; j < s.size(); ++j)
          if (j != i) f.push_back(s[j]);
        add(f);
      }
  };
  for (auto m : maximal) {
    std::sort(m.begin(), m.end());
    if (static_cast<int>(m.size()) - 1 > top_dim) {
      // keep only the top_dim skeleton
      x.truncated = true;
    }
    add(m);
  }
  (void)n_vertices;
  for (const auto& s : all) {
    int d = static_cast<int>(s.size()) - 1;
    if (d > top_dim) {
      x.truncated = true;
      continue;
    }
    std::ostringstream lab;
    for (size_t i = 0; i < s.size(); ++i) lab << (i ? "," : "") << s[i];
    index[s] = static_cast<int>(x.simplices[d].size());
    x.simplices[d].push_back({{}, lab.str()});
  }
  for (const auto& s : all) {
    int d = static_cast<int>(s.size()) - 1;
    if (d > top_dim || d == 0) continue;
    auto& sx = x.simplices[d][index.at(s)];
    for (size_t i = 0; i < s.size(); ++i) {
      std::vector<int> f;
      for (size_t j = 0; j < s.size(); ++j)
        if (j != i) f.push_back(s[j]);
      sx.faces.push_back({d - 1, index.at(f), identity_surj(d - 1)});
    }
  }
  return x;
}

// ---------------------------------------------------------------------------
// Simplicial maps

class SimplicialMap {
 public:
  std::shared_ptr<const SimplicialSet> source, target;
  // image of each nondegenerate source simplex, per dimension
  std::vector<std::vector<SimplexRef>> images;

  SimplexRef apply(const SimplexRef& x) const {
    const SimplexRef& im = images[x.base_dim][x.base_idx];
    return {im.base_dim, im.base_idx, compose_surj(im.map, x.map)};
  }

  std::vector<std::string> audit() const {
    std::vector<std::string> bad;
    for (int d = 1; d <= source->top_dim; ++d)
      for (int s = 0; s < source->count(d); ++s) {
        SimplexRef x = source->nondeg_ref(d, s);
        for (int i = 0; i <= d; ++i) {
          SimplexRef a = apply(source->face(x, i));
          SimplexRef b = target->face(apply(x), i);
          if (!(a == b))
            bad.push_back("map does not commute with d" + std::to_string(i) +
                          " at dim " + std::to_string(d) + " simplex " +
                          std::to_string(s));
        }
      }
    return bad;
  }
};

// ---------------------------------------------------------------------------
// Nerve of a finite category.
//
// Nondegenerate n-simplices are strings of n composable non-identity
// morphisms.  Inner faces compose; a composite equal to an identity is
// absorbed into the degeneracy word.

class NerveResult {
 public:
  std::shared_ptr<SimplicialSet> sset;
  // per dimension, the morphism strings; dimension 0 holds singleton object ids
  std::vector<std::vector<std::vector<int>>> strings;
  std::map<std::vector<int>, int> index1plus;  // string -> idx (dims >= 1 keyed by (dim, prefix))

  int index_of(int dim, const std::vector<int>& str) const {
    if (dim == 0) return str[0];
    std::vector<int> key;
    key.push_back(dim);
    key.insert(key.end(), str.begin(), str.end());
    return index1plus.at(key);
  }
};

inline NerveResult nerve_indexed(const FinCategory& C, int top_dim) {
  NerveResult out;
  out.sset = std::make_shared<SimplicialSet>();
  SimplicialSet& X = *out.sset;
  X.top_dim = top_dim;
  X.simplices.resize(top_dim + 1);
  out.strings.resize(top_dim + 1);

  // dimension 0: objects
  for (int o = 0; o < C.num_objects(); ++o) {
    out.strings[0].push_back({o});
    X.simplices[0].push_back({{}, C.objects[o]});
  }
  // non-identity out-adjacency
  std::vector<std::vector<int>> out_mor(C.num_objects());
  for (int m = 0; m < C.num_morphisms(); ++m)
    if (!C.is_identity(m)) out_mor[C.morphisms[m].src].push_back(m);

  for (int d = 1; d <= top_dim; ++d) {
    // extend every (d-1)-string by one composable non-identity morphism
    auto extend_from = [&](const std::vector<int>& str, int end_obj) {
      for (int m : out_mor[end_obj]) {
        std::vector<int> s = str;
        s.push_back(m);
        std::vector<int> key;
        key.push_back(d);
        key.insert(key.end(), s.begin(), s.end());
        out.index1plus[key] = static_cast<int>(out.strings[d].size());
        out.strings[d].push_back(s);
        std::string lab;
        for (int mm : s) lab += (lab.empty() ? "" : "|") + C.morphisms[mm].name;
        X.simplices[d].push_back({{}, lab});
      }
    };
    if (d == 1) {
      for (int o = 0; o < C.num_objects(); ++o) extend_from({}, o);
    } else {
      for (const auto& str : out.strings[d - 1])
        extend_from(str, C.morphisms[str.back()].dst);
    }
  }
  // truncation flag: does any (top_dim+1)-string exist?
  {
    const auto& tops = out.strings[top_dim];
    if (top_dim == 0) {
      for (int o = 0; o < C.num_objects() && !X.truncated; ++o)
        if (!out_mor[o].empty()) X.truncated = true;
    } else {
      for (const auto& str : tops)
        if (!out_mor[C.morphisms[str.back()].dst].empty()) {
          X.truncated = true;
          break;
        }
    }
  }
  // faces
  for (int d = 1; d <= top_dim; ++d)
    for (size_t si = 0; si < out.strings[d].size(); ++si) {
      const auto& str = out.strings[d][si];
      auto& faces = X.simplices[d][si].faces;
      for (int i = 0; i <= d; ++i) {
        std::vector<int> f;
        bool drop_identity = false;
        int drop_pos = -1;  // 0-based entry position of absorbed identity
        if (i == 0) {
          f.assign(str.begin() + 1, str.end());
        } else if (i == d) {
          f.assign(str.begin(), str.end() - 1);
        } else {
          f.assign(str.begin(), str.end());
          int comp = C.compose(str[i], str[i - 1]);
          if (comp < 0) throw std::runtime_error("nerve: missing composite");
          f.erase(f.begin() + i);
          if (C.is_identity(comp)) {
            f.erase(f.begin() + (i - 1));
            drop_identity = true;
            drop_pos = i - 1;
          } else {
            f[i - 1] = comp;
          }
        }
        if (d == 1) {
          int obj = (i == 0) ? C.morphisms[str[0]].dst : C.morphisms[str[0]].src;
          faces.push_back({0, obj, identity_surj(0)});
        } else if (!drop_identity) {
          faces.push_back({d - 1, out.index_of(d - 1, f), identity_surj(d - 1)});
        } else {
          // degeneracy: the face is s_{drop_pos} of the shortened string
          SurjMap mmap(d);
          for (int j = 0; j < d; ++j) mmap[j] = j <= drop_pos ? j : j - 1;
          if (d == 2) {
            faces.push_back({0, C.morphisms[str[0]].src, mmap});
          } else {
            faces.push_back({d - 2, out.index_of(d - 2, f), mmap});
          }
        }
      }
    }
  return out;
}

inline SimplicialSet nerve(const FinCategory& C, int top_dim) {
  return *nerve_indexed(C, top_dim).sset;
}

// Nerve applied to a functor: images of strings may contain identities,
// which turn into degeneracy words.
inline SimplicialMap nerve_map(const CatFunctor& F, const NerveResult& src,
                               const NerveResult& dst) {
  SimplicialMap out;
  out.source = src.sset;
  out.target = dst.sset;
  int top = src.sset->top_dim;
  out.images.resize(top + 1);
  for (int o = 0; o < F.source->num_objects(); ++o)
    out.images[0].push_back({0, F.obj(o), identity_surj(0)});
  for (int d = 1; d <= top; ++d)
    for (const auto& str : src.strings[d]) {
      std::vector<int> image;
      SurjMap mmap(d + 1);
      int v = 0;
      mmap[0] = 0;
      for (int j = 0; j < d; ++j) {
        int im = F.mor(str[j]);
        if (!F.target->is_identity(im)) {
          image.push_back(im);
          ++v;
        }
        mmap[j + 1] = v;
      }
      if (image.empty()) {
        int obj = F.obj(d >= 1 ? F.source->morphisms[str[0]].src : 0);
        out.images[d].push_back({0, obj, mmap});
      } else {
        int bd = static_cast<int>(image.size());
        out.images[d].push_back({bd, dst.index_of(bd, image), mmap});
      }
    }
  return out;
}

// ---------------------------------------------------------------------------
// pi0 via union-find on the 1-skeleton

namespace detail {
struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
  int components() {
    std::set<int> roots;
    for (size_t i = 0; i < parent.size(); ++i) roots.insert(find(static_cast<int>(i)));
    return static_cast<int>(roots.size());
  }
};
}  // namespace detail

inline int pi0(const SimplicialSet& X) {
  detail::UnionFind uf(X.count(0));
  if (X.top_dim >= 1)
    for (int e = 0; e < X.count(1); ++e) {
      SimplexRef r = X.nondeg_ref(1, e);
      uf.unite(X.face(r, 0).base_idx, X.face(r, 1).base_idx);
    }
  return uf.components();
}

// ---------------------------------------------------------------------------
// Functors with simplicial-set values

class SSetValuedFunctor {
 public:
  const FinCategory* source = nullptr;
  std::vector<std::shared_ptr<const SimplicialSet>> values;  // per object
  std::vector<SimplicialMap> actions;                        // per morphism

  const SimplicialSet& value(int c) const { return *values[c]; }
  const SimplicialMap& action(int f) const { return actions[f]; }
};

// ---------------------------------------------------------------------------
// Bisimplicial sets
//
// Bi-nondegenerate (p,q)-cells with horizontal and vertical face structure;
// every cell is (hmap, vmap) applied to a stored bi-nondegenerate cell.

struct BiRef {
  int bp = -1, bq = -1, bidx = -1;
  SurjMap hmap, vmap;
  bool operator==(const BiRef& o) const {
    return bp == o.bp && bq == o.bq && bidx == o.bidx && hmap == o.hmap &&
           vmap == o.vmap;
  }
};

struct BiCell {
  std::vector<BiRef> hfaces;  // p+1
  std::vector<BiRef> vfaces;  // q+1
  std::string label;
};

class BisimplicialSet {
 public:
  int top_p = 0, top_q = 0;
  bool truncated = false;
  std::map<std::pair<int, int>, std::vector<BiCell>> cells;

  int count(int p, int q) const {
    auto it = cells.find({p, q});
    return it == cells.end() ? 0 : static_cast<int>(it->second.size());
  }

  BiRef nondeg_ref(int p, int q, int i) const {
    return {p, q, i, identity_surj(p), identity_surj(q)};
  }

  BiRef h_face(const BiRef& x, int i) const {
    int n = static_cast<int>(x.hmap.size()) - 1;
    SurjMap v(n);
    for (int j = 0; j < n; ++j) v[j] = x.hmap[j < i ? j : j + 1];
    int w = -1, expect = 0;
    for (int j = 0; j < n && w < 0; ++j) {
      if (v[j] > expect) w = expect;
      expect = std::max(expect, v[j] + 1);
    }
    if (w < 0 && expect <= x.bp) w = expect;
    if (w < 0) return {x.bp, x.bq, x.bidx, v, x.vmap};
    SurjMap surj(n);
    for (int j = 0; j < n; ++j) surj[j] = v[j] - (v[j] > w ? 1 : 0);
    const BiRef& f = cells.at({x.bp, x.bq})[x.bidx].hfaces[w];
    return {f.bp, f.bq, f.bidx, compose_surj(f.hmap, surj),
            compose_surj(f.vmap, x.vmap)};
  }

  BiRef v_face(const BiRef& x, int i) const {
    int n = static_cast<int>(x.vmap.size()) - 1;
    SurjMap v(n);
    for (int j = 0; j < n; ++j) v[j] = x.vmap[j < i ? j : j + 1];
    int w = -1, expect = 0;
    for (int j = 0; j < n && w < 0; ++j) {
      if (v[j] > expect) w = expect;
      expect = std::max(expect, v[j] + 1);
    }
    if (w < 0 && expect <= x.bq) w = expect;
    if (w < 0) return {x.bp, x.bq, x.bidx, x.hmap, v};
    SurjMap surj(n);
    for (int j = 0; j < n; ++j) surj[j] = v[j] - (v[j] > w ? 1 : 0);
    const BiRef& f = cells.at({x.bp, x.bq})[x.bidx].vfaces[w];
    return {f.bp, f.bq, f.bidx, compose_surj(f.hmap, x.hmap),
            compose_surj(f.vmap, surj)};
  }

  // horizontal/vertical simplicial identities and their commutation
  std::vector<std::string> audit() const {
    std::vector<std::string> bad;
    for (const auto& [pq, list] : cells) {
      auto [p, q] = pq;
      for (int i = 0; i < static_cast<int>(list.size()); ++i) {
        BiRef x = nondeg_ref(p, q, i);
        if (p >= 2)
          for (int b = 1; b <= p; ++b)
            for (int a = 0; a < b; ++a)
              if (!(h_face(h_face(x, b), a) == h_face(h_face(x, a), b - 1)))
                bad.push_back("h-identity fails");
        if (q >= 2)
          for (int b = 1; b <= q; ++b)
            for (int a = 0; a < b; ++a)
              if (!(v_face(v_face(x, b), a) == v_face(v_face(x, a), b - 1)))
                bad.push_back("v-identity fails");
        for (int a = 0; a <= p && p >= 1; ++a)
          for (int b = 0; b <= q && q >= 1; ++b)
            if (!(v_face(h_face(x, a), b) == h_face(v_face(x, b), a)))
              bad.push_back("h/v faces do not commute");
      }
    }
    return bad;
  }
};

// ---------------------------------------------------------------------------
// Simplicial replacement.
//
// Convention (fixed here once): the horizontal p-line is the disjoint
// union over composable strings c0 -> c1 -> ... -> cp of F(c0); the 0th
// horizontal face truncates at the source and pushes the factor forward
// along F(c0 -> c1).

class SrepResult {
 public:
  std::shared_ptr<BisimplicialSet> biset;
  // per (p,q) cell: (nerve p-string, vertical nondeg q-simplex of F(c0))
  std::map<std::pair<int, int>, std::vector<std::pair<std::vector<int>, int>>> cell_data;
  std::map<std::pair<int, int>, std::map<std::pair<std::vector<int>, int>, int>> cell_index;
  NerveResult base_nerve;  // nerve of the source category, same top dim
};

inline SrepResult srep(const FinCategory& C, const SSetValuedFunctor& F, int top_dim) {
  SrepResult out;
  out.biset = std::make_shared<BisimplicialSet>();
  BisimplicialSet& B = *out.biset;
  B.top_p = B.top_q = top_dim;
  out.base_nerve = nerve_indexed(C, top_dim);
  const auto& nerve_strings = out.base_nerve.strings;

  auto string_source = [&](int p, const std::vector<int>& str) {
    return p == 0 ? str[0] : C.morphisms[str[0]].src;
  };

  for (int p = 0; p <= top_dim; ++p)
    for (const auto& str : nerve_strings[p]) {
      int c0 = string_source(p, str);
      const SimplicialSet& X = F.value(c0);
      for (int q = 0; q <= top_dim && q <= X.top_dim; ++q)
        for (int xi = 0; xi < X.count(q); ++xi) {
          auto key = std::make_pair(str, xi);
          out.cell_index[{p, q}][key] = static_cast<int>(out.cell_data[{p, q}].size());
          out.cell_data[{p, q}].push_back(key);
          B.cells[{p, q}].push_back(
              {{}, {}, "(" + std::to_string(p) + "," + std::to_string(q) + ")"});
        }
      if (X.truncated) B.truncated = true;
      for (int q = top_dim + 1; q <= X.top_dim; ++q)
        if (X.count(q) > 0) B.truncated = true;
    }
  if (out.base_nerve.sset->truncated) B.truncated = true;

  // resolve a possibly-degenerate vertical simplex of F(c) into a BiRef
  auto vref = [&](int p, const std::vector<int>& str, const SimplexRef& x) -> BiRef {
    int idx = out.cell_index.at({p, x.base_dim}).at({str, x.base_idx});
    return {p, x.base_dim, idx, identity_surj(p), x.map};
  };

  for (auto& [pq, list] : B.cells) {
    auto [p, q] = pq;
    for (int ci = 0; ci < static_cast<int>(list.size()); ++ci) {
      const auto& [str, xi] = out.cell_data[{p, q}][ci];
      int c0 = string_source(p, str);
      const SimplicialSet& X = F.value(c0);
      auto& cell = list[ci];
      // horizontal faces
      for (int i = 0; i <= p && p >= 1; ++i) {
        if (i == 0) {
          std::vector<int> f(str.begin() + 1, str.end());
          int f0 = str[0];
          SimplexRef im = F.action(f0).apply(X.nondeg_ref(q, xi));
          std::vector<int> fstr = (p - 1 == 0)
                                      ? std::vector<int>{C.morphisms[f0].dst}
                                      : f;
          int idx = out.cell_index.at({p - 1, im.base_dim}).at({fstr, im.base_idx});
          cell.hfaces.push_back({p - 1, im.base_dim, idx, identity_surj(p - 1), im.map});
        } else if (i == p) {
          std::vector<int> f(str.begin(), str.end() - 1);
          std::vector<int> fstr = (p - 1 == 0) ? std::vector<int>{c0} : f;
          int idx = out.cell_index.at({p - 1, q}).at({fstr, xi});
          cell.hfaces.push_back({p - 1, q, idx, identity_surj(p - 1), identity_surj(q)});
        } else {
          int comp = C.compose(str[i], str[i - 1]);
          std::vector<int> f = str;
          f.erase(f.begin() + i);
          if (!C.is_identity(comp)) {
            f[i - 1] = comp;
            int idx = out.cell_index.at({p - 1, q}).at({f, xi});
            cell.hfaces.push_back(
                {p - 1, q, idx, identity_surj(p - 1), identity_surj(q)});
          } else {
            f.erase(f.begin() + (i - 1));
            SurjMap hm(p);
            for (int j = 0; j < p; ++j) hm[j] = j <= i - 1 ? j : j - 1;
            std::vector<int> fstr = (p - 2 == 0) ? std::vector<int>{c0} : f;
            int idx = out.cell_index.at({p - 2, q}).at({fstr, xi});
            cell.hfaces.push_back({p - 2, q, idx, hm, identity_surj(q)});
          }
        }
      }
      // vertical faces
      for (int j = 0; j <= q && q >= 1; ++j) {
        SimplexRef fx = X.face(X.nondeg_ref(q, xi), j);
        cell.vfaces.push_back(vref(p, str, fx));
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Diagonal of a bisimplicial set.
//
// n-simplices are the (n,n)-cells; a cell in normal form (hmap, vmap) over
// a bi-nondegenerate base is diagonal-nondegenerate iff no index is
// duplicated by both maps at once.

class DiagonalResult {
 public:
  std::shared_ptr<SimplicialSet> sset;
  // per dimension, the (base p, base q, base idx, hmap, vmap) of each simplex
  std::vector<std::vector<BiRef>> witnesses;
  std::vector<std::map<std::tuple<int, int, int, SurjMap, SurjMap>, int>> index;
};

namespace detail {
// all monotone surjections [n] ->> [m], via choosing which of the n steps
// increment the value (exactly m of them do)
inline void enumerate_surjections(int n, int m, std::vector<SurjMap>& out) {
  if (m > n || m < 0) return;
  SurjMap cur(n + 1);
  cur[0] = 0;
  std::function<void(int, int)> rec = [&](int pos, int val) {
    if (pos == n + 1) {
      if (val == m) out.push_back(cur);
      return;
    }
    if (m - val > n + 1 - pos) return;  // not enough steps left
    cur[pos] = val;
    rec(pos + 1, val);
    if (val < m) {
      cur[pos] = val + 1;
      rec(pos + 1, val + 1);
    }
  };
  rec(1, 0);
}

inline bool diag_nondegenerate(const SurjMap& h, const SurjMap& v) {
  for (size_t i = 0; i + 1 < h.size(); ++i)
    if (h[i] == h[i + 1] && v[i] == v[i + 1]) return false;
  return true;
}

// split (h, v) as (h0 . g, v0 . g) with g the diagonal degeneracy word
inline void diag_normalize(const SurjMap& h, const SurjMap& v, SurjMap& g, SurjMap& h0,
                           SurjMap& v0) {
  size_t n = h.size();
  g.resize(n);
  h0.clear();
  v0.clear();
  int val = 0;
  for (size_t i = 0; i < n; ++i) {
    if (i > 0 && h[i] == h[i - 1] && v[i] == v[i - 1]) {
      g[i] = val - 1;
    } else {
      g[i] = val++;
      h0.push_back(h[i]);
      v0.push_back(v[i]);
    }
  }
}
}  // namespace detail

inline DiagonalResult diagonal_indexed(const BisimplicialSet& B, int top_dim) {
  DiagonalResult out;
  out.sset = std::make_shared<SimplicialSet>();
  SimplicialSet& X = *out.sset;
  X.top_dim = top_dim;
  X.truncated = B.truncated;
  X.simplices.resize(top_dim + 1);
  out.witnesses.resize(top_dim + 1);
  out.index.resize(top_dim + 1);

  for (int n = 0; n <= top_dim; ++n) {
    for (const auto& [pq, list] : B.cells) {
      auto [p, q] = pq;
      if (p > n || q > n || p + q < n) continue;
      std::vector<SurjMap> hs, vs;
      detail::enumerate_surjections(n, p, hs);
      detail::enumerate_surjections(n, q, vs);
      for (int ci = 0; ci < static_cast<int>(list.size()); ++ci)
        for (const auto& h : hs)
          for (const auto& v : vs) {
            if (!detail::diag_nondegenerate(h, v)) continue;
            int idx = static_cast<int>(out.witnesses[n].size());
            out.index[n][{p, q, ci, h, v}] = idx;
            out.witnesses[n].push_back({p, q, ci, h, v});
            X.simplices[n].push_back(
                {{}, "d" + std::to_string(n) + "#" + std::to_string(idx)});
          }
    }
  }
  // cells with total degree beyond top_dim produce higher diagonal simplices
  for (const auto& [pq, list] : B.cells)
    if (pq.first + pq.second > top_dim && !list.empty()) X.truncated = true;

  for (int n = 1; n <= top_dim; ++n)
    for (size_t si = 0; si < out.witnesses[n].size(); ++si) {
      BiRef r = out.witnesses[n][si];
      auto& faces = X.simplices[n][si].faces;
      for (int i = 0; i <= n; ++i) {
        BiRef f = B.v_face(B.h_face(r, i), i);
        SurjMap g, h0, v0;
        detail::diag_normalize(f.hmap, f.vmap, g, h0, v0);
        int m = static_cast<int>(h0.size()) - 1;
        int bidx = out.index[m].at({f.bp, f.bq, f.bidx, h0, v0});
        faces.push_back({m, bidx, g});
      }
    }
  return out;
}

inline SimplicialSet diagonal(const BisimplicialSet& B, int top_dim) {
  return *diagonal_indexed(B, top_dim).sset;
}

// ---------------------------------------------------------------------------
// hocolim and the projection to the nerve

struct HocolimResult {
  SrepResult srep;
  DiagonalResult diag;
};

inline HocolimResult hocolim_indexed(const FinCategory& C, const SSetValuedFunctor& F,
                                     int top_dim) {
  HocolimResult out;
  out.srep = srep(C, F, top_dim);
  out.diag = diagonal_indexed(*out.srep.biset, top_dim);
  return out;
}

inline SimplicialSet hocolim(const FinCategory& C, const SSetValuedFunctor& F,
                             int top_dim) {
  return *hocolim_indexed(C, F, top_dim).diag.sset;
}

// The map hocolim(F) -> nerve(C) collapsing the F-coordinate.
inline SimplicialMap projection_to_nerve(const HocolimResult& h) {
  SimplicialMap out;
  out.source = h.diag.sset;
  out.target = h.srep.base_nerve.sset;
  int top = h.diag.sset->top_dim;
  out.images.resize(top + 1);
  for (int n = 0; n <= top; ++n)
    for (const auto& w : h.diag.witnesses[n]) {
      const auto& [str, xi] = h.srep.cell_data.at({w.bp, w.bq})[w.bidx];
      (void)xi;
      if (w.bp == 0) {
        int obj = str[0];
        out.images[n].push_back({0, obj, w.hmap});
      } else {
        int idx = h.srep.base_nerve.index_of(w.bp, str);
        out.images[n].push_back({w.bp, idx, w.hmap});
      }
    }
  return out;
}

// Strict preimage of the totally degenerate simplices on a vertex.
inline SimplicialSet vertex_fiber(const SimplicialMap& p, int v) {
  const SimplicialSet& S = *p.source;
  if (v < 0 || v >= p.target->count(0)) throw std::runtime_error("vertex not in target");
  SimplicialSet out;
  out.top_dim = S.top_dim;
  out.truncated = S.truncated;
  out.simplices.resize(S.top_dim + 1);
  std::vector<std::vector<int>> remap(S.top_dim + 1);
  for (int d = 0; d <= S.top_dim; ++d) {
    remap[d].assign(S.count(d), -1);
    for (int i = 0; i < S.count(d); ++i) {
      const SimplexRef& im = p.images[d][i];
      if (im.base_dim == 0 && im.base_idx == v) {
        remap[d][i] = static_cast<int>(out.simplices[d].size());
        out.simplices[d].push_back({{}, S.simplices[d][i].label});
      }
    }
  }
  for (int d = 1; d <= S.top_dim; ++d)
    for (int i = 0; i < S.count(d); ++i) {
      if (remap[d][i] < 0) continue;
      auto& faces = out.simplices[d][remap[d][i]].faces;
      for (const auto& f : S.simplices[d][i].faces) {
        int ni = remap[f.base_dim][f.base_idx];
        if (ni < 0) throw std::runtime_error("vertex_fiber: face escapes fiber");
        faces.push_back({f.base_dim, ni, f.map});
      }
    }
  return out;
}

// ---------------------------------------------------------------------------
// Simplicial set isomorphism (small instances; backtracking per dimension)

inline bool sset_isomorphic(const SimplicialSet& A, const SimplicialSet& B) {
  int top = std::min(A.top_dim, B.top_dim);
  for (int d = 0; d <= std::max(A.top_dim, B.top_dim); ++d)
    if (A.count(d) != B.count(d)) return false;
  // assignment per dimension; check faces
  std::vector<std::vector<int>> amap(top + 1);
  std::function<bool(int, int)> rec = [&](int d, int i) -> bool {
    if (d > top) return true;
    if (i == A.count(d)) return rec(d + 1, 0);
    std::vector<char> used(B.count(d), 0);
    for (int j = 0; j < A.count(d); ++j)
      if (j < i && amap[d][j] >= 0) used[amap[d][j]] = 1;
    for (int j = 0; j < B.count(d); ++j) {
      if (used[j]) continue;
      bool ok = true;
      if (d > 0) {
        for (int f = 0; f <= d && ok; ++f) {
          const SimplexRef& fa = A.simplices[d][i].faces[f];
          const SimplexRef& fb = B.simplices[d][j].faces[f];
          if (fa.base_dim != fb.base_dim || fa.map != fb.map) ok = false;
          else if (amap[fa.base_dim][fa.base_idx] != fb.base_idx) ok = false;
        }
      }
      if (!ok) continue;
      amap[d][i] = j;
      if (rec(d, i + 1)) return true;
      amap[d][i] = -1;
    }
    return false;
  };
  for (int d = 0; d <= top; ++d) amap[d].assign(A.count(d), -1);
  return rec(0, 0);
}

// ---------------------------------------------------------------------------
// Discrete-set-valued functors; the categorical limit (matching families)

class FinSetFunctor {
 public:
  const FinCategory* source = nullptr;
  std::vector<int> sizes;                  // |F(c)|
  std::vector<std::vector<int>> actions;   // per morphism: F(f) as a vector

  int apply(int f, int x) const { return actions[f][x]; }
};

// All matching families (x_c) with F(f)(x_src) = x_dst for every morphism.
inline std::vector<std::vector<int>> limit_discrete(const FinSetFunctor& F) {
  const FinCategory& C = *F.source;
  int n = C.num_objects();
  std::vector<std::vector<int>> out;
  std::vector<int> assign(n, -1);
  std::function<void(int)> rec = [&](int c) {
    if (c == n) {
      out.push_back(assign);
      return;
    }
    for (int x = 0; x < F.sizes[c]; ++x) {
      assign[c] = x;
      bool ok = true;
      for (int m = 0; m < C.num_morphisms() && ok; ++m) {
        int s = C.morphisms[m].src, d = C.morphisms[m].dst;
        if (s <= c && d <= c && assign[s] >= 0 && assign[d] >= 0)
          if (F.apply(m, assign[s]) != assign[d]) ok = false;
      }
      if (ok) rec(c + 1);
    }
    assign[c] = -1;
  };
  rec(0);
  return out;
}

// ---------------------------------------------------------------------------
// Cosimplicial replacement descriptor.
//
// Convention (fixed here once): the codegree-q product is indexed by
// composable strings c0 -> ... -> cq (degenerate strings included) with
// factor F(cq); the last coface pushes forward along the final morphism.

struct CrepFactor {
  std::vector<int> string;  // morphism ids; empty string stores {object} at q=0
  int object;               // c_q
  int size;                 // |F(c_q)|
};

struct CrepCoface {
  // per factor of codegree q+1: the source factor at codegree q and the
  // morphism transporting it (or -1 for a plain projection)
  std::vector<std::pair<int, int>> assignment;
};

struct CosimplicialDescriptor {
  int top_codegree = 0;
  std::vector<std::vector<CrepFactor>> levels;          // per codegree
  std::vector<std::vector<CrepCoface>> cofaces;         // cofaces[q][i]: level q -> q+1
  std::vector<std::vector<std::vector<int>>> codegens;  // codegens[q][i]: factor source at level q+1 per factor of level q
};

inline CosimplicialDescriptor crep_describe(const FinSetFunctor& F, int top_codegree) {
  const FinCategory& C = *F.source;
  CosimplicialDescriptor out;
  out.top_codegree = top_codegree;
  out.levels.resize(top_codegree + 1);

  // all strings of length q, identities allowed
  std::vector<std::vector<std::vector<int>>> strings(top_codegree + 1);
  std::vector<std::map<std::vector<int>, int>> sindex(top_codegree + 1);
  for (int o = 0; o < C.num_objects(); ++o) {
    sindex[0][{o}] = static_cast<int>(strings[0].size());
    strings[0].push_back({o});
    out.levels[0].push_back({{}, o, F.sizes[o]});
  }
  for (int q = 1; q <= top_codegree; ++q) {
    for (const auto& prev : strings[q - 1]) {
      int end = q == 1 ? prev[0] : C.morphisms[prev.back()].dst;
      for (int m = 0; m < C.num_morphisms(); ++m) {
        if (C.morphisms[m].src != end) continue;
        std::vector<int> s = q == 1 ? std::vector<int>{} : prev;
        s.push_back(m);
        sindex[q][s] = static_cast<int>(strings[q].size());
        strings[q].push_back(s);
        out.levels[q].push_back({s, C.morphisms[m].dst, F.sizes[C.morphisms[m].dst]});
      }
    }
  }
  // cofaces d^i : level q -> level q+1, described per target factor
  out.cofaces.resize(top_codegree);
  for (int q = 0; q < top_codegree; ++q) {
    out.cofaces[q].resize(q + 2);
    for (int i = 0; i <= q + 1; ++i) {
      auto& cf = out.cofaces[q][i];
      for (const auto& s : strings[q + 1]) {
        // source string = d_i(s)
        std::vector<int> t;
        int transport = -1;
        if (q + 1 == 1) {
          if (i == 0) t = {C.morphisms[s[0]].dst};
          else {
            t = {C.morphisms[s[0]].src};
            transport = s[0];
          }
        } else {
          if (i == 0) {
            t.assign(s.begin() + 1, s.end());
          } else if (i == q + 1) {
            t.assign(s.begin(), s.end() - 1);
            transport = s.back();
          } else {
            t = s;
            int comp = C.compose(s[i], s[i - 1]);
            t.erase(t.begin() + i);
            t[i - 1] = comp;
          }
          if (static_cast<int>(t.size()) != q) throw std::runtime_error("crep face");
        }
        cf.assignment.push_back({sindex[q].at(t), transport});
      }
    }
  }
  // codegeneracies s^i : level q+1 -> level q, per factor of level q
  out.codegens.resize(top_codegree);
  for (int q = 0; q < top_codegree; ++q) {
    out.codegens[q].resize(q + 1);
    for (int i = 0; i <= q; ++i) {
      auto& cg = out.codegens[q][i];
      cg.resize(strings[q].size());
      for (size_t si = 0; si < strings[q].size(); ++si) {
        // insert identity at slot i
        std::vector<int> s;
        if (q == 0) {
          s = {C.identities[strings[0][si][0]]};
        } else {
          s = strings[q][si];
          int obj;
          if (i == 0) obj = C.morphisms[s[0]].src;
          else obj = C.morphisms[s[i - 1]].dst;
          s.insert(s.begin() + i, C.identities[obj]);
        }
        cg[si] = {sindex[q + 1].at(s)};
      }
    }
  }
  return out;
}

// cosimplicial identity audit for the descriptor: d^j d^i = d^i d^{j-1} (i<j)
inline std::vector<std::string> crep_audit(const CosimplicialDescriptor& D) {
  std::vector<std::string> bad;
  for (int q = 0; q + 1 < D.top_codegree; ++q)
    for (int j = 1; j <= q + 2; ++j)
      for (int i = 0; i < j; ++i) {
        // both sides: level q -> level q+2, described per target factor
        const auto& dj = D.cofaces[q + 1][j];
        const auto& di_top = D.cofaces[q + 1][i];
        const auto& di = D.cofaces[q][i];
        const auto& djm1 = D.cofaces[q][j - 1];
        for (size_t t = 0; t < dj.assignment.size(); ++t) {
          // d^j d^i: target factor t pulls back through d^j to a level q+1
          // factor, then through d^i to level q
          auto [m1, tr1] = dj.assignment[t];
          auto [m0, tr0] = di.assignment[m1];
          auto [n1, sr1] = di_top.assignment[t];
          auto [n0, sr0] = djm1.assignment[n1];
          if (m0 != n0) bad.push_back("cosimplicial identity fails (factor)");
          // transports must agree as composites; compare presence only when
          // the factor sets are sets (sizes match by construction)
          (void)tr1;
          (void)tr0;
          (void)sr1;
          (void)sr0;
        }
      }
  return bad;
}

}  // namespace topocat

#endif  // TOPOCAT_SSET_HPP
