#ifndef TOPOCAT_MANIFOLDS_HPP
#define TOPOCAT_MANIFOLDS_HPP

// Combinatorial manifold models (paths, cycles, grids), their basis balls,
// the posets of bounded-component open sets with the two order relations
// (inclusion, and inclusion inducing a component bijection), the derived
// string categories, and the discrete configuration complex used as the
// homology oracle for unordered configuration spaces.

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "topocat/sset.hpp"

namespace topocat {

enum class ModelKind { Interval, Cycle, Grid };

struct ManifoldModel {
  ModelKind kind = ModelKind::Interval;
  int rows = 1;  // 1 for one-dimensional models
  int cols = 1;

  int dim() const { return kind == ModelKind::Grid ? 2 : 1; }
  int num_points() const { return rows * cols; }

  bool adjacent(int a, int b) const {
    if (a == b) return false;
    if (kind == ModelKind::Interval) return std::abs(a - b) == 1;
    if (kind == ModelKind::Cycle)
      return (a + 1) % cols == b || (b + 1) % cols == a;
    int ar = a / cols, ac = a % cols, br = b / cols, bc = b % cols;
    return std::abs(ar - br) + std::abs(ac - bc) == 1;
  }

  std::string spec() const {
    switch (kind) {
      case ModelKind::Interval: return "interval:" + std::to_string(cols);
      case ModelKind::Cycle: return "cycle:" + std::to_string(cols);
      default: return "grid:" + std::to_string(rows) + "x" + std::to_string(cols);
    }
  }

  // "interval:n", "cycle:n", "grid:mxn"
  static ManifoldModel parse(const std::string& s) {
    auto colon = s.find(':');
    if (colon == std::string::npos)
      throw std::runtime_error("bad model spec: " + s);
    std::string head = s.substr(0, colon), tail = s.substr(colon + 1);
    ManifoldModel m;
    try {
      if (head == "interval") {
        m.kind = ModelKind::Interval;
        m.cols = std::stoi(tail);
      } else if (head == "cycle") {
        m.kind = ModelKind::Cycle;
        m.cols = std::stoi(tail);
        if (m.cols < 3) throw std::runtime_error("model too small: a cycle needs at least 3 points");
      } else if (head == "grid") {
        m.kind = ModelKind::Grid;
        auto x = tail.find('x');
        if (x == std::string::npos) throw std::runtime_error("grid needs mxn");
        m.rows = std::stoi(tail.substr(0, x));
        m.cols = std::stoi(tail.substr(x + 1));
      } else {
        throw std::runtime_error("unknown model kind");
      }
    } catch (const std::invalid_argument&) {
      throw std::runtime_error("bad model spec: " + s);
    }
    if (m.rows < 1 || m.cols < 1) throw std::runtime_error("bad model spec: " + s);
    return m;
  }
};

// ---------------------------------------------------------------------------
// Balls and open sets

struct Ball {
  std::vector<int> points;  // sorted
  // start data for sub-basis selection
  int start = 0, len = 1;        // d = 1
  int x0 = 0, y0 = 0, w = 1, h = 1;  // d = 2
};

// Extensional open set with its cached component decomposition.
struct OpenSetRep {
  std::vector<int> points;                    // sorted
  std::vector<std::vector<int>> components;   // each sorted, ordered by minimum

  static OpenSetRep make(const ManifoldModel& m, std::vector<int> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    OpenSetRep out;
    out.points = pts;
    detail::UnionFind uf(static_cast<int>(pts.size()));
    for (size_t i = 0; i < pts.size(); ++i)
      for (size_t j = i + 1; j < pts.size(); ++j)
        if (m.adjacent(pts[i], pts[j])) uf.unite(static_cast<int>(i), static_cast<int>(j));
    std::map<int, std::vector<int>> comp;
    for (size_t i = 0; i < pts.size(); ++i) comp[uf.find(static_cast<int>(i))].push_back(pts[i]);
    for (auto& [root, c] : comp) out.components.push_back(c);
    std::sort(out.components.begin(), out.components.end());
    return out;
  }

  bool subset_of(const OpenSetRep& o) const {
    return std::includes(o.points.begin(), o.points.end(), points.begin(), points.end());
  }

  bool operator==(const OpenSetRep& o) const { return points == o.points; }

  std::string name() const {
    if (points.empty()) return "{}";
    std::ostringstream os;
    os << "{";
    for (size_t c = 0; c < components.size(); ++c) {
      if (c) os << "|";
      for (size_t i = 0; i < components[c].size(); ++i)
        os << (i ? "," : "") << components[c][i];
    }
    os << "}";
    return os.str();
  }
};

// ---------------------------------------------------------------------------
// enumerate_balls / validate_basis

inline std::vector<Ball> enumerate_balls(const ManifoldModel& m) {
  std::vector<Ball> out;
  if (m.dim() == 1) {
    int n = m.cols;
    int max_len = (m.kind == ModelKind::Cycle) ? n - 1 : n;
    for (int len = 1; len <= max_len; ++len) {
      int starts = (m.kind == ModelKind::Cycle) ? n : n - len + 1;
      for (int s = 0; s < starts; ++s) {
        Ball b;
        b.start = s;
        b.len = len;
        for (int i = 0; i < len; ++i)
          b.points.push_back(m.kind == ModelKind::Cycle ? (s + i) % n : s + i);
        std::sort(b.points.begin(), b.points.end());
        out.push_back(b);
      }
    }
  } else {
    for (int h = 1; h <= m.rows; ++h)
      for (int w = 1; w <= m.cols; ++w)
        for (int y = 0; y + h <= m.rows; ++y)
          for (int x = 0; x + w <= m.cols; ++x) {
            Ball b;
            b.x0 = x;
            b.y0 = y;
            b.w = w;
            b.h = h;
            for (int r = y; r < y + h; ++r)
              for (int c = x; c < x + w; ++c) b.points.push_back(r * m.cols + c);
            std::sort(b.points.begin(), b.points.end());
            out.push_back(b);
          }
  }
  return out;
}

// Basis criterion: every point of every full-family ball sits inside a
// family ball contained in it.
inline bool validate_basis(const ManifoldModel& m, const std::vector<Ball>& family) {
  auto full = enumerate_balls(m);
  for (const auto& big : full)
    for (int p : big.points) {
      bool found = false;
      for (const auto& b : family) {
        if (!std::binary_search(b.points.begin(), b.points.end(), p)) continue;
        if (std::includes(big.points.begin(), big.points.end(), b.points.begin(),
                          b.points.end())) {
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
  return true;
}

// "stride:s" sub-basis: balls whose start coordinate is divisible by s,
// plus all singletons / unit cells.
inline std::vector<Ball> subfamily_from_spec(const ManifoldModel& m,
                                             const std::string& spec) {
  auto full = enumerate_balls(m);
  if (spec.empty() || spec == "full") return full;
  if (spec.rfind("stride:", 0) != 0)
    throw std::runtime_error("bad sub-basis spec: " + spec);
  int s = std::stoi(spec.substr(7));
  if (s < 1) throw std::runtime_error("bad sub-basis spec: " + spec);
  std::vector<Ball> out;
  for (const auto& b : full) {
    bool unit = static_cast<int>(b.points.size()) == 1;
    bool kept = m.dim() == 1 ? b.start % s == 0 : (b.x0 % s == 0 && b.y0 % s == 0);
    if (unit || kept) out.push_back(b);
  }
  return out;
}

// ---------------------------------------------------------------------------
// is_isotopy_equiv

// Inclusion U into V induces a bijection on components, each V-component
// holding exactly one U-component.  Valid as the isotopy-equivalence proxy
// because all balls are convex.
inline bool is_isotopy_equiv(const OpenSetRep& U, const OpenSetRep& V) {
  if (!U.subset_of(V)) throw std::runtime_error("not a subset");
  if (U.components.size() != V.components.size()) return false;
  for (const auto& vc : V.components) {
    int inside = 0;
    for (const auto& uc : U.components)
      if (std::includes(vc.begin(), vc.end(), uc.begin(), uc.end())) ++inside;
    if (inside != 1) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// The poset bundle: one object set, two order relations.

struct PosetBundle {
  ManifoldModel model;
  std::vector<Ball> family;
  int k = 0;
  std::vector<OpenSetRep> objects;          // [0] is the empty set
  std::vector<std::vector<bool>> leq;       // inclusion
  std::vector<std::vector<bool>> ak;        // isotopy-equivalence inclusions

  int size() const { return static_cast<int>(objects.size()); }

  int find_object(const OpenSetRep& u) const {
    for (int i = 0; i < size(); ++i)
      if (objects[i] == u) return i;
    return -1;
  }

  FinPoset bk_poset() const {
    FinPoset p;
    for (const auto& o : objects) p.elements.push_back(o.name());
    p.leq = leq;
    return p;
  }

  FinPoset ak_poset() const {
    FinPoset p;
    for (const auto& o : objects) p.elements.push_back(o.name());
    p.leq = ak;
    return p;
  }

  FinCategory bk_category() const { return bk_poset().to_category(); }
  FinCategory ak_category() const { return ak_poset().to_category(); }
};

namespace detail {
// Separated: vertex-disjoint and non-adjacent, so a union of separated
// balls has the balls themselves as components.  (Two merely disjoint but
// adjacent balls would merge into one component, which may fail to be a
// ball at all; open balls in the continuous model cannot share boundary.)
inline bool separated(const ManifoldModel& m, const std::vector<int>& a,
                      const std::vector<int>& b) {
  for (int x : a)
    for (int y : b)
      if (x == y || m.adjacent(x, y)) return false;
  return true;
}
}  // namespace detail

inline PosetBundle build_Bk(const ManifoldModel& model, const std::vector<Ball>& family,
                            int k) {
  if (k < 0) throw std::runtime_error("build_Bk: k must be nonnegative");
  if (!validate_basis(model, family)) throw std::runtime_error("family is not a basis");
  PosetBundle out;
  out.model = model;
  out.family = family;
  out.k = k;

  std::set<std::vector<int>> seen;  // extensional dedup
  std::function<void(int, int, std::vector<int>&)> rec = [&](int from, int left,
                                                             std::vector<int>& acc) {
    seen.insert(acc);
    if (left == 0) return;
    for (int i = from; i < static_cast<int>(family.size()); ++i) {
      // candidate must stay separated from everything already chosen;
      // checking against the accumulated union is equivalent
      if (!detail::separated(model, acc, family[i].points)) continue;
      std::vector<int> next = acc;
      next.insert(next.end(), family[i].points.begin(), family[i].points.end());
      std::sort(next.begin(), next.end());
      rec(i + 1, left - 1, next);
    }
  };
  std::vector<int> empty;
  rec(0, k, empty);

  std::vector<std::vector<int>> all(seen.begin(), seen.end());
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  for (const auto& pts : all) out.objects.push_back(OpenSetRep::make(model, pts));

  int n = out.size();
  out.leq.assign(n, std::vector<bool>(n, false));
  out.ak.assign(n, std::vector<bool>(n, false));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (out.objects[a].subset_of(out.objects[b])) {
        out.leq[a][b] = true;
        out.ak[a][b] = is_isotopy_equiv(out.objects[a], out.objects[b]);
      }
  return out;
}

inline PosetBundle restrict_to(const PosetBundle& bundle, const OpenSetRep& V) {
  PosetBundle out;
  out.model = bundle.model;
  out.family = bundle.family;
  out.k = bundle.k;
  std::vector<int> keep;
  for (int i = 0; i < bundle.size(); ++i)
    if (bundle.objects[i].subset_of(V)) {
      keep.push_back(i);
      out.objects.push_back(bundle.objects[i]);
    }
  int n = static_cast<int>(keep.size());
  out.leq.assign(n, std::vector<bool>(n, false));
  out.ak.assign(n, std::vector<bool>(n, false));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      out.leq[a][b] = bundle.leq[keep[a]][keep[b]];
      out.ak[a][b] = bundle.ak[keep[a]][keep[b]];
    }
  return out;
}

inline OpenSetRep whole_model(const ManifoldModel& m) {
  std::vector<int> pts(m.num_points());
  std::iota(pts.begin(), pts.end(), 0);
  return OpenSetRep::make(m, pts);
}

// ---------------------------------------------------------------------------
// String categories.
//
// Strings are weakly increasing chains in one relation; morphisms are
// componentwise comparisons in the other relation.  Both constructions
// yield posets (product order on chains), hence thin categories.

struct StringPoset {
  PosetBundle restricted;
  std::vector<std::vector<int>> chains;  // object indices into restricted
  FinPoset poset;
};

namespace detail {
inline StringPoset build_strings(const PosetBundle& bundle, int length,
                                 const OpenSetRep& V,
                                 bool chain_in_leq /* else in ak */) {
  StringPoset out;
  out.restricted = restrict_to(bundle, V);
  const auto& chain_rel = chain_in_leq ? out.restricted.leq : out.restricted.ak;
  const auto& mor_rel = chain_in_leq ? out.restricted.ak : out.restricted.leq;
  int n = out.restricted.size();
  std::vector<std::vector<int>> cur;
  for (int i = 0; i < n; ++i) cur.push_back({i});
  for (int step = 0; step < length; ++step) {
    std::vector<std::vector<int>> next;
    for (const auto& c : cur)
      for (int j = 0; j < n; ++j)
        if (chain_rel[c.back()][j]) {
          auto e = c;
          e.push_back(j);
          next.push_back(e);
        }
    cur = std::move(next);
  }
  out.chains = std::move(cur);
  int m = static_cast<int>(out.chains.size());
  out.poset.leq.assign(m, std::vector<bool>(m, false));
  for (const auto& c : out.chains) {
    std::string nm;
    for (size_t i = 0; i < c.size(); ++i)
      nm += (i ? "<" : "") + out.restricted.objects[c[i]].name();
    out.poset.elements.push_back(nm);
  }
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      bool ok = true;
      for (size_t i = 0; i < out.chains[a].size() && ok; ++i)
        if (!mor_rel[out.chains[a][i]][out.chains[b][i]]) ok = false;
      out.poset.leq[a][b] = ok;
    }
  return out;
}
}  // namespace detail

// Strings of p composable inclusions, morphisms componentwise in the
// isotopy-equivalence relation.
inline StringPoset build_AkBkp_poset(const PosetBundle& bundle, int p,
                                     const OpenSetRep& V) {
  if (p < 0) throw std::runtime_error("build_AkBkp: p must be nonnegative");
  return detail::build_strings(bundle, p, V, true);
}

inline FinCategory build_AkBkp(const PosetBundle& bundle, int p, const OpenSetRep& V) {
  return build_AkBkp_poset(bundle, p, V).poset.to_category();
}

// Strings of q isotopy-equivalence inclusions, morphisms componentwise
// inclusions, together with the constant-string functor from the
// inclusion poset.
struct AkqBkResult {
  StringPoset strings;
  FinCategory string_cat;
  FinCategory bk_cat;  // source of J
  CatFunctor J;        // valid while this struct stays in place
};

inline std::unique_ptr<AkqBkResult> build_AkqBk(const PosetBundle& bundle, int q,
                                                const OpenSetRep& V) {
  if (q < 0) throw std::runtime_error("build_AkqBk: q must be nonnegative");
  auto out = std::make_unique<AkqBkResult>();
  out->strings = detail::build_strings(bundle, q, V, false);
  out->string_cat = out->strings.poset.to_category();
  out->bk_cat = out->strings.restricted.bk_category();
  // constant-string index per object
  std::map<std::vector<int>, int> cidx;
  for (int i = 0; i < static_cast<int>(out->strings.chains.size()); ++i)
    cidx[out->strings.chains[i]] = i;
  CatFunctor& J = out->J;
  J.source = &out->bk_cat;
  J.target = &out->string_cat;
  int n = out->strings.restricted.size();
  J.on_objects.resize(n);
  for (int i = 0; i < n; ++i)
    J.on_objects[i] = cidx.at(std::vector<int>(q + 1, i));
  J.on_morphisms.resize(out->bk_cat.num_morphisms());
  for (int m = 0; m < out->bk_cat.num_morphisms(); ++m) {
    int a = J.on_objects[out->bk_cat.morphisms[m].src];
    int b = J.on_objects[out->bk_cat.morphisms[m].dst];
    int im = out->string_cat.hom_exists(a, b);
    if (im < 0) throw std::runtime_error("build_AkqBk: constant strings not functorial");
    J.on_morphisms[m] = im;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Discrete configuration complex (one-dimensional models only).
//
// A move cell is a set of j pairwise-separated tracks, each a vertex or an
// edge of the model, such that every corner (one endpoint per track) is a
// valid configuration of j pairwise-nonadjacent vertices.  The complex is
// the order complex of the face poset of these cells: simplices are chains
// of cells ordered by trackwise containment.  This is the barycentric
// subdivision of the discrete cube model of simultaneous token moves; the
// n >= 3j margin keeps it homotopy-correct.  (A flag complex on the move
// compatibility graph is wrong at the tight margin: pairwise-compatible
// diagonal moves of three distinct squares span a spurious triangle.)

namespace detail {
inline bool config_valid(const ManifoldModel& m, const std::vector<int>& c) {
  for (size_t a = 0; a < c.size(); ++a)
    for (size_t b = a + 1; b < c.size(); ++b)
      if (c[a] == c[b] || m.adjacent(c[a], c[b])) return false;
  return true;
}
}  // namespace detail

inline SimplicialSet config_complex(const ManifoldModel& model, int j) {
  if (model.dim() != 1)
    throw std::runtime_error("config_complex: one-dimensional models only");
  if (j < 0) throw std::runtime_error("config_complex: j must be nonnegative");
  if (j == 0) return point_sset();
  if (model.num_points() < 3 * j) throw std::runtime_error("model too small for j");
  int n = model.num_points();
  // tracks: single vertices, then edges
  std::vector<std::vector<int>> tracks;
  for (int v = 0; v < n; ++v) tracks.push_back({v});
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (model.adjacent(u, v)) tracks.push_back({u, v});
  int T = static_cast<int>(tracks.size());

  // cells: j tracks whose every corner selection is a valid configuration
  std::vector<std::vector<int>> cells;  // sorted track indices
  std::vector<int> acc;
  std::function<void(int)> rec = [&](int from) {
    if (static_cast<int>(acc.size()) == j) {
      int edges = 0;
      std::vector<int> which;
      for (int t : acc)
        if (tracks[t].size() == 2) which.push_back(t);
      edges = static_cast<int>(which.size());
      bool ok = true;
      for (unsigned mask = 0; ok && mask < (1u << edges); ++mask) {
        std::vector<int> corner;
        int e = 0;
        for (int t : acc) {
          if (tracks[t].size() == 1) corner.push_back(tracks[t][0]);
          else corner.push_back(tracks[t][(mask >> e++) & 1]);
        }
        if (!detail::config_valid(model, corner)) ok = false;
      }
      if (ok) cells.push_back(acc);
      return;
    }
    for (int t = from; t < T; ++t) {
      bool disjoint = true;
      for (int s : acc)
        for (int x : tracks[s])
          for (int y : tracks[t])
            if (x == y) disjoint = false;
      if (!disjoint) continue;
      acc.push_back(t);
      rec(t + 1);
      acc.pop_back();
    }
  };
  rec(0);

  // face poset: trackwise containment (matching forced by disjointness)
  int C = static_cast<int>(cells.size());
  FinPoset p;
  p.leq.assign(C, std::vector<bool>(C, false));
  for (int a = 0; a < C; ++a) {
    std::string nm;
    for (int t : cells[a]) {
      nm += nm.empty() ? "" : "|";
      for (size_t i = 0; i < tracks[t].size(); ++i)
        nm += (i ? "-" : "") + std::to_string(tracks[t][i]);
    }
    p.elements.push_back(nm);
  }
  for (int a = 0; a < C; ++a)
    for (int b = 0; b < C; ++b) {
      bool ok = true;
      for (int s : cells[a]) {
        bool inside = false;
        for (int t : cells[b])
          if (std::includes(tracks[t].begin(), tracks[t].end(), tracks[s].begin(),
                            tracks[s].end()))
            inside = true;
        if (!inside) ok = false;
      }
      p.leq[a][b] = ok;
    }
  return nerve(p.to_category(), j);
}

}  // namespace topocat

#endif  // TOPOCAT_MANIFOLDS_HPP
