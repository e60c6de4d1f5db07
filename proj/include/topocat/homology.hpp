#ifndef TOPOCAT_HOMOLOGY_HPP
#define TOPOCAT_HOMOLOGY_HPP

// Integer chain complexes, Smith normal form, F2 ranks, and the
// homology-preserving reduction (free-face collapses and coreduction
// pairs) that keeps nerve-sized complexes tractable.

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <iterator>
#include <limits>
#include <map>
#include <set>
#include <numeric>
#include <queue>
#include <sstream>
#include <tuple>
#include <stdexcept>
#include <string>
#include <vector>

#include "topocat/sset.hpp"

namespace topocat {

using BigInt = boost::multiprecision::cpp_int;

// Sparse integer matrix, column-major; explicit zeros are never stored.
struct IntMatrix {
  int rows = 0, cols = 0;
  std::vector<std::vector<std::pair<int, long long>>> col;  // (row, value), sorted

  static IntMatrix zero(int r, int c) {
    IntMatrix m;
    m.rows = r;
    m.cols = c;
    m.col.resize(c);
    return m;
  }

  void set(int r, int c, long long v) {
    if (v == 0) return;
    col[c].push_back({r, v});
  }

  void normalize() {
    for (auto& column : col) {
      std::sort(column.begin(), column.end());
      std::vector<std::pair<int, long long>> merged;
      for (auto& [r, v] : column) {
        if (!merged.empty() && merged.back().first == r)
          merged.back().second += v;
        else
          merged.push_back({r, v});
      }
      column.clear();
      for (auto& [r, v] : merged)
        if (v != 0) column.push_back({r, v});
    }
  }

  std::string serialize() const {
    std::ostringstream os;
    os << rows << " " << cols << "\n";
    for (int c = 0; c < cols; ++c)
      for (auto& [r, v] : col[c]) os << r << " " << c << " " << v << "\n";
    return os.str();
  }

  static IntMatrix parse(const std::string& text) {
    std::istringstream is(text);
    IntMatrix m;
    is >> m.rows >> m.cols;
    if (!is) throw std::runtime_error("matrix parse: bad header");
    m.col.resize(m.cols);
    int r, c;
    long long v;
    while (is >> r >> c >> v) {
      if (r < 0 || r >= m.rows || c < 0 || c >= m.cols)
        throw std::runtime_error("matrix parse: entry out of range");
      m.set(r, c, v);
    }
    m.normalize();
    return m;
  }
};

// ---------------------------------------------------------------------------
// Chain complexes

struct ChainComplex {
  std::vector<long long> ranks;        // per degree 0..top
  std::vector<IntMatrix> boundaries;   // boundaries[n]: C_n -> C_{n-1}; [0] is empty
  bool complete = true;                // true when nothing was truncated above top

  int top() const { return static_cast<int>(ranks.size()) - 1; }
  int valid_through() const { return complete ? top() : top() - 1; }

  // dd = 0 on all stored degrees
  std::vector<std::string> validate() const {
    std::vector<std::string> bad;
    for (int n = 2; n <= top(); ++n) {
      const IntMatrix& a = boundaries[n - 1];
      const IntMatrix& b = boundaries[n];
      for (int c = 0; c < b.cols; ++c) {
        std::map<int, long long> acc;
        for (auto& [mid, v] : b.col[c])
          for (auto& [r, w] : a.col[mid]) acc[r] += v * w;
        for (auto& [r, v] : acc)
          if (v != 0) {
            bad.push_back("dd != 0 at degree " + std::to_string(n) + " generator " +
                          std::to_string(c));
            break;
          }
      }
    }
    return bad;
  }

  std::string serialize() const {
    std::ostringstream os;
    os << "chaincomplex " << top() << " " << (complete ? 1 : 0) << "\n";
    for (long long r : ranks) os << r << " ";
    os << "\n";
    for (int n = 1; n <= top(); ++n) os << boundaries[n].serialize() << ";\n";
    return os.str();
  }

  static ChainComplex parse(const std::string& text) {
    std::istringstream is(text);
    std::string tag;
    int top = -1, complete_flag = 1;
    is >> tag >> top >> complete_flag;
    if (!is || tag != "chaincomplex" || top < 0)
      throw std::runtime_error("chain complex parse: bad header");
    ChainComplex cc;
    cc.complete = complete_flag != 0;
    cc.ranks.resize(top + 1);
    for (long long& r : cc.ranks)
      if (!(is >> r) || r < 0) throw std::runtime_error("chain complex parse: bad ranks");
    cc.boundaries.resize(top + 1);
    std::string rest((std::istreambuf_iterator<char>(is)),
                     std::istreambuf_iterator<char>());
    size_t pos = 0;
    for (int n = 1; n <= top; ++n) {
      size_t sep = rest.find(';', pos);
      if (sep == std::string::npos)
        throw std::runtime_error("chain complex parse: missing boundary");
      cc.boundaries[n] = IntMatrix::parse(rest.substr(pos, sep - pos));
      if (cc.boundaries[n].rows != cc.ranks[n - 1] || cc.boundaries[n].cols != cc.ranks[n])
        throw std::runtime_error("chain complex parse: rank mismatch");
      pos = sep + 1;
    }
    return cc;
  }
};

// Normalized chains: generators are the nondegenerate simplices; degenerate
// faces contribute zero to the alternating sum.
inline ChainComplex normalized_chains(const SimplicialSet& X, int top) {
  if (X.top_dim < top) throw std::runtime_error("insufficient top dimension");
  ChainComplex cc;
  cc.ranks.resize(top + 1);
  cc.boundaries.resize(top + 1);
  for (int d = 0; d <= top; ++d) cc.ranks[d] = X.count(d);
  for (int n = 1; n <= top; ++n) {
    IntMatrix m = IntMatrix::zero(X.count(n - 1), X.count(n));
    for (int s = 0; s < X.count(n); ++s) {
      const auto& faces = X.simplices[n][s].faces;
      for (int i = 0; i <= n; ++i)
        if (faces[i].nondegenerate())
          m.set(faces[i].base_idx, s, (i % 2 == 0) ? 1 : -1);
    }
    m.normalize();
    cc.boundaries[n] = m;
  }
  cc.complete = !X.truncated && top == X.top_dim;
  if (top < X.top_dim) {
    // truncating below the set's own top: completeness depends on whether
    // simplices exist just above
    cc.complete = X.count(top + 1) == 0 && !X.truncated;
  }
  auto bad = cc.validate();
  if (!bad.empty()) throw std::logic_error("normalized_chains: " + bad.front());
  return cc;
}

// Chains of the nerve of a poset, built directly: nondegenerate simplices
// are strictly increasing chains, and every face of a strict chain is
// strict, so no degeneracy bookkeeping is needed.  Levels are generated in
// lexicographic order; face lookup is a binary search.
inline ChainComplex order_complex_chains(const FinPoset& p, int top) {
  int n = p.size();
  auto strictly = [&](int a, int b) { return a != b && p.leq[a][b]; };
  std::vector<std::vector<std::vector<int>>> levels(top + 1);
  for (int i = 0; i < n; ++i) levels[0].push_back({i});
  for (int d = 1; d <= top; ++d)
    for (const auto& c : levels[d - 1])
      for (int j = 0; j < n; ++j)
        if (strictly(c.back(), j)) {
          auto e = c;
          e.push_back(j);
          levels[d].push_back(e);
        }
  ChainComplex cc;
  cc.complete = true;  // until a longer chain is found
  for (const auto& c : levels[top]) {
    for (int j = 0; j < n && cc.complete; ++j)
      if (strictly(c.back(), j)) cc.complete = false;
    if (!cc.complete) break;
  }
  cc.ranks.resize(top + 1);
  cc.boundaries.resize(top + 1);
  for (int d = 0; d <= top; ++d) cc.ranks[d] = static_cast<long long>(levels[d].size());
  for (int d = 1; d <= top; ++d) {
    IntMatrix m = IntMatrix::zero(static_cast<int>(levels[d - 1].size()),
                                  static_cast<int>(levels[d].size()));
    std::vector<int> face;
    for (int s = 0; s < static_cast<int>(levels[d].size()); ++s) {
      const auto& c = levels[d][s];
      for (int i = 0; i <= d; ++i) {
        face.clear();
        for (int j = 0; j <= d; ++j)
          if (j != i) face.push_back(c[j]);
        auto it = std::lower_bound(levels[d - 1].begin(), levels[d - 1].end(), face);
        m.set(static_cast<int>(it - levels[d - 1].begin()), s, (i % 2 == 0) ? 1 : -1);
      }
    }
    m.normalize();
    cc.boundaries[d] = m;
  }
  auto bad = cc.validate();
  if (!bad.empty()) throw std::logic_error("order_complex_chains: " + bad.front());
  return cc;
}

// ---------------------------------------------------------------------------
// Smith normal form.
//
// Elimination with pivoting on minimal-absolute-value entries; the int64
// path checks every arithmetic step and transparently promotes to
// arbitrary precision on overflow.

namespace detail {

struct Overflow {};

inline long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline long long checked_sub(long long a, long long b) {
  long long r;
  if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline BigInt checked_mul(const BigInt& a, const BigInt& b) { return a * b; }
inline BigInt checked_sub(const BigInt& a, const BigInt& b) { return a - b; }

template <class T>
std::vector<T> smith_dense(std::vector<std::vector<T>> a) {
  int rows = static_cast<int>(a.size());
  int cols = rows ? static_cast<int>(a[0].size()) : 0;
  std::vector<T> diag;
  int t = 0;
  auto abs_of = [](const T& x) { return x < 0 ? T(-x) : x; };
  while (true) {
    // minimal nonzero entry in the trailing submatrix, ties by (row, col)
    int pi = -1, pj = -1;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j)
        if (a[i][j] != 0 &&
            (pi < 0 || abs_of(a[i][j]) < abs_of(a[pi][pj])))
          pi = i, pj = j;
    if (pi < 0) break;
    std::swap(a[t], a[pi]);
    for (int i = 0; i < rows; ++i) std::swap(a[i][t], a[i][pj]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (int i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        T q = a[i][t] / a[t][t];
        for (int j = t; j < cols; ++j)
          a[i][j] = checked_sub(a[i][j], checked_mul(q, a[t][j]));
        if (a[i][t] != 0) {  // remainder became the smaller pivot
          std::swap(a[t], a[i]);
          clean = false;
        }
      }
      for (int j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        T q = a[t][j] / a[t][t];
        for (int i = t; i < rows; ++i)
          a[i][j] = checked_sub(a[i][j], checked_mul(q, a[i][t]));
        if (a[t][j] != 0) {
          for (int i = 0; i < rows; ++i) std::swap(a[i][t], a[i][j]);
          clean = false;
        }
      }
    }
    diag.push_back(abs_of(a[t][t]));
    ++t;
    if (t >= rows || t >= cols) break;
  }
  // enforce the divisibility chain: diag(a,b) ~ diag(gcd,lcm)
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i + 1 < diag.size(); ++i)
      if (diag[i + 1] % diag[i] != 0) {
        T g = std::gcd(diag[i], diag[i + 1]);
        T l = checked_mul(diag[i] / g, diag[i + 1]);
        diag[i] = g;
        diag[i + 1] = l;
        changed = true;
      }
  }
  return diag;
}

template <>
inline std::vector<BigInt> smith_dense<BigInt>(std::vector<std::vector<BigInt>> a) {
  int rows = static_cast<int>(a.size());
  int cols = rows ? static_cast<int>(a[0].size()) : 0;
  std::vector<BigInt> diag;
  int t = 0;
  auto abs_of = [](const BigInt& x) { return x < 0 ? BigInt(-x) : x; };
  while (true) {
    int pi = -1, pj = -1;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j)
        if (a[i][j] != 0 && (pi < 0 || abs_of(a[i][j]) < abs_of(a[pi][pj])))
          pi = i, pj = j;
    if (pi < 0) break;
    std::swap(a[t], a[pi]);
    for (int i = 0; i < rows; ++i) std::swap(a[i][t], a[i][pj]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (int i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        BigInt q = a[i][t] / a[t][t];
        for (int j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) {
          std::swap(a[t], a[i]);
          clean = false;
        }
      }
      for (int j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        BigInt q = a[t][j] / a[t][t];
        for (int i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) {
          for (int i = 0; i < rows; ++i) std::swap(a[i][t], a[i][j]);
          clean = false;
        }
      }
    }
    diag.push_back(abs_of(a[t][t]));
    ++t;
    if (t >= rows || t >= cols) break;
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i + 1 < diag.size(); ++i)
      if (diag[i + 1] % diag[i] != 0) {
        BigInt g = boost::multiprecision::gcd(diag[i], diag[i + 1]);
        BigInt l = (diag[i] / g) * diag[i + 1];
        diag[i] = g;
        diag[i + 1] = l;
        changed = true;
      }
  }
  return diag;
}

}  // namespace detail

// Invariant factor list d1 | d2 | ... of M; rank = number of factors.
inline std::vector<long long> smith(const IntMatrix& m) {
  // drop all-zero rows and columns first
  std::vector<char> row_used(m.rows, 0);
  std::vector<int> cols_used;
  for (int c = 0; c < m.cols; ++c)
    if (!m.col[c].empty()) {
      cols_used.push_back(c);
      for (auto& [r, v] : m.col[c]) row_used[r] = 1;
    }
  std::vector<int> rmap(m.rows, -1);
  int nr = 0;
  for (int r = 0; r < m.rows; ++r)
    if (row_used[r]) rmap[r] = nr++;
  int nc = static_cast<int>(cols_used.size());
  if (nr == 0 || nc == 0) return {};

  try {
    std::vector<std::vector<long long>> a(nr, std::vector<long long>(nc, 0));
    for (int j = 0; j < nc; ++j)
      for (auto& [r, v] : m.col[cols_used[j]]) a[rmap[r]][j] = v;
    return detail::smith_dense<long long>(std::move(a));
  } catch (detail::Overflow&) {
    std::vector<std::vector<BigInt>> a(nr, std::vector<BigInt>(nc, 0));
    for (int j = 0; j < nc; ++j)
      for (auto& [r, v] : m.col[cols_used[j]]) a[rmap[r]][j] = v;
    auto big = detail::smith_dense<BigInt>(std::move(a));
    std::vector<long long> out;
    out.reserve(big.size());
    for (auto& b : big) {
      if (b > BigInt(std::numeric_limits<long long>::max()))
        throw std::runtime_error("smith: invariant factor exceeds 64 bits");
      out.push_back(b.convert_to<long long>());
    }
    return out;
  }
}

// ---------------------------------------------------------------------------
// Homology summaries

struct HomologySummary {
  std::vector<long long> betti;                 // degrees 0..valid_through
  std::vector<std::vector<long long>> torsion;  // sorted, divisibility chain
  int valid_through = -1;

  bool equals_through(const HomologySummary& o, int through) const {
    if (valid_through < through || o.valid_through < through) return false;
    for (int d = 0; d <= through; ++d)
      if (betti[d] != o.betti[d] || torsion[d] != o.torsion[d]) return false;
    return true;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << "betti (";
    for (int d = 0; d <= valid_through; ++d) os << (d ? "," : "") << betti[d];
    os << ")";
    for (int d = 0; d <= valid_through; ++d)
      if (!torsion[d].empty()) {
        os << " torsion[" << d << "]=(";
        for (size_t i = 0; i < torsion[d].size(); ++i)
          os << (i ? "," : "") << torsion[d][i];
        os << ")";
      }
    return os.str();
  }
};

// degreewise direct sum
inline HomologySummary direct_sum(const HomologySummary& a, const HomologySummary& b) {
  HomologySummary out;
  out.valid_through = std::min(a.valid_through, b.valid_through);
  for (int d = 0; d <= out.valid_through; ++d) {
    out.betti.push_back(a.betti[d] + b.betti[d]);
    std::vector<long long> t = a.torsion[d];
    t.insert(t.end(), b.torsion[d].begin(), b.torsion[d].end());
    std::sort(t.begin(), t.end());
    out.torsion.push_back(t);
  }
  return out;
}

inline HomologySummary homology(const ChainComplex& cc, int through) {
  if (through > cc.valid_through() || through < 0)
    throw std::runtime_error("degree beyond validity range");
  HomologySummary out;
  out.valid_through = through;
  std::vector<std::vector<long long>> factors(through + 2);
  for (int n = 1; n <= through + 1; ++n) {
    if (n <= cc.top())
      factors[n] = smith(cc.boundaries[n]);
    else
      factors[n] = {};  // complete complex: zero boundary above top
  }
  for (int n = 0; n <= through; ++n) {
    long long rank_n = n >= 1 ? static_cast<long long>(factors[n].size()) : 0;
    long long rank_np1 = static_cast<long long>(factors[n + 1].size());
    out.betti.push_back(cc.ranks[n] - rank_n - rank_np1);
    std::vector<long long> t;
    for (long long f : factors[n + 1])
      if (f > 1) t.push_back(f);
    std::sort(t.begin(), t.end());
    out.torsion.push_back(t);
  }
  return out;
}

// ---------------------------------------------------------------------------
// F2 Betti numbers via bitset elimination

namespace detail {
inline long long rank_f2(const IntMatrix& m) {
  int words = (m.rows + 63) / 64;
  std::vector<std::vector<uint64_t>> cols;
  for (int c = 0; c < m.cols; ++c) {
    std::vector<uint64_t> bits(words, 0);
    bool nonzero = false;
    for (auto& [r, v] : m.col[c])
      if (v % 2 != 0) {
        bits[r / 64] ^= (1ULL << (r % 64));
        nonzero = true;
      }
    if (nonzero) cols.push_back(std::move(bits));
  }
  long long rank = 0;
  std::vector<int> pivot_row;
  std::vector<std::vector<uint64_t>> basis;
  for (auto& col : cols) {
    for (size_t b = 0; b < basis.size(); ++b) {
      int pr = pivot_row[b];
      if (col[pr / 64] & (1ULL << (pr % 64)))
        for (int w = 0; w < words; ++w) col[w] ^= basis[b][w];
    }
    int pr = -1;
    for (int w = 0; w < words && pr < 0; ++w)
      if (col[w]) pr = w * 64 + __builtin_ctzll(col[w]);
    if (pr >= 0) {
      basis.push_back(col);
      pivot_row.push_back(pr);
      ++rank;
    }
  }
  return rank;
}
}  // namespace detail

inline std::vector<long long> betti_f2(const ChainComplex& cc, int through) {
  if (through > cc.valid_through() || through < 0)
    throw std::runtime_error("degree beyond validity range");
  std::vector<long long> ranks(through + 2, 0);
  for (int n = 1; n <= through + 1; ++n)
    if (n <= cc.top()) ranks[n] = detail::rank_f2(cc.boundaries[n]);
  std::vector<long long> out;
  for (int n = 0; n <= through; ++n)
    out.push_back(cc.ranks[n] - ranks[n] - ranks[n + 1]);
  return out;
}

// ---------------------------------------------------------------------------
// Homology-preserving reduction.
//
// Eliminates pairs (a, b) with unit incidence <db, a> = +-1 by the standard
// reduction d'c = dc - <dc,a> lambda^-1 db on the remaining cells, which
// preserves homology exactly (torsion included).  Free-face collapses and
// coreduction pairs are the zero-fill special cases; general pivots are
// chosen by minimal fill through a lazily invalidated heap.  Pairs whose
// update would overflow 64 bits are skipped and left to the arbitrary
// precision Smith fallback.

struct ReductionLog {
  long long collapses = 0;     // zero-fill pairs
  long long coreductions = 0;  // pairs with boundary updates
  long long cells_before = 0;
  long long cells_after = 0;
};

inline std::pair<ChainComplex, ReductionLog> coreduce(const ChainComplex& cc) {
  ReductionLog log;
  int top = cc.top();
  std::vector<int> offset(top + 2, 0);
  for (int d = 0; d <= top; ++d) offset[d + 1] = offset[d] + static_cast<int>(cc.ranks[d]);
  int N = offset[top + 1];
  log.cells_before = N;
  std::vector<std::map<int, long long>> bd(N), cb(N);
  for (int n = 1; n <= top; ++n)
    for (int c = 0; c < cc.boundaries[n].cols; ++c)
      for (auto& [r, v] : cc.boundaries[n].col[c]) {
        bd[offset[n] + c][offset[n - 1] + r] = v;
        cb[offset[n - 1] + r][offset[n] + c] = v;
      }
  std::vector<char> alive(N, 1);

  auto fill_of = [&](int b, int a) {
    return (static_cast<long long>(bd[b].size()) - 1) *
           (static_cast<long long>(cb[a].size()) - 1);
  };

  // (fill, b, a) with lazy revalidation on pop
  using Cand = std::tuple<long long, int, int>;
  std::priority_queue<Cand, std::vector<Cand>, std::greater<Cand>> heap;
  auto offer = [&](int b, int a) { heap.push({fill_of(b, a), b, a}); };
  for (int b = 0; b < N; ++b)
    for (auto& [a, v] : bd[b])
      if (v == 1 || v == -1) offer(b, a);

  std::set<std::pair<int, int>> skipped;  // overflow-prone pairs
  while (!heap.empty()) {
    auto [fill, b, a] = heap.top();
    heap.pop();
    if (!alive[a] || !alive[b]) continue;
    auto it = bd[b].find(a);
    if (it == bd[b].end() || (it->second != 1 && it->second != -1)) continue;
    if (fill != fill_of(b, a)) {  // stale entry
      offer(b, a);
      continue;
    }
    if (skipped.count({b, a})) continue;
    long long lambda = it->second;

    // trial pass: detect overflow before mutating anything
    bool overflow = false;
    for (auto& [c, mu] : cb[a]) {
      if (c == b) continue;
      for (auto& [y, w] : bd[b]) {
        if (y == a) continue;
        auto jt = bd[c].find(y);
        long long cur = jt == bd[c].end() ? 0 : jt->second;
        try {
          (void)detail::checked_sub(cur, detail::checked_mul(mu * lambda, w));
        } catch (detail::Overflow&) {
          overflow = true;
        }
        if (overflow) break;
      }
      if (overflow) break;
    }
    if (overflow) {
      skipped.insert({b, a});
      continue;
    }

    std::vector<int> affected;
    for (auto& [c, mu] : cb[a])
      if (c != b) affected.push_back(c);
    bool zero_fill = affected.empty() || bd[b].size() == 1;
    for (int c : affected) {
      long long mu = cb[a].at(c);
      for (auto& [y, w] : bd[b]) {
        if (y == a) continue;
        long long delta = (mu * lambda) * w;  // lambda^-1 = lambda for units
        auto [jt, inserted] = bd[c].insert({y, 0});
        jt->second -= delta;
        if (jt->second == 0) {
          bd[c].erase(jt);
          cb[y].erase(c);
        } else {
          cb[y][c] = jt->second;
        }
      }
      bd[c].erase(a);
    }
    cb[a].clear();
    // detach and delete the pair
    alive[a] = alive[b] = 0;
    for (auto& [y, v] : bd[a]) cb[y].erase(a);
    for (auto& [y, v] : bd[b]) cb[y].erase(b);
    for (auto& [y, v] : cb[b]) bd[y].erase(b);
    bd[a].clear();
    bd[b].clear();
    cb[b].clear();
    if (zero_fill) ++log.collapses; else ++log.coreductions;
    // fresh unit entries among the updated cells
    for (int c : affected)
      if (alive[c])
        for (auto& [y, v] : bd[c])
          if (v == 1 || v == -1) offer(c, y);
  }

  ChainComplex out;
  out.complete = cc.complete;
  std::vector<int> new_index(N, -1);
  std::vector<long long> counts(top + 1, 0);
  for (int d = 0; d <= top; ++d)
    for (int i = 0; i < cc.ranks[d]; ++i) {
      int x = offset[d] + i;
      if (alive[x]) new_index[x] = static_cast<int>(counts[d]++);
    }
  out.ranks = counts;
  out.boundaries.resize(top + 1);
  for (int n = 1; n <= top; ++n) {
    IntMatrix m = IntMatrix::zero(static_cast<int>(counts[n - 1]),
                                  static_cast<int>(counts[n]));
    for (int i = 0; i < cc.ranks[n]; ++i) {
      int x = offset[n] + i;
      if (!alive[x]) continue;
      for (auto& [y, v] : bd[x]) m.set(new_index[y], new_index[x], v);
    }
    m.normalize();
    out.boundaries[n] = m;
  }
  log.cells_after = std::accumulate(counts.begin(), counts.end(), 0LL);
  return {out, log};
}

}  // namespace topocat

#endif  // TOPOCAT_HOMOLOGY_HPP
