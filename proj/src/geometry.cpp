#include "dnormal/geometry.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>

#include "dnormal/errors.hpp"

namespace dnormal::geometry {

using ideals::Face;
using linalg::Feasibility;
using linalg::IntMatrix;
using linalg::LinearSystem;
using linalg::Rel;
using toric::Configuration;

namespace {

// ---------------------------------------------------------------------------
// Small helpers
// ---------------------------------------------------------------------------

RatVector to_rat(const IntVector& v) {
  RatVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rat(v[i]);
  return out;
}

Rat dot(const RatVector& c, const IntVector& x) {
  Rat s = 0;
  for (std::size_t i = 0; i < c.size(); ++i) s += c[i] * x[i];
  return s;
}

Int dot_int(const IntVector& c, const IntVector& x) {
  Int s = 0;
  for (std::size_t i = 0; i < c.size(); ++i) s += c[i] * x[i];
  return s;
}

RatVector unit_row(int dim, int i) {
  RatVector row(dim, Rat(0));
  row[i] = 1;
  return row;
}

bool is_zero_vec(const IntVector& v) {
  for (const auto& e : v)
    if (e != 0) return false;
  return true;
}

int sgn_of(const Int& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

std::string face_label(const Face& f) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) os << ",";
    os << f[i] + 1;  // 1-based in human-readable output
  }
  os << "}";
  return os.str();
}

std::string vec_label(const IntVector& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ",";
    os << v[i].get_str();
  }
  os << ")";
  return os.str();
}

Face sorted_face(Face f) {
  std::sort(f.begin(), f.end());
  f.erase(std::unique(f.begin(), f.end()), f.end());
  return f;
}

// ---------------------------------------------------------------------------
// Lattice normalization: coordinates relative to a column basis of ZA
// ---------------------------------------------------------------------------

struct View {
  IntMatrix basis;  // d x r column basis of the lattice generated by A
  IntMatrix cols;   // r x n: the columns of A in basis coordinates
  int r = 0;
  int n = 0;
};

View make_view(const Configuration& c) {
  View v;
  v.n = c.n();
  auto h = linalg::hnf(c.a);
  v.r = h.rank;
  std::vector<int> keep(v.r);
  for (int i = 0; i < v.r; ++i) keep[i] = i;
  v.basis = h.h.select_columns(keep);
  v.cols = IntMatrix(v.r, v.n);
  for (int j = 0; j < v.n; ++j) {
    auto sol = linalg::solve(v.basis, to_rat(c.a.column(j)));
    if (!sol)
      throw ComputeError("lattice error: column outside its own span");
    for (int i = 0; i < v.r; ++i) {
      if ((*sol)[i].get_den() != 1)
        throw ComputeError("lattice error: non-integral basis coordinates");
      v.cols.at(i, j) = (*sol)[i].get_num();
    }
  }
  return v;
}

IntVector to_original(const View& v, const IntVector& g) {
  return linalg::mul(v.basis, g);
}

void check_face(const View& v, const Face& f) {
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] < 0 || f[i] >= v.n)
      throw InputError("face index out of range: " + std::to_string(f[i]));
    if (i > 0 && f[i] <= f[i - 1])
      throw InputError("face indices must be strictly increasing");
  }
}

// ---------------------------------------------------------------------------
// Rational inverse of a square nonsingular integer matrix
// ---------------------------------------------------------------------------

std::optional<std::vector<RatVector>> rat_inverse(const IntMatrix& m) {
  if (m.rows != m.cols) return std::nullopt;
  int nn = m.rows;
  std::vector<RatVector> a(nn, RatVector(nn)), inv(nn, RatVector(nn, Rat(0)));
  for (int i = 0; i < nn; ++i) {
    for (int j = 0; j < nn; ++j) a[i][j] = Rat(m.at(i, j));
    inv[i][i] = 1;
  }
  for (int col = 0; col < nn; ++col) {
    int piv = -1;
    for (int i = col; i < nn; ++i)
      if (a[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    Rat p = a[col][col];
    for (int j = 0; j < nn; ++j) {
      a[col][j] /= p;
      inv[col][j] /= p;
    }
    for (int i = 0; i < nn; ++i) {
      if (i == col || a[i][col] == 0) continue;
      Rat f = a[i][col];
      for (int j = 0; j < nn; ++j) {
        a[i][j] -= f * a[col][j];
        inv[i][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

RatVector apply_rows(const std::vector<RatVector>& rows, const IntVector& x) {
  RatVector out(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) out[i] = dot(rows[i], x);
  return out;
}

bool all_nonneg(const RatVector& v) {
  for (const auto& e : v)
    if (e < 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Subset enumeration with a budget
// ---------------------------------------------------------------------------

void for_each_subset(int n, int k,
                     const std::function<void(const std::vector<int>&)>& fn) {
  if (k < 0 || k > n) return;
  double count = 1;
  for (int i = 0; i < k; ++i) count = count * (n - i) / (i + 1);
  if (count > 2e6)
    throw ComputeError("resource error: too many column subsets to scan");
  std::vector<int> pick(k);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == k) {
      fn(pick);
      return;
    }
    for (int i = start; i <= n - (k - depth); ++i) {
      pick[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
}

// ---------------------------------------------------------------------------
// Cone geometry on normalized columns
// ---------------------------------------------------------------------------

// Membership of a rational point in the cone spanned by selected columns.
bool in_cone_fm(const View& v, const Face& gens, const RatVector& x) {
  int k = int(gens.size());
  LinearSystem s(k);
  for (int i = 0; i < k; ++i) s.add(unit_row(k, i), Rel::Ge, Rat(0));
  for (int t = 0; t < v.r; ++t) {
    RatVector row(k);
    for (int i = 0; i < k; ++i) row[i] = Rat(v.cols.at(t, gens[i]));
    s.add(row, Rel::Eq, x[t]);
  }
  return linalg::feasible(s).feasible;
}

// Is column j an extreme ray of the cone spanned by `set` (which contains j)?
bool extreme_in_set(const View& v, const Face& set, int j) {
  Face rest;
  for (int i : set)
    if (i != j) rest.push_back(i);
  return !in_cone_fm(v, rest, to_rat(v.cols.column(j)));
}

// Supporting normals and facet ridges of a full-dimensional cell cone.
struct CellFacetData {
  IntVector normal;  // integral, gcd-reduced, >= 0 on the whole cell
  Face tight;        // cell columns on the hyperplane (global indices)
};

struct HRep {
  std::vector<IntVector> normals;      // all supporting normals found
  std::vector<CellFacetData> ridges;   // the facet-defining ones
};

IntVector reduce_gcd(IntVector f) {
  Int g = 0;
  for (const auto& e : f) g = gcd_int(g, e);
  if (g > 1)
    for (auto& e : f) e = div_exact(e, g);
  return f;
}

// Generators are the columns of an r x k matrix; tight sets use local
// column indices 0..k-1.  Safe (merely permissive) when the generators do
// not span the whole space: extra supporting hyperplanes never exclude a
// cone point under the all-normals-nonnegative membership test.
HRep h_rep_local(const IntMatrix& gens) {
  HRep out;
  int r = gens.rows;
  int k = gens.cols;
  if (r == 1) {
    // Half-line: single normal matching the sign of any nonzero column.
    for (int j = 0; j < k; ++j) {
      const Int& e = gens.at(0, j);
      if (e != 0) {
        out.normals.push_back({e > 0 ? Int(1) : Int(-1)});
        break;
      }
    }
    return out;
  }
  std::set<IntVector> seen;
  for_each_subset(k, r - 1, [&](const std::vector<int>& pick) {
    // Kernel of the (r-1) x r matrix whose rows are the picked columns.
    IntMatrix m(r - 1, r);
    for (int i = 0; i < r - 1; ++i)
      for (int t = 0; t < r; ++t) m.at(i, t) = gens.at(t, pick[i]);
    auto h = linalg::hnf(m);
    if (h.rank != r - 1) return;  // rows do not span a hyperplane
    IntVector f = h.u.column(r - 1);
    // Orient: keep only if the whole cell lies on one side.
    bool pos = false, neg = false;
    for (int j = 0; j < k; ++j) {
      int sgn = sgn_of(dot_int(f, gens.column(j)));
      if (sgn > 0) pos = true;
      if (sgn < 0) neg = true;
    }
    if (pos && neg) return;
    if (neg)
      for (auto& e : f) e = -e;
    f = reduce_gcd(f);
    if (!seen.insert(f).second) return;
    out.normals.push_back(f);
    Face tight;
    for (int j = 0; j < k; ++j)
      if (dot_int(f, gens.column(j)) == 0) tight.push_back(j);
    IntMatrix tm = gens.select_columns(tight);
    if (linalg::rank(tm) == r - 1) out.ridges.push_back({f, tight});
  });
  return out;
}

HRep h_rep(const View& v, const Face& cell) {
  HRep out = h_rep_local(v.cols.select_columns(cell));
  for (auto& ridge : out.ridges) {
    Face global;
    for (int local : ridge.tight) global.push_back(cell[local]);
    ridge.tight = global;
  }
  return out;
}

// Per-facet cached geometry used by is_triangulation and the certificates.
struct CellGeom {
  Face cols;
  bool simplicial = false;
  std::vector<RatVector> inv_rows;          // simplicial: rows of inverse
  HRep hrep;                                // general cells
  std::vector<CellFacetData> ridge_list;    // both kinds

  bool contains(const IntVector& x) const {
    if (simplicial) return all_nonneg(apply_rows(inv_rows, x));
    for (const auto& f : hrep.normals)
      if (dot_int(f, x) < 0) return false;
    return true;
  }
};

IntVector integralize(const RatVector& row) {
  Int l = 1;
  for (const auto& e : row) l = lcm_int(l, e.get_den());
  IntVector out(row.size());
  for (std::size_t i = 0; i < row.size(); ++i) {
    Rat scaled = row[i] * l;
    out[i] = scaled.get_num();
  }
  return reduce_gcd(out);
}

std::optional<CellGeom> make_cell_geom(const View& v, const Face& cell) {
  CellGeom g;
  g.cols = cell;
  IntMatrix m = v.cols.select_columns(cell);
  if (linalg::rank(m) != v.r) return std::nullopt;  // not full-dimensional
  if (int(cell.size()) == v.r) {
    auto inv = rat_inverse(m);
    if (!inv) return std::nullopt;
    g.simplicial = true;
    g.inv_rows = *inv;
    for (int i = 0; i < v.r; ++i) {
      Face tight;
      for (int t = 0; t < v.r; ++t)
        if (t != i) tight.push_back(cell[t]);
      g.ridge_list.push_back({integralize(g.inv_rows[i]), tight});
    }
  } else {
    g.hrep = h_rep(v, cell);
    g.ridge_list = g.hrep.ridges;
  }
  return g;
}

// ---------------------------------------------------------------------------
// Fundamental parallelepiped and Hilbert bases (normalized coordinates)
// ---------------------------------------------------------------------------

struct SimplexData {
  Face sigma;
  IntMatrix m;                     // r x r column matrix
  std::vector<RatVector> inv_rows;
  Int volume;                      // |det m|
  RatVector price;                 // price . m_i = 1 for every ray
};

SimplexData simplex_data(const View& v, const Face& sigma) {
  if (int(sigma.size()) != v.r)
    throw InputError("degenerate facet: " + face_label(sigma) +
                     " does not have rank-many columns");
  SimplexData s;
  s.sigma = sigma;
  s.m = v.cols.select_columns(sigma);
  Int dt = linalg::det(s.m);
  if (dt == 0)
    throw InputError("degenerate facet: " + face_label(sigma) +
                     " has singular column matrix");
  s.volume = abs_int(dt);
  s.inv_rows = *rat_inverse(s.m);
  s.price = RatVector(v.r, Rat(0));
  for (int t = 0; t < v.r; ++t)
    for (int i = 0; i < v.r; ++i) s.price[t] += s.inv_rows[i][t];
  return s;
}

// All lattice points of the half-open parallelepiped, via coset
// representatives read off the Hermite normal form of the column matrix.
std::vector<IntVector> fp_normalized(const View& v, const SimplexData& s) {
  if (s.volume > 2000000)
    throw ComputeError("resource error: parallelepiped volume too large");
  auto h = linalg::hnf(s.m);
  std::vector<long> diag(v.r);
  for (int i = 0; i < v.r; ++i) {
    const Int& d = h.h.at(i, i);
    if (!d.fits_slong_p())
      throw ComputeError("resource error: parallelepiped volume too large");
    diag[i] = d.get_si();
  }
  std::vector<IntVector> out;
  std::vector<long> y(v.r, 0);
  while (true) {
    IntVector yy(v.r);
    for (int i = 0; i < v.r; ++i) yy[i] = y[i];
    RatVector lam = apply_rows(s.inv_rows, yy);
    IntVector fl(v.r);
    for (int i = 0; i < v.r; ++i) fl[i] = rat_floor(lam[i]);
    IntVector g = yy;
    IntVector shift = linalg::mul(s.m, fl);
    for (int i = 0; i < v.r; ++i) g[i] -= shift[i];
    out.push_back(g);
    int pos = v.r - 1;
    while (pos >= 0 && y[pos] + 1 == diag[pos]) {
      y[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++y[pos];
  }
  std::sort(out.begin(), out.end());
  if (Int(long(out.size())) != s.volume)
    throw ComputeError("internal error: parallelepiped point count mismatch");
  return out;
}

// Bounded membership search: is `target` a nonnegative integer combination
// of `gens`?  `inside` prunes remainders that left the ambient cone and
// `price` (strictly positive on every generator) bounds the depth even when
// `inside` is a permissive over-approximation.
bool member_search(const IntVector& target, const std::vector<IntVector>& gens,
                   const std::function<bool(const IntVector&)>& inside,
                   const RatVector& price) {
  long budget = 4000000;
  std::set<std::pair<int, IntVector>> dead;
  std::function<bool(const IntVector&, std::size_t)> rec =
      [&](const IntVector& t, std::size_t idx) -> bool {
    if (is_zero_vec(t)) return true;
    if (idx == gens.size()) return false;
    if (--budget <= 0)
      throw ComputeError("resource error: semigroup membership budget");
    auto key = std::make_pair(int(idx), t);
    if (dead.count(key)) return false;
    IntVector cur = t;
    while (true) {
      if (rec(cur, idx + 1)) return true;
      for (std::size_t i = 0; i < cur.size(); ++i) cur[i] -= gens[idx][i];
      if (is_zero_vec(cur)) return true;
      if (dot(price, cur) < 0 || !inside(cur)) break;
    }
    dead.insert(std::move(key));
    return false;
  };
  if (!inside(target)) return false;
  return rec(target, 0);
}

// Remove candidates expressible in terms of cheaper ones; the survivors are
// the unique minimal generating set.  Candidates must all be nonzero and lie
// in the (pointed) cone recognized by `inside`; `price` is positive on it.
std::vector<IntVector> minimalize(
    std::vector<IntVector> cands,
    const std::function<bool(const IntVector&)>& inside,
    const RatVector& price) {
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  std::stable_sort(cands.begin(), cands.end(),
                   [&](const IntVector& a, const IntVector& b) {
                     Rat pa = dot(price, a), pb = dot(price, b);
                     if (pa != pb) return pa < pb;
                     return a < b;
                   });
  std::vector<IntVector> kept;
  for (const auto& x : cands) {
    if (!member_search(x, kept, inside, price)) kept.push_back(x);
  }
  return kept;
}

std::vector<IntVector> hb_simplicial_normalized(const View& v,
                                                const SimplexData& s) {
  std::vector<IntVector> cands;
  for (const auto& g : fp_normalized(v, s))
    if (!is_zero_vec(g)) cands.push_back(g);
  for (int j : s.sigma) cands.push_back(v.cols.column(j));
  auto inside = [&](const IntVector& x) {
    return all_nonneg(apply_rows(s.inv_rows, x));
  };
  return minimalize(std::move(cands), inside, s.price);
}

// A strictly positive rational price on the cone of the given generators.
RatVector cone_price_cols(const IntMatrix& gens) {
  LinearSystem s(gens.rows);
  for (int j = 0; j < gens.cols; ++j) {
    RatVector row(gens.rows);
    for (int t = 0; t < gens.rows; ++t) row[t] = Rat(gens.at(t, j));
    s.add(row, Rel::Ge, Rat(1));
  }
  auto f = linalg::feasible(s);
  if (!f.feasible)
    throw InputError("non-pointed cone: no positive functional exists");
  return f.witness;
}

RatVector cone_price(const View& v, const Face& cell) {
  return cone_price_cols(v.cols.select_columns(cell));
}

std::uint64_t splitmix_step(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

// ---------------------------------------------------------------------------
// Subdivisions and triangulations
// ---------------------------------------------------------------------------

std::vector<Face> regular_subdivision(const Configuration& c,
                                      const IntVector& w) {
  if (int(w.size()) != c.n())
    throw InputError("weight vector length must match the number of columns");
  View v = make_view(c);
  if (v.r == 0)
    throw InputError("configuration of rank zero has no subdivisions");
  std::set<Face> cells;
  for_each_subset(v.n, v.r, [&](const std::vector<int>& pick) {
    IntMatrix m = v.cols.select_columns(pick);
    if (linalg::det(m) == 0) return;
    std::vector<RatVector> rows;
    RatVector rhs;
    for (int j : pick) {
      rows.push_back(to_rat(v.cols.column(j)));
      rhs.push_back(Rat(w[j]));
    }
    auto sol = linalg::solve_rows(rows, rhs);
    if (!sol) return;
    Face tight;
    for (int j = 0; j < v.n; ++j) {
      Rat val = dot(*sol, v.cols.column(j));
      if (val > Rat(w[j])) return;  // not a supporting functional
      if (val == Rat(w[j])) tight.push_back(j);
    }
    cells.insert(tight);
  });
  if (cells.empty())
    throw ComputeError("no full-dimensional cells: configuration has rank " +
                       std::to_string(v.r) + " but no spanning subset fits");
  return {cells.begin(), cells.end()};
}

Triangulation regular_triangulation(const Configuration& c,
                                    const IntVector& w) {
  if (!c.pointed())
    throw InputError("non-pointed configuration: no triangulation with "
                     "extreme-ray facets exists");
  View v = make_view(c);
  std::set<Face> facets;
  for (const auto& cell : regular_subdivision(c, w)) {
    if (int(cell.size()) == v.r) {
      facets.insert(cell);
      continue;
    }
    Face extreme;
    for (int j : cell)
      if (extreme_in_set(v, cell, j)) extreme.push_back(j);
    if (int(extreme.size()) > v.r)
      throw ComputeError("subdivision is not a triangulation: cell " +
                         face_label(cell) + " has " +
                         std::to_string(extreme.size()) + " extreme rays");
    if (int(extreme.size()) < v.r)
      throw ComputeError("internal error: cell " + face_label(cell) +
                         " has too few extreme rays");
    facets.insert(extreme);
  }
  Triangulation t{{facets.begin(), facets.end()}};
  if (!is_triangulation(c, t))
    throw ComputeError("internal error: constructed triangulation failed "
                       "validation");
  return t;
}

bool is_triangulation(const Configuration& c, const Triangulation& t) {
  View v = make_view(c);
  if (t.facets.empty()) return false;
  std::vector<Face> facets;
  for (const auto& f : t.facets) {
    Face s = sorted_face(f);
    if (s.empty() || s.front() < 0 || s.back() >= v.n) return false;
    facets.push_back(s);
  }
  std::sort(facets.begin(), facets.end());
  facets.erase(std::unique(facets.begin(), facets.end()), facets.end());

  // Purity / full dimension, with cached per-cell geometry.
  std::vector<CellGeom> geom;
  for (const auto& f : facets) {
    auto g = make_cell_geom(v, f);
    if (!g) return false;
    geom.push_back(std::move(*g));
  }

  // Every column must lie in some facet cone.
  for (int j = 0; j < v.n; ++j) {
    bool covered = false;
    for (const auto& g : geom)
      if (g.contains(v.cols.column(j))) {
        covered = true;
        break;
      }
    if (!covered) return false;
  }

  // Pairwise intersection condition.
  for (std::size_t i = 0; i < facets.size(); ++i) {
    for (std::size_t j = i + 1; j < facets.size(); ++j) {
      Face common = ideals::face_intersection(facets[i], facets[j]);
      auto check_simplicial_side = [&](std::size_t a, std::size_t b) {
        // For each generator of facet a outside the common face, no point of
        // cone(a) with positive coefficient there may lie in cone(b).
        const Face& fa = facets[a];
        const Face& fb = facets[b];
        int ka = int(fa.size()), kb = int(fb.size());
        for (int pos = 0; pos < ka; ++pos) {
          if (std::binary_search(common.begin(), common.end(), fa[pos]))
            continue;
          LinearSystem s(ka + kb);
          for (int q = 0; q < ka + kb; ++q)
            s.add(unit_row(ka + kb, q), Rel::Ge, Rat(0));
          for (int tt = 0; tt < v.r; ++tt) {
            RatVector row(ka + kb, Rat(0));
            for (int q = 0; q < ka; ++q) row[q] = Rat(v.cols.at(tt, fa[q]));
            for (int q = 0; q < kb; ++q)
              row[ka + q] = -Rat(v.cols.at(tt, fb[q]));
            s.add(row, Rel::Eq, Rat(0));
          }
          s.add(unit_row(ka + kb, pos), Rel::Ge, Rat(1));
          if (linalg::feasible(s).feasible) return false;
        }
        return true;
      };
      if (geom[i].simplicial) {
        if (!check_simplicial_side(i, j)) return false;
      } else if (geom[j].simplicial) {
        if (!check_simplicial_side(j, i)) return false;
      } else {
        // Strict separating functional vanishing on the common face.
        LinearSystem s(v.r);
        for (int q : common)
          s.add(to_rat(v.cols.column(q)), Rel::Eq, Rat(0));
        for (int q : facets[i])
          if (!std::binary_search(common.begin(), common.end(), q))
            s.add(to_rat(v.cols.column(q)), Rel::Ge, Rat(1));
        for (int q : facets[j])
          if (!std::binary_search(common.begin(), common.end(), q)) {
            RatVector row = to_rat(v.cols.column(q));
            for (auto& e : row) e = -e;
            s.add(row, Rel::Ge, Rat(1));
          }
        if (!linalg::feasible(s).feasible) return false;
      }
    }
  }

  // Ridge closure: every interior ridge needs a facet on its far side.
  if (v.r >= 2) {
    for (std::size_t i = 0; i < facets.size(); ++i) {
      for (const auto& ridge : geom[i].ridge_list) {
        bool interior = false;
        for (int j = 0; j < v.n; ++j)
          if (dot_int(ridge.normal, v.cols.column(j)) < 0) {
            interior = true;
            break;
          }
        if (!interior) continue;
        bool flanked = false;
        for (std::size_t k = 0; k < facets.size() && !flanked; ++k) {
          if (k == i) continue;
          if (!ideals::face_subset(ridge.tight, facets[k])) continue;
          for (int q : facets[k])
            if (dot_int(ridge.normal, v.cols.column(q)) < 0) {
              flanked = true;
              break;
            }
        }
        if (!flanked) return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Simplicial cone data
// ---------------------------------------------------------------------------

FacePartition face_partition(const Configuration& c, const Face& sigma) {
  View v = make_view(c);
  check_face(v, sigma);
  SimplexData s = simplex_data(v, sigma);
  FacePartition p;
  p.sigma = sigma;
  for (int j = 0; j < v.n; ++j) {
    if (std::binary_search(sigma.begin(), sigma.end(), j)) continue;
    if (all_nonneg(apply_rows(s.inv_rows, v.cols.column(j))))
      p.in.push_back(j);
    else
      p.out.push_back(j);
  }
  return p;
}

std::vector<IntVector> fp_points(const Configuration& c, const Face& sigma) {
  View v = make_view(c);
  check_face(v, sigma);
  SimplexData s = simplex_data(v, sigma);
  std::vector<IntVector> out;
  for (const auto& g : fp_normalized(v, s)) out.push_back(to_original(v, g));
  std::sort(out.begin(), out.end());
  return out;
}

Int normalized_volume(const Configuration& c, const Face& sigma) {
  View v = make_view(c);
  check_face(v, sigma);
  return simplex_data(v, sigma).volume;
}

std::vector<IntVector> hilbert_basis_simplicial(const Configuration& c,
                                                const Face& sigma) {
  View v = make_view(c);
  check_face(v, sigma);
  SimplexData s = simplex_data(v, sigma);
  std::vector<IntVector> out;
  for (const auto& g : hb_simplicial_normalized(v, s))
    out.push_back(to_original(v, g));
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Hilbert basis of an arbitrary full-dimensional cell, normalized
// coordinates: triangulate internally, merge, minimalize.
std::vector<IntVector> hb_cell_normalized(const Configuration& c,
                                          const View& v, const Face& cell) {
  if (int(cell.size()) == v.r)
    return hb_simplicial_normalized(v, simplex_data(v, cell));
  IntMatrix sub = c.a.select_columns(cell);
  Configuration temp = toric::make_configuration(sub);
  std::optional<Triangulation> tri;
  std::uint64_t state = 0x5eedULL;
  for (int attempt = 0; attempt < 40 && !tri; ++attempt) {
    IntVector w(cell.size());
    for (std::size_t i = 0; i < cell.size(); ++i)
      w[i] = long(splitmix_step(state) % 9973ULL);
    try {
      tri = regular_triangulation(temp, w);
    } catch (const ComputeError& e) {
      if (std::string(e.what()).find("not a triangulation") ==
          std::string::npos)
        throw;
    }
  }
  if (!tri)
    throw ComputeError("resource error: no simplicial refinement found for "
                       "cell " + face_label(cell));
  std::set<IntVector> cands;
  for (const auto& local : tri->facets) {
    Face global;
    for (int t : local) global.push_back(cell[t]);
    global = sorted_face(global);
    for (const auto& g : hb_simplicial_normalized(v, simplex_data(v, global)))
      cands.insert(g);
  }
  HRep rep = h_rep(v, cell);
  auto inside = [&](const IntVector& x) {
    for (const auto& f : rep.normals)
      if (dot_int(f, x) < 0) return false;
    return true;
  };
  RatVector price = cone_price(v, cell);
  return minimalize({cands.begin(), cands.end()}, inside, price);
}

}  // namespace

std::vector<IntVector> hilbert_basis_cell(const Configuration& c,
                                          const Face& sigma) {
  View v = make_view(c);
  check_face(v, sigma);
  std::vector<IntVector> out;
  for (const auto& g : hb_cell_normalized(c, v, sigma))
    out.push_back(to_original(v, g));
  std::sort(out.begin(), out.end());
  return out;
}

bool cone_contains(const Configuration& c, const Face& sigma,
                   const IntVector& x) {
  View v = make_view(c);
  check_face(v, sigma);
  if (int(x.size()) != c.d())
    throw InputError("point dimension must match the configuration");
  auto sol = linalg::solve(v.basis, to_rat(x));
  if (!sol) return false;  // outside the linear span
  return in_cone_fm(v, sigma, *sol);
}

bool semigroup_contains(const Configuration& c, const std::vector<int>& cols,
                        const IntVector& x) {
  View v = make_view(c);
  Face f = sorted_face(cols);
  check_face(v, f);
  if (int(x.size()) != c.d())
    throw InputError("point dimension must match the configuration");
  auto sol = linalg::solve(v.basis, to_rat(x));
  if (!sol) return false;
  IntVector target(v.r);
  for (int i = 0; i < v.r; ++i) {
    if ((*sol)[i].get_den() != 1) return false;  // outside the lattice
    target[i] = (*sol)[i].get_num();
  }
  RatVector price = cone_price(v, f);
  HRep rep = h_rep(v, f);
  auto inside = [&](const IntVector& y) {
    for (const auto& nf : rep.normals)
      if (dot_int(nf, y) < 0) return false;
    return true;
  };
  std::vector<IntVector> gens;
  for (int j : f) gens.push_back(v.cols.column(j));
  return member_search(target, gens, inside, price);
}

bool semigroup_member(const Configuration& c,
                      const std::vector<IntVector>& gens, const IntVector& x) {
  View v = make_view(c);
  auto normalize = [&](const IntVector& p,
                       IntVector& out) -> bool {  // false: outside lattice
    if (int(p.size()) != c.d())
      throw InputError("point dimension must match the configuration");
    auto sol = linalg::solve(v.basis, to_rat(p));
    if (!sol) return false;
    out = IntVector(v.r);
    for (int i = 0; i < v.r; ++i) {
      if ((*sol)[i].get_den() != 1) return false;
      out[i] = (*sol)[i].get_num();
    }
    return true;
  };
  std::vector<IntVector> ngens;
  for (const auto& g : gens) {
    IntVector ng;
    if (!normalize(g, ng))
      throw InputError("generator outside the column lattice: " +
                       vec_label(g));
    if (is_zero_vec(ng))
      throw InputError("zero generator is not allowed");
    ngens.push_back(ng);
  }
  IntVector target;
  if (!normalize(x, target)) return false;
  IntMatrix gm = IntMatrix::from_columns(ngens, v.r);
  RatVector price = cone_price_cols(gm);
  HRep rep = h_rep_local(gm);
  auto inside = [&](const IntVector& y) {
    for (const auto& nf : rep.normals)
      if (dot_int(nf, y) < 0) return false;
    return true;
  };
  return member_search(target, ngens, inside, price);
}

std::vector<int> extreme_columns(const Configuration& c) {
  View v = make_view(c);
  Face all(v.n);
  for (int j = 0; j < v.n; ++j) all[j] = j;
  std::vector<int> out;
  for (int j = 0; j < v.n; ++j)
    if (extreme_in_set(v, all, j)) out.push_back(j);
  return out;
}

// ---------------------------------------------------------------------------
// Normality certificates
// ---------------------------------------------------------------------------

CertificateReport is_delta_normal(const Configuration& c,
                                  const Triangulation& t) {
  CertificateReport rep;
  rep.subject = "delta-normality";
  if (!is_triangulation(c, t)) {
    rep.add("triangulation", false, "facet list fails the triangulation "
                                    "conditions");
    return rep;
  }
  rep.add("triangulation", true,
          std::to_string(t.facets.size()) + " facets");
  View v = make_view(c);
  for (const auto& facet : t.facets) {
    Face cell = sorted_face(facet);
    auto hb = hb_cell_normalized(c, v, cell);
    auto geom = make_cell_geom(v, cell);
    if (!geom)
      throw ComputeError("internal error: validated facet lost full rank");
    // Columns lying in this facet's cone.
    std::vector<int> idx;
    std::vector<IntVector> gens;
    for (int j = 0; j < v.n; ++j)
      if (geom->contains(v.cols.column(j))) {
        idx.push_back(j);
        gens.push_back(v.cols.column(j));
      }
    auto inside = [&](const IntVector& y) { return geom->contains(y); };
    RatVector price = cone_price(v, cell);
    std::vector<IntVector> missing;
    for (const auto& h : hb) {
      if (std::find(gens.begin(), gens.end(), h) != gens.end()) continue;
      if (!member_search(h, gens, inside, price))
        missing.push_back(to_original(v, h));
    }
    if (missing.empty()) {
      rep.add("facet " + face_label(cell), true,
              "Hilbert basis of size " + std::to_string(hb.size()) +
                  " generated by the " + std::to_string(gens.size()) +
                  " columns in the cone");
    } else {
      std::string detail = "not generated by the columns in the cone:";
      for (const auto& m : missing) detail += " " + vec_label(m);
      rep.add("facet " + face_label(cell), false, detail);
    }
  }
  return rep;
}

CertificateReport is_normal(const Configuration& c) {
  if (!c.pointed())
    throw InputError("non-pointed configuration: normality is undefined "
                     "without a pointed cone");
  CertificateReport rep;
  rep.subject = "normality";
  View v = make_view(c);
  std::optional<Triangulation> tri;
  std::uint64_t state = 0x5eedULL;
  for (int attempt = 0; attempt < 40 && !tri; ++attempt) {
    IntVector w(v.n);
    for (int i = 0; i < v.n; ++i)
      w[i] = long(splitmix_step(state) % 9973ULL);
    try {
      tri = regular_triangulation(c, w);
    } catch (const ComputeError& e) {
      if (std::string(e.what()).find("not a triangulation") ==
          std::string::npos)
        throw;
    }
  }
  if (!tri)
    throw ComputeError("resource error: no generic weight produced a "
                       "triangulation");
  rep.add("triangulation", true,
          std::to_string(tri->facets.size()) + " simplicial facets");
  std::set<IntVector> hb_union;
  for (const auto& facet : tri->facets) {
    SimplexData s = simplex_data(v, facet);
    auto hb = hb_simplicial_normalized(v, s);
    rep.add("facet " + face_label(facet), true,
            "Hilbert basis of size " + std::to_string(hb.size()));
    hb_union.insert(hb.begin(), hb.end());
  }
  // Membership of every Hilbert-basis element in the semigroup of columns.
  Face all(v.n);
  for (int j = 0; j < v.n; ++j) all[j] = j;
  HRep rep_cone = h_rep(v, all);
  auto inside = [&](const IntVector& y) {
    for (const auto& f : rep_cone.normals)
      if (dot_int(f, y) < 0) return false;
    return true;
  };
  RatVector price = cone_price(v, all);
  std::vector<IntVector> gens;
  for (int j = 0; j < v.n; ++j) gens.push_back(v.cols.column(j));
  std::vector<IntVector> missing;
  for (const auto& h : hb_union) {
    if (std::find(gens.begin(), gens.end(), h) != gens.end()) continue;
    if (!member_search(h, gens, inside, price))
      missing.push_back(to_original(v, h));
  }
  if (missing.empty()) {
    rep.add("semigroup membership", true,
            "all " + std::to_string(hb_union.size()) +
                " Hilbert-basis elements are column combinations");
  } else {
    std::sort(missing.begin(), missing.end());
    std::string detail = "lattice points in the cone but not in the column "
                         "semigroup:";
    for (const auto& m : missing) detail += " " + vec_label(m);
    rep.add("semigroup membership", false, detail);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Shellings
// ---------------------------------------------------------------------------

namespace {

Face step_q(const std::vector<Face>& order, std::size_t j) {
  Face q;
  for (int vtx : order[j]) {
    Face ridge;
    for (int u : order[j])
      if (u != vtx) ridge.push_back(u);
    for (std::size_t l = 0; l < j; ++l)
      if (ideals::face_subset(ridge, order[l])) {
        q.push_back(vtx);
        break;
      }
  }
  return q;
}

// The interval condition at step j: no face of F_j contained in an earlier
// facet may contain Q_j.  (Faces missing a vertex of Q_j are automatically
// old via the corresponding ridge.)
bool step_valid(const std::vector<Face>& order, std::size_t j, const Face& q) {
  for (std::size_t l = 0; l < j; ++l) {
    Face common = ideals::face_intersection(order[j], order[l]);
    if (ideals::face_subset(q, common)) return false;
  }
  return true;
}

std::vector<Face> canonical_facets(const Triangulation& t) {
  std::vector<Face> facets;
  for (const auto& f : t.facets) facets.push_back(sorted_face(f));
  std::sort(facets.begin(), facets.end());
  facets.erase(std::unique(facets.begin(), facets.end()), facets.end());
  if (facets.empty()) throw InputError("empty triangulation");
  for (const auto& f : facets)
    if (f.size() != facets.front().size())
      throw InputError("shelling requires a pure facet list");
  return facets;
}

}  // namespace

Shelling find_shelling(const Triangulation& t) {
  std::vector<Face> facets = canonical_facets(t);
  std::size_t s = facets.size();
  std::vector<Face> order;
  std::vector<bool> used(s, false);
  std::set<std::vector<bool>> failed;
  std::function<bool()> rec = [&]() -> bool {
    if (order.size() == s) return true;
    if (failed.count(used)) return false;
    for (std::size_t i = 0; i < s; ++i) {
      if (used[i]) continue;
      order.push_back(facets[i]);
      Face q = step_q(order, order.size() - 1);
      if (step_valid(order, order.size() - 1, q)) {
        used[i] = true;
        if (rec()) return true;
        used[i] = false;
      }
      order.pop_back();
    }
    failed.insert(used);
    return false;
  };
  if (!rec())
    throw ComputeError("no shelling order found for the given facet list");
  Shelling sh;
  sh.order = order;
  for (std::size_t j = 0; j < order.size(); ++j)
    sh.q.push_back(step_q(order, j));
  return sh;
}

Shelling make_shelling(const Triangulation& t,
                       const std::vector<Face>& order) {
  std::vector<Face> facets = canonical_facets(t);
  std::vector<Face> given;
  for (const auto& f : order) given.push_back(sorted_face(f));
  std::vector<Face> check = given;
  std::sort(check.begin(), check.end());
  if (check != facets)
    throw InputError("shelling order must be a permutation of the facets");
  Shelling sh;
  sh.order = given;
  for (std::size_t j = 0; j < given.size(); ++j) {
    Face q = step_q(given, j);
    if (!step_valid(given, j, q))
      throw InputError("not a shelling: step " + std::to_string(j + 1) +
                       " (facet " + face_label(given[j]) +
                       ") violates the interval condition");
    sh.q.push_back(q);
  }
  return sh;
}

Triangulation star(const Triangulation& t, const Face& f) {
  Face ff = sorted_face(f);
  Triangulation out;
  for (const auto& facet : t.facets)
    if (ideals::face_subset(ff, sorted_face(facet)))
      out.facets.push_back(sorted_face(facet));
  std::sort(out.facets.begin(), out.facets.end());
  if (out.facets.empty())
    throw InputError("face " + face_label(ff) +
                     " is not a face of the triangulation");
  return out;
}

Shelling restricted_shelling(const Triangulation& t, const Shelling& global,
                             const Face& f) {
  // Validate the global order first, then filter to the star.
  Shelling checked = make_shelling(t, global.order);
  Face ff = sorted_face(f);
  Triangulation st = star(t, ff);
  Shelling out;
  for (const auto& facet : checked.order)
    if (ideals::face_subset(ff, facet)) out.order.push_back(facet);
  std::vector<Face> perm = out.order;
  std::sort(perm.begin(), perm.end());
  if (perm != st.facets)
    throw ComputeError("internal error: star restriction lost facets");
  for (std::size_t j = 0; j < out.order.size(); ++j) {
    Face q = step_q(out.order, j);
    if (!step_valid(out.order, j, q))
      throw ComputeError("restriction to star " + face_label(ff) +
                         " is not a shelling at step " + std::to_string(j + 1));
    out.q.push_back(q);
  }
  return out;
}

bool is_unimodular(const Configuration& c, const Triangulation& t) {
  View v = make_view(c);
  for (const auto& facet : t.facets) {
    Face s = sorted_face(facet);
    if (int(s.size()) != v.r) return false;
    IntMatrix m = v.cols.select_columns(s);
    if (abs_int(linalg::det(m)) != 1) return false;
  }
  return true;
}

linalg::Feasibility reversed_simplex_feasible(const Configuration& c,
                                              const Face& sigma) {
  for (int j = 0; j < c.n(); ++j)
    if (c.a.at(0, j) != 1)
      throw InputError("configuration is not graded: first coordinate of "
                       "every column must be 1");
  int d = c.d();
  if (c.rank != d)
    throw InputError("degenerate facet: configuration does not span the "
                     "ambient space");
  Face s = sorted_face(sigma);
  if (int(s.size()) != d)
    throw InputError("degenerate facet: " + face_label(s) +
                     " does not have rank-many columns");
  if (linalg::det(c.a.select_columns(s)) == 0)
    throw InputError("degenerate facet: " + face_label(s) +
                     " has singular column matrix");
  LinearSystem sys(d);
  sys.add(unit_row(d, 0), Rel::Le, Rat(1));
  RatVector neg = unit_row(d, 0);
  neg[0] = -1;
  sys.add(neg, Rel::Le, Rat(-1));
  for (int i : s) {
    // Normal vanishing on the other columns of sigma, positive on a_i.
    IntMatrix m(d - 1, d);
    int rr = 0;
    for (int l : s) {
      if (l == i) continue;
      for (int tt = 0; tt < d; ++tt) m.at(rr, tt) = c.a.at(tt, l);
      ++rr;
    }
    auto h = linalg::hnf(m);
    if (h.rank != d - 1)
      throw ComputeError("internal error: facet normal system is singular");
    IntVector normal = h.u.column(d - 1);
    Int val = dot_int(normal, c.a.column(i));
    if (val == 0)
      throw ComputeError("internal error: facet normal vanishes on its own "
                         "ray");
    if (val < 0)
      for (auto& e : normal) e = -e;
    sys.add(to_rat(normal), Rel::Le, Rat(0));
  }
  return linalg::feasible(sys);
}

}  // namespace dnormal::geometry
