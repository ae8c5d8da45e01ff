#include "dnormal/families.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <utility>

#include "dnormal/errors.hpp"
#include "dnormal/linalg.hpp"

namespace dnormal::families {

using ideals::Face;
using linalg::IntMatrix;
using toric::Configuration;

namespace {

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

/// Runs fn on every ascending k-subset of {lo, ..., hi-1}; stops early when
/// fn returns false.
bool for_each_choice(int lo, int hi, int k, Face& cur,
                     const std::function<bool(const Face&)>& fn) {
  if (k == 0) return fn(cur);
  for (int j = lo; j + k <= hi; ++j) {
    cur.push_back(j);
    bool go = for_each_choice(j + 1, hi, k - 1, cur, fn);
    cur.pop_back();
    if (!go) return false;
  }
  return true;
}

/// Reduces a subdivision cell to the extreme columns of its own cone,
/// returned as ascending global column indices.
Face extreme_reduction(const Configuration& c, const Face& cell) {
  Configuration sub = toric::make_configuration(c.a.select_columns(cell));
  Face local = geometry::extreme_columns(sub);
  Face global;
  for (int t : local) global.push_back(cell[t]);
  std::sort(global.begin(), global.end());
  return global;
}

/// Columns of c whose first coordinate is not 1, i.e. violations of the
/// degree-one grading shared by all families built here.
Face ungraded_columns(const Configuration& c) {
  Face bad;
  for (int j = 0; j < c.n(); ++j)
    if (c.a.at(0, j) != 1) bad.push_back(j);
  return bad;
}

void add_graded_item(CertificateReport& rep, const Configuration& c) {
  Face bad = ungraded_columns(c);
  rep.add("graded", bad.empty() && c.n() > 0,
          bad.empty() ? "all first coordinates are 1"
                      : "columns " + face_label(bad) +
                            " have first coordinate different from 1");
}

void add_extreme_item(CertificateReport& rep, const Configuration& c) {
  Face ext = geometry::extreme_columns(c);
  rep.add("all columns extreme", int(ext.size()) == c.n(),
          std::to_string(ext.size()) + " of " + std::to_string(c.n()) +
              " columns are extreme");
}

/// Checks that the only lattice points of grading degree one in the cone
/// are the columns themselves, by enumerating the integer points of the
/// coordinate bounding box.  For configurations with nonnegative entries
/// the convex representation of a candidate can only use columns whose
/// support lies inside the candidate's support, which keeps the
/// feasibility systems small.
void add_empty_item(CertificateReport& rep, const Configuration& c) {
  if (!c.graded()) {
    rep.add("empty polytope", false,
            "no grading: emptiness is undefined for this configuration");
    return;
  }
  int d = c.d(), n = c.n();
  IntVector lo = c.column(0), hi = c.column(0);
  bool nonneg = true;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < d; ++k) {
      const Int& e = c.a.at(k, j);
      lo[k] = std::min(lo[k], e);
      hi[k] = std::max(hi[k], e);
      if (e < 0) nonneg = false;
    }
  Int box = 1;
  for (int k = 0; k < d; ++k) box *= hi[k] - lo[k] + 1;
  if (box > 4'000'000)
    throw ComputeError("resource error: bounding box with " + box.get_str() +
                       " lattice points is too large to enumerate");
  std::set<IntVector> columns;
  for (int j = 0; j < n; ++j) columns.insert(c.column(j));
  const RatVector& g = *c.grading;

  long candidates = 0;
  IntVector z = lo;
  for (;;) {
    Rat deg = 0;
    for (int k = 0; k < d; ++k) deg += g[k] * Rat(z[k]);
    if (deg == 1 && !columns.count(z)) {
      ++candidates;
      // Membership of z in conv(A) = cone(A) at degree one.
      Face usable;
      for (int j = 0; j < n; ++j) {
        bool fits = true;
        if (nonneg)
          for (int k = 0; k < d && fits; ++k)
            if (z[k] == 0 && c.a.at(k, j) != 0) fits = false;
        if (fits) usable.push_back(j);
      }
      if (!usable.empty()) {
        linalg::LinearSystem s(int(usable.size()));
        for (std::size_t q = 0; q < usable.size(); ++q) {
          RatVector unit(usable.size(), Rat(0));
          unit[q] = 1;
          s.add(std::move(unit), linalg::Rel::Ge, Rat(0));
        }
        for (int k = 0; k < d; ++k) {
          RatVector row(usable.size());
          for (std::size_t q = 0; q < usable.size(); ++q)
            row[q] = Rat(c.a.at(k, usable[q]));
          s.add(std::move(row), linalg::Rel::Eq, Rat(z[k]));
        }
        if (linalg::feasible(s).feasible) {
          rep.add("empty polytope", false,
                  "lattice point " + vec_label(z) +
                      " of degree one is not a column");
          return;
        }
      }
    }
    int k = 0;
    while (k < d && z[k] == hi[k]) z[k] = lo[k], ++k;
    if (k == d) break;
    z[k] += 1;
  }
  rep.add("empty polytope", true,
          std::to_string(candidates) +
              " non-column lattice points of degree one tested, none in "
              "the polytope");
}

void add_normal_item(CertificateReport& rep, const Configuration& c) {
  CertificateReport nr = geometry::is_normal(c);
  rep.add("normal", nr.pass,
          nr.pass ? "semigroup equals the cone lattice points"
                  : nr.first_failure());
}

/// Shared property panel for the single-apex tower base and levels.
void add_tower_properties(CertificateReport& rep, const Configuration& c) {
  add_graded_item(rep, c);
  if (!c.pointed()) {
    rep.add("pointed cone", false, "no strictly positive functional");
    return;
  }
  add_extreme_item(rep, c);
  add_empty_item(rep, c);
  add_normal_item(rep, c);
}

}  // namespace

bool Tower::pass() const {
  if (!base_report.pass) return false;
  for (const auto& lv : levels)
    if (!lv.report.pass) return false;
  return true;
}

Configuration firla_ziegler(const IntVector& v) {
  if (v.size() != 4)
    throw InputError("expected four coordinates (a,b,c,d), got " +
                     std::to_string(v.size()));
  if (!(0 < v[0] && v[0] < v[1] && v[1] < v[2] && v[2] < v[3]))
    throw InputError("coordinates must satisfy 0 < a < b < c < d, got " +
                     vec_label(v));
  // The all-ones vector lies in the cone and, together with e1, e2, e3,
  // generates Z^4, so adding it as a helper column pins the ambient
  // lattice without changing the cone.
  IntMatrix m(4, 5);
  for (int k = 0; k < 3; ++k) m.at(k, k) = 1;
  for (int k = 0; k < 4; ++k) {
    m.at(k, 3) = v[k];
    m.at(k, 4) = 1;
  }
  Configuration helper = toric::make_configuration(std::move(m));
  auto hb = geometry::hilbert_basis_simplicial(helper, {0, 1, 2, 3});
  return toric::make_configuration(IntMatrix::from_columns(hb, 4));
}

Tower delta_normal_tower(const Configuration& base, int d_max) {
  if (base.d() != 4)
    throw InputError("tower base must have four rows, got " +
                     std::to_string(base.d()));
  Tower tw;
  tw.base = base;
  tw.base_report.subject = "bipyramid tower base";
  tw.base_report.add("pointed cone", base.pointed(),
                     base.pointed() ? "strictly positive functional exists"
                                    : "no strictly positive functional");
  bool full = base.rank == 4 && base.lattice_index == 1;
  tw.base_report.add("lattice", full,
                     full ? "columns span Z^4"
                          : "rank " + std::to_string(base.rank) + ", index " +
                                base.lattice_index.get_str());
  if (!tw.base_report.pass) return tw;
  Face base_ext = geometry::extreme_columns(base);
  tw.base_report.add("extreme rays", base_ext.size() == 4,
                     std::to_string(base_ext.size()) +
                         " extreme rays (simplicial base needs 4)");
  add_normal_item(tw.base_report, base);
  if (!tw.base_report.pass) return tw;

  const Configuration* prev = &base;
  Face prev_ext = base_ext;
  for (int d = 5; d <= d_max; ++d) {
    TowerLevel lv;
    int pn = prev->n();
    IntMatrix m(d, pn + 2);
    for (int k = 0; k < 4; ++k) {
      m.at(k, 0) = 1;
      m.at(k, 1) = 1;
    }
    m.at(d - 1, 0) = 1;
    m.at(d - 1, 1) = -1;
    for (int j = 0; j < pn; ++j)
      for (int k = 0; k < d - 1; ++k) m.at(k, j + 2) = prev->a.at(k, j);
    lv.config = toric::make_configuration(std::move(m));
    lv.apex_plus = 0;
    lv.apex_minus = 1;
    for (int j : prev_ext) lv.sigma.push_back(j + 2);
    lv.sigma1 = lv.sigma;
    lv.sigma1.insert(lv.sigma1.begin(), 0);
    lv.sigma2 = lv.sigma;
    lv.sigma2.insert(lv.sigma2.begin(), 1);
    lv.delta.facets = {lv.sigma1, lv.sigma2};
    lv.report.subject = "bipyramid tower level " + std::to_string(d);
    lv.report.add("columns", lv.config.n() == pn + 2,
                  "2 apexes + " + std::to_string(pn) + " padded");

    Face expect_ext = lv.sigma;
    expect_ext.insert(expect_ext.begin(), {0, 1});
    Face got_ext = geometry::extreme_columns(lv.config);
    int target = 4 + 2 * (d - 4);
    lv.report.add(
        "extreme rays",
        got_ext == expect_ext && int(got_ext.size()) == target,
        got_ext == expect_ext
            ? std::to_string(got_ext.size()) + " extreme rays (4 + 2(d-4))"
            : "computed extreme set " + face_label(got_ext) +
                  " differs from the apexes plus the previous extreme rays");

    // The subdivision induced by weighting the two apexes must consist of
    // the two bipyramid halves.
    IntVector w(pn + 2, Int(0));
    w[0] = 1;
    w[1] = 1;
    auto cells = geometry::regular_subdivision(lv.config, w);
    bool halves = cells.size() == 2;
    if (halves) {
      std::set<Face> reduced;
      for (const auto& cell : cells)
        reduced.insert(extreme_reduction(lv.config, cell));
      halves = reduced == std::set<Face>{lv.sigma1, lv.sigma2};
    }
    lv.report.add("apex-weight subdivision", halves,
                  halves ? "two cells, reducing to the bipyramid halves"
                         : std::to_string(cells.size()) +
                               " cells, not the bipyramid halves");
    if (int(lv.sigma1.size()) == d) {
      // Simplicial halves: the triangulation call must agree verbatim.
      auto tri = geometry::regular_triangulation(lv.config, w);
      std::set<Face> got(tri.facets.begin(), tri.facets.end());
      bool same = got == std::set<Face>{lv.sigma1, lv.sigma2};
      lv.report.add("apex-weight triangulation", same,
                    same ? "the two bipyramid halves"
                         : "facets differ from the bipyramid halves");
    }
    lv.report.add("triangulation",
                  geometry::is_triangulation(lv.config, lv.delta),
                  "covering and pairwise intersection conditions");

    for (const Face& half : {lv.sigma1, lv.sigma2}) {
      Face inside;
      for (int j = 0; j < lv.config.n(); ++j)
        if (geometry::cone_contains(lv.config, half, lv.config.column(j)))
          inside.push_back(j);
      IntMatrix sel = lv.config.a.select_columns(inside);
      bool span = linalg::rank(sel) == d && linalg::lattice_index(sel) == 1;
      lv.report.add("facet lattice " + face_label(half), span,
                    span ? std::to_string(inside.size()) +
                               " columns in the cone span the full lattice"
                         : "columns in the cone do not span the full "
                           "lattice");
    }

    tw.levels.push_back(std::move(lv));
    prev = &tw.levels.back().config;
    prev_ext = got_ext;
  }
  return tw;
}

CertificateReport parity_certificate(const Configuration& level) {
  int d = level.d(), n = level.n();
  if (n < 2 || d < 1)
    throw InputError("parity certificate needs at least two columns");
  CertificateReport rep;
  rep.subject = "determinant parity certificate";
  IntVector a0 = level.column(0), a1 = level.column(1);
  bool apex = a0[d - 1] - a1[d - 1] == 2;
  for (int k = 0; k + 1 < d; ++k)
    if (a0[k] != a1[k]) apex = false;
  rep.add("apex pair", apex,
          apex ? "columns 1 and 2 differ exactly by two in the last "
                 "coordinate"
               : "columns 1 and 2 do not differ exactly by two in the last "
                 "coordinate");

  long total = 0;
  Face odd_subset;
  Int odd_det;
  if (n >= d && d >= 2) {
    Face cur;
    for_each_choice(2, n, d - 2, cur, [&](const Face& pick) {
      Face tau = {0, 1};
      tau.insert(tau.end(), pick.begin(), pick.end());
      Int dv = linalg::det(level.a.select_columns(tau));
      ++total;
      if (dv % 2 != 0) {
        odd_subset = tau;
        odd_det = dv;
        return false;
      }
      return true;
    });
  }
  rep.add("determinant parity", odd_subset.empty(),
          odd_subset.empty()
              ? std::to_string(total) +
                    " spanning subsets through both apexes, all even"
              : "subset " + face_label(odd_subset) + " has odd determinant " +
                    odd_det.get_str());
  return rep;
}

GraphConfig graph_configuration(
    int vertices, const std::vector<std::pair<int, int>>& edges) {
  if (vertices < 1) throw InputError("vertex count must be positive");
  GraphConfig g;
  g.vertices = vertices;
  g.edges = edges;
  std::set<std::pair<int, int>> seen;
  IntMatrix m(vertices, int(edges.size()));
  int col = 0;
  for (auto [i, j] : edges) {
    if (i < 1 || i > vertices || j < 1 || j > vertices)
      throw InputError("edge {" + std::to_string(i) + "," +
                       std::to_string(j) + "} leaves the vertex range 1.." +
                       std::to_string(vertices));
    if (i == j)
      throw InputError("loop at vertex " + std::to_string(i) +
                       " is not allowed");
    auto key = std::minmax(i, j);
    if (!seen.insert(key).second)
      throw InputError("duplicate edge {" + std::to_string(key.first) + "," +
                       std::to_string(key.second) + "}");
    m.at(0, col) += 1;
    if (i != 1) m.at(i - 1, col) += 1;
    if (j != 1) m.at(j - 1, col) += 1;
    ++col;
  }
  g.config = toric::make_configuration(std::move(m));
  return g;
}

Tower non_delta_normal_tower(const Configuration& base, int d_max) {
  Tower tw;
  tw.base = base;
  tw.base_report.subject = "single-apex tower base";
  add_tower_properties(tw.base_report, base);
  if (base.pointed()) {
    Face ext = geometry::extreme_columns(base);
    tw.base_report.add("non-simplicial cone", int(ext.size()) > base.rank,
                       std::to_string(ext.size()) + " extreme rays in rank " +
                           std::to_string(base.rank));
  }

  const Configuration* prev = &base;
  int prev_ext = base.pointed() ? int(geometry::extreme_columns(base).size())
                                : 0;
  for (int d = base.d() + 1; d <= d_max; ++d) {
    TowerLevel lv;
    int pn = prev->n();
    IntMatrix m(d, pn + 1);
    m.at(0, 0) = 1;
    m.at(d - 1, 0) = 1;
    for (int j = 0; j < pn; ++j)
      for (int k = 0; k < d - 1; ++k) m.at(k, j + 1) = prev->a.at(k, j);
    lv.config = toric::make_configuration(std::move(m));
    lv.apex_plus = 0;
    lv.report.subject = "single-apex tower level " + std::to_string(d);
    lv.report.add("columns", lv.config.n() == pn + 1,
                  "1 apex + " + std::to_string(pn) + " padded");
    add_tower_properties(lv.report, lv.config);
    if (lv.config.pointed()) {
      int ext = int(geometry::extreme_columns(lv.config).size());
      lv.report.add("one new extreme ray", ext == prev_ext + 1,
                    std::to_string(ext) + " extreme rays, previous level " +
                        std::to_string(prev_ext));
      prev_ext = ext;
    }
    tw.levels.push_back(std::move(lv));
    prev = &tw.levels.back().config;
  }
  return tw;
}

CertificateReport not_delta_normal_witness(const Configuration& c,
                                           const geometry::Triangulation& t) {
  CertificateReport rep;
  rep.subject = "witness against triangulation-normality";
  add_graded_item(rep, c);
  if (!c.pointed()) {
    rep.add("pointed cone", false, "no strictly positive functional");
    return rep;
  }
  add_extreme_item(rep, c);
  add_empty_item(rep, c);
  if (!rep.pass) {
    rep.add("witness", false, "hypotheses not established, no witness "
                              "sought");
    return rep;
  }

  bool valid = geometry::is_triangulation(c, t);
  rep.add("triangulation", valid,
          valid ? std::to_string(t.facets.size()) + " facets"
                : "facet list fails the triangulation conditions");
  if (!valid) return rep;
  for (const auto& f : t.facets)
    if (int(f.size()) != c.rank) {
      rep.add("simplicial facets", false,
              "facet " + face_label(f) + " is not simplicial");
      return rep;
    }

  Face fat;
  Int fat_vol = 0;
  for (const auto& f : t.facets) {
    Face s = f;
    std::sort(s.begin(), s.end());
    Int vol = geometry::normalized_volume(c, s);
    if (vol >= 2) {
      fat = s;
      fat_vol = vol;
      break;
    }
  }
  if (fat.empty()) {
    rep.add("facet of normalized volume at least two", false,
            "every facet is unimodular: the triangulation contradicts the "
            "hypothesis that no unimodular triangulation exists");
    return rep;
  }
  rep.add("facet of normalized volume at least two", true,
          face_label(fat) + " has normalized volume " + fat_vol.get_str());

  Face inside;
  for (int j = 0; j < c.n(); ++j) {
    if (std::binary_search(fat.begin(), fat.end(), j)) continue;
    if (geometry::cone_contains(c, fat, c.column(j))) inside.push_back(j);
  }
  rep.add("no further columns in the facet cone", inside.empty(),
          inside.empty()
              ? "the facet columns are the only columns in their cone"
              : "columns " + face_label(inside) + " also lie in the cone");
  if (!inside.empty()) return rep;

  auto hb = geometry::hilbert_basis_simplicial(c, fat);
  std::set<IntVector> rays;
  for (int j : fat) rays.insert(c.column(j));
  IntVector q;
  bool found = false;
  for (const auto& h : hb)
    if (!rays.count(h)) {
      q = h;
      found = true;
      break;
    }
  rep.add("Hilbert basis element beyond the facet columns", found,
          found ? vec_label(q)
                : "the Hilbert basis equals the facet columns");
  if (!found) return rep;

  bool generated = geometry::semigroup_contains(c, fat, q);
  rep.add("witness outside the facet column semigroup", !generated,
          vec_label(q) +
              (generated
                   ? " is generated by the facet columns after all"
                   : " needs a generator the configuration cannot supply"));
  return rep;
}

}  // namespace dnormal::families
