#pragma once

#include <utility>
#include <vector>

#include "dnormal/geometry.hpp"
#include "dnormal/ideals.hpp"
#include "dnormal/numbers.hpp"
#include "dnormal/report.hpp"
#include "dnormal/toric.hpp"

/// Structured families of configurations built by recursive apex
/// constructions, together with the certificate checkers that establish
/// their properties level by level: bipyramidal towers that stay
/// triangulation-normal while admitting no unimodular triangulation, and
/// normal towers with empty lattice polytopes that are not
/// triangulation-normal for any sampled regular triangulation.
namespace dnormal::families {

/// One level of a tower: the configuration in dimension d obtained from the
/// previous level by padding with a zero coordinate and adjoining one or two
/// apex columns.
struct TowerLevel {
  toric::Configuration config;

  /// Column index of the raised apex (or of the single apex).
  int apex_plus = -1;
  /// Column index of the lowered apex; -1 for single-apex towers.
  int apex_minus = -1;

  /// Indices of the padded copies of the previous level's extreme columns
  /// (the equator of the bipyramid), sorted ascending.
  ideals::Face sigma;
  /// {apex_plus} with sigma / {apex_minus} with sigma; empty for
  /// single-apex towers.
  ideals::Face sigma1, sigma2;

  /// The two-cell triangulation {sigma1, sigma2}; empty facet list for
  /// single-apex towers.
  geometry::Triangulation delta;

  /// Structural checks performed while building this level.
  CertificateReport report;
};

struct Tower {
  toric::Configuration base;
  CertificateReport base_report;
  std::vector<TowerLevel> levels;

  /// True when the base report and every level report pass.
  bool pass() const;
};

/// A configuration read off a simple graph: one column per edge, where an
/// edge {i, j} avoiding vertex 1 contributes e_1 + e_i + e_j and an edge
/// {1, i} contributes e_1 + e_i.  Vertices are 1-based in the edge list.
struct GraphConfig {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;
  toric::Configuration config;
};

/// Hilbert basis of the cone spanned by e_1, e_2, e_3 and v inside Z^4,
/// returned as a configuration with columns sorted ascending
/// lexicographically.  Requires v = (a, b, c, d) with 0 < a < b < c < d;
/// throws InputError otherwise.  The result always contains e_1, e_2, e_3,
/// v and (1,1,1,1).
toric::Configuration firla_ziegler(const IntVector& v);

/// Builds the bipyramidal tower over a four-dimensional base: level d
/// adjoins the apexes p_d +/- e_d (p_d = e_1+e_2+e_3+e_4, written in Z^d)
/// to the zero-padded previous level, for d = 5..d_max.  Each level's
/// report checks the column and extreme-ray bookkeeping, cross-checks the
/// two-cell triangulation {sigma1, sigma2} against the subdivision induced
/// by weighting the two apexes, verifies it satisfies the triangulation
/// conditions, and confirms both cells' columns span Z^d as a lattice.
/// The heavier per-level certificates are separate calls:
/// geometry::is_delta_normal(level.config, level.delta) and
/// parity_certificate(level.config).
Tower delta_normal_tower(const toric::Configuration& base, int d_max = 8);

/// Certifies the determinant-parity obstruction to unimodular
/// triangulations for a tower level whose two apexes are columns 0 and 1:
/// checks that the apexes differ exactly in the last coordinate (by 2) and
/// that every d-subset of columns containing both apexes has even
/// determinant.  Any full-dimensional simplex of a triangulation using both
/// apexes therefore has normalized volume at least 2.
CertificateReport parity_certificate(const toric::Configuration& level);

/// Builds the configuration of a simple graph on `vertices` vertices from a
/// 1-based edge list.  Loops, duplicate edges and out-of-range endpoints
/// throw InputError.  Columns appear in edge-list order; an edgeless graph
/// yields a configuration with no columns.
GraphConfig graph_configuration(int vertices,
                                const std::vector<std::pair<int, int>>& edges);

/// Builds the single-apex tower over a graded base: level d adjoins the
/// apex e_1 + e_d to the zero-padded previous level, for
/// d = base.d()+1..d_max.  The base report checks that the base is graded
/// with all columns extreme, spans a non-simplicial cone, has an empty
/// polytope (no lattice points of degree one besides the columns) and is
/// normal; every level report re-checks the same properties plus the
/// one-new-extreme-ray bookkeeping.  Failures are reported per property,
/// not thrown.
Tower non_delta_normal_tower(const toric::Configuration& base,
                             int d_max = 13);

/// Certifies that a graded configuration with empty polytope and only
/// extreme columns fails to be triangulation-normal with respect to t: any
/// facet of normalized volume >= 2 has a Hilbert-basis element that no
/// column outside the facet can help generate, and the report exhibits one
/// such witness.  When every facet of t is unimodular no witness exists;
/// the report then fails with an explicit "every facet is unimodular"
/// item, since that contradicts the hypothesis under which the family is
/// built.  Precondition failures are likewise reported, not thrown.
CertificateReport not_delta_normal_witness(const toric::Configuration& c,
                                           const geometry::Triangulation& t);

}  // namespace dnormal::families
