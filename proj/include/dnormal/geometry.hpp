#pragma once

// Cones and triangulations attached to an integer configuration: regular
// subdivisions and triangulations from weight vectors, in/out partitions of
// the columns relative to a simplicial cone, fundamental-parallelepiped
// points, normalized volumes, Hilbert bases, normality and cell-wise
// normality certificates, and shellings with their restriction faces.
//
// All lattice computations run relative to the lattice generated by the
// configuration's columns: coordinates are first mapped through a column
// basis of that lattice, so results are exact even when the columns span a
// proper sublattice of Z^d or a lower-dimensional subspace.

#include <vector>

#include "dnormal/ideals.hpp"
#include "dnormal/linalg.hpp"
#include "dnormal/numbers.hpp"
#include "dnormal/report.hpp"
#include "dnormal/toric.hpp"

namespace dnormal::geometry {

/// A set of top-dimensional cells of a subdivision of cone(A), each cell
/// given by the sorted list of column indices spanning it.  Facets of size
/// rank(A) are simplicial; larger facets describe non-simplicial cells (the
/// union-of-cones and pairwise-intersection conditions still make sense and
/// are what is_triangulation verifies).
struct Triangulation {
  std::vector<ideals::Face> facets;
};

/// Partition of the column indices relative to a simplicial facet sigma:
/// `in` holds the indices outside sigma whose column lies in cone(A_sigma),
/// `out` the indices whose column lies outside that cone.
struct FacePartition {
  ideals::Face sigma;
  ideals::Face in;
  ideals::Face out;
};

/// An ordered list of facets F_1..F_s together with, for each position j,
/// the restriction face Q_j = {v in F_j : F_j \ {v} is contained in some
/// earlier facet}.  The defining property: for every j, the faces of F_j not
/// contained in any earlier facet are exactly the interval [Q_j, F_j].
/// q[0] is always empty.
struct Shelling {
  std::vector<ideals::Face> order;
  std::vector<ideals::Face> q;
};

// ---------------------------------------------------------------------------
// Subdivisions and triangulations
// ---------------------------------------------------------------------------

/// Top-dimensional cells of the regular subdivision of cone(A) induced by
/// the weight vector w: for every full-rank column subset whose weights lift
/// to a supporting functional (c.a_i = w_i on the subset, c.a_j <= w_j
/// everywhere), the cell is the full tight set {j : c.a_j = w_j}.  Cells are
/// returned sorted and deduplicated.
std::vector<ideals::Face> regular_subdivision(const toric::Configuration& c,
                                              const IntVector& w);

/// The regular triangulation induced by w: each subdivision cell is replaced
/// by its set of extreme-ray columns.  Requires a pointed configuration.
/// Throws ComputeError ("subdivision is not a triangulation", naming the
/// offending cell) when some cell has more extreme rays than rank(A).
Triangulation regular_triangulation(const toric::Configuration& c,
                                    const IntVector& w);

/// Verify the two triangulation conditions: the facet cones cover cone(A)
/// (every column lies in some facet cone, and every interior ridge of a
/// facet is flanked by a second facet on its far side), and each pairwise
/// intersection cone(A_s) /\ cone(A_t) equals cone(A_{s/\t}).  For a pair of
/// non-simplicial facets the intersection condition is certified by a strict
/// separating functional; this is exact whenever the common face is a ridge
/// of both cones and conservative (may return false) otherwise.
bool is_triangulation(const toric::Configuration& c, const Triangulation& t);

// ---------------------------------------------------------------------------
// Simplicial cone data
// ---------------------------------------------------------------------------

/// Classify every column outside sigma as inside or outside cone(A_sigma)
/// by the sign pattern of its unique rational representation.  Requires
/// sigma simplicial (rank(A) many columns, nonzero determinant); otherwise
/// throws InputError ("degenerate facet").
FacePartition face_partition(const toric::Configuration& c,
                             const ideals::Face& sigma);

/// All lattice points of the half-open fundamental parallelepiped
/// { sum l_i a_i : 0 <= l_i < 1, i in sigma } relative to the column
/// lattice, in original coordinates, sorted.  Always contains the origin;
/// the count equals normalized_volume(c, sigma).
std::vector<IntVector> fp_points(const toric::Configuration& c,
                                 const ideals::Face& sigma);

/// |det| of the facet's column matrix in lattice-normalized coordinates
/// (equivalently |det(A_sigma)| / lattice_index(A) for full-rank
/// configurations).  Requires sigma simplicial.
Int normalized_volume(const toric::Configuration& c,
                      const ideals::Face& sigma);

/// The unique minimal generating set of the semigroup
/// cone(A_sigma) /\ ZA for a simplicial facet sigma, in original
/// coordinates, sorted.  Candidates are the fundamental-parallelepiped
/// points and the rays; reducible candidates are removed by a bounded
/// membership search.
std::vector<IntVector> hilbert_basis_simplicial(const toric::Configuration& c,
                                                const ideals::Face& sigma);

/// Hilbert basis of cone(A_sigma) /\ ZA for an arbitrary full-dimensional
/// cell sigma: the cell is triangulated internally (deterministic weight
/// retries), the simplicial Hilbert bases are merged, and the union is
/// minimalized.  Falls back to hilbert_basis_simplicial when sigma is
/// simplicial.
std::vector<IntVector> hilbert_basis_cell(const toric::Configuration& c,
                                          const ideals::Face& sigma);

/// Decide whether x lies in cone(A_sigma) (rational feasibility; sigma may
/// be any column subset).  Coordinates are original-space.
bool cone_contains(const toric::Configuration& c, const ideals::Face& sigma,
                   const IntVector& x);

/// Decide whether x is a nonnegative integer combination of the columns
/// listed in `cols` (bounded depth-first search with memoization).
/// Coordinates are original-space; throws InputError when the listed
/// columns span a non-pointed cone.
bool semigroup_contains(const toric::Configuration& c,
                        const std::vector<int>& cols, const IntVector& x);

/// Same membership test against an arbitrary generator list (original
/// coordinates; each generator must lie in the column lattice of c, which
/// fixes the ambient lattice for the search).
bool semigroup_member(const toric::Configuration& c,
                      const std::vector<IntVector>& gens, const IntVector& x);

/// Indices of the columns that are extreme rays of cone(A), sorted.
/// Assumes no two columns are positively proportional.
std::vector<int> extreme_columns(const toric::Configuration& c);

// ---------------------------------------------------------------------------
// Normality certificates
// ---------------------------------------------------------------------------

/// For each facet sigma of t, check that every Hilbert-basis element of
/// cone(A_sigma) /\ ZA is a nonnegative integer combination of the columns
/// lying in cone(A_sigma).  One report item per facet; failures carry the
/// missing vectors as witnesses.
CertificateReport is_delta_normal(const toric::Configuration& c,
                                  const Triangulation& t);

/// Check NA = cone(A) /\ ZA: triangulate with deterministic generic
/// weights, merge the facet Hilbert bases, and test each element for
/// membership in NA.  Failures carry witness vectors.  Requires a pointed
/// configuration.
CertificateReport is_normal(const toric::Configuration& c);

// ---------------------------------------------------------------------------
// Shellings
// ---------------------------------------------------------------------------

/// Find a shelling order of the (pure, simplicial) facet list by greedy
/// extension with backtracking, trying facets in lexicographic order.
/// Throws ComputeError when the search is exhausted without success.
Shelling find_shelling(const Triangulation& t);

/// Validate a user-supplied facet order as a shelling and compute its
/// restriction faces.  Throws InputError when the order is not a
/// permutation of the facets or fails the interval condition.
Shelling make_shelling(const Triangulation& t,
                       const std::vector<ideals::Face>& order);

/// The subcomplex of facets containing f.  Throws InputError when f is not
/// a face of any facet.
Triangulation star(const Triangulation& t, const ideals::Face& f);

/// The global shelling filtered to star(t, f), with restriction faces
/// recomputed inside the star.  The filtered order is verified to be a
/// shelling of the star.
Shelling restricted_shelling(const Triangulation& t, const Shelling& global,
                             const ideals::Face& f);

/// True iff every facet is simplicial with normalized volume 1.
bool is_unimodular(const toric::Configuration& c, const Triangulation& t);

/// Build the reversed-simplex system {x_1 = 1, s_i . x <= 0} from the facet
/// normals s_i of the simplicial cone over sigma (s_i vanishes on the other
/// columns of sigma and is positive on a_i) and return its feasibility;
/// for a graded configuration this system is always infeasible.  Requires
/// the first coordinate of every column to be 1 and sigma simplicial of
/// full ambient rank.
linalg::Feasibility reversed_simplex_feasible(const toric::Configuration& c,
                                              const ideals::Face& sigma);

}  // namespace dnormal::geometry
