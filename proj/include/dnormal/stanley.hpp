#pragma once

#include <string>
#include <vector>

#include "dnormal/geometry.hpp"
#include "dnormal/ideals.hpp"
#include "dnormal/report.hpp"
#include "dnormal/toric.hpp"

namespace dnormal::stanley {

using ideals::Exponents;
using ideals::Face;

// ---------------------------------------------------------------------------
// Special standard pairs
// ---------------------------------------------------------------------------

/// One standard pair of the distinguished initial ideal together with the
/// parallelepiped point certifying it: `root` is the cheapest monomial whose
/// columns sum to `gamma`, and `gamma` ranges over the lattice points of the
/// fundamental parallelepiped of `facet`.
struct SpecialPair {
  Exponents root;
  Face facet;
  IntVector gamma;

  bool operator==(const SpecialPair& o) const = default;
};

/// The full set of special pairs of a Delta-normal configuration, grouped by
/// facet in triangulation order with roots in canonical monomial order
/// within each facet.  `partitions` caches the facet / interior / exterior
/// split of the columns for every facet (same order as the groups), which
/// downstream root-support queries need.
struct SpecialPairs {
  int nvars = 0;
  std::vector<geometry::FacePartition> partitions;
  std::vector<SpecialPair> pairs;
};

/// Computes the special pairs: for every facet sigma of t and every lattice
/// point gamma of its fundamental parallelepiped, the pair
/// (cheapest_in_fiber(c, o, gamma), sigma).  Per facet the number of pairs
/// equals the normalized volume and the roots are pairwise distinct with
/// support among the facet's interior columns.
///
/// Requires is_delta_normal(c, t) to pass and o to induce t; this is not
/// re-checked here, but many violations surface as ComputeError: an empty
/// fiber, a root supported outside the interior columns, or two
/// parallelepiped points sharing a root.  Those checks are necessary, not
/// sufficient: for some orders the construction completes yet disagrees
/// with the true standard pairs of the initial ideal (only possible when a
/// facet has normalized volume >= 2).  When in doubt, cross-check against
/// ideals::standard_pairs(toric::initial_ideal(...)).
SpecialPairs special_pairs(const toric::Configuration& c,
                           const geometry::Triangulation& t,
                           const toric::TermOrder& o);

/// The same pairs as plain (root, face) standard pairs, sorted like
/// ideals::standard_pairs output so the two are directly comparable.
std::vector<ideals::StandardPair> as_standard_pairs(const SpecialPairs& s);

/// The intersection of all facets paired with the root.  Also verifies that
/// the facets pairing the root are exactly those whose interior columns
/// contain its support, throwing ComputeError otherwise; a root that occurs
/// in no pair is an InputError.
Face delta_of_root(const SpecialPairs& s, const Exponents& root);

// ---------------------------------------------------------------------------
// Stanley decompositions and filtrations
// ---------------------------------------------------------------------------

/// The multiplier attached to the pair (root, sigma): restrict the global
/// shelling to the star of delta_of_root(s, root); the result is 1 when
/// sigma is the first facet of that restriction and otherwise the product of
/// the variables in sigma's restriction face.  The pair must occur in s and
/// `global` must be a shelling of the full triangulation.
Exponents shelling_monomial(const SpecialPairs& s, const Exponents& root,
                            const Face& sigma,
                            const geometry::Shelling& global);

/// One pair of a Stanley decomposition: root = base_root * prod(x_l, l in q)
/// where q (inside `facet`) is the support of the shelling multiplier.
struct StanleyPair {
  Exponents root;
  Face facet;
  Exponents base_root;
  Face q;

  bool operator==(const StanleyPair& o) const = default;
};

/// All pairs (root * multiplier, facet) over the special pairs; their cosets
/// partition the standard monomials of the initial ideal.  Grouped by facet
/// in the order of s.
std::vector<StanleyPair> stanley_decomposition(const SpecialPairs& s,
                                               const geometry::Shelling& global);

/// An ordered Stanley decomposition whose length-j prefixes decompose the
/// intermediate ideals (the input ideal plus the roots of the pairs past the
/// prefix).
struct StanleyFiltration {
  std::vector<StanleyPair> pairs;
  /// Cumulative pair counts per shelling block: pairs with index in
  /// [block_ends[i-1], block_ends[i]) carry the facet shelling[i].
  std::vector<int> block_ends;
  /// The facet order the filtration was built under, kept for reproducible
  /// reports.
  std::vector<Face> shelling;
};

/// Orders a decomposition into a filtration: facets in shelling order;
/// within a facet ascending total degree of the base root with canonical
/// tie-break.  A proper divisor has strictly smaller degree, so no pair is
/// preceded by one whose base root it divides.  Throws InputError when the
/// decomposition uses a facet outside the shelling.
StanleyFiltration algorithm_list(const std::vector<StanleyPair>& d,
                                 const geometry::Shelling& global);

/// Degree-truncated filtration check: for every prefix of the list, the
/// monomials of degree <= degree_cap covered by the prefix must equal the
/// standard monomials (of degree <= degree_cap) of m plus the roots of the
/// remaining pairs, and the pair cosets must be pairwise disjoint.  A
/// negative degree_cap selects the maximum generator degree of m plus 3.
/// Failures carry a witness monomial and the offending prefix length.
CertificateReport verify_filtration(const ideals::MonomialIdeal& m,
                                    const StanleyFiltration& f,
                                    int degree_cap = -1);

/// Cohen-Macaulayness certificate: verify_filtration plus the requirement
/// that every face of the filtration is a facet of t (every face then
/// indexes a minimal prime).  A failing report states that no certificate
/// was found; it never asserts the negative.
CertificateReport certify_cm(const ideals::MonomialIdeal& m,
                             const StanleyFiltration& f,
                             const geometry::Triangulation& t,
                             int degree_cap = -1);

// ---------------------------------------------------------------------------
// Degree-bound generator classifier
// ---------------------------------------------------------------------------

enum class GenClass {
  kNClass,      // projection at some facet is an interior-supported minimal
                // generator of the localized ideal (and equals the generator)
  kOutClass,    // projection at some facet is a single exterior variable
  kCrossClass,  // projects to a minimal generator of no localized ideal
};

struct ClassifiedGenerator {
  Exponents gen;
  GenClass cls = GenClass::kCrossClass;
  /// Index into the triangulation's facet list of the facet justifying the
  /// class; -1 for the cross class.
  int facet_index = -1;
  /// The projection of gen at that facet (empty for the cross class).
  Exponents image;
  int degree = 0;
  bool squarefree = false;
};

struct GeneratorClassification {
  std::vector<ClassifiedGenerator> generators;  // one per minimal generator
  CertificateReport report;                     // the verified degree bounds
};

/// Classifies every minimal generator of the initial ideal of a graded
/// configuration by how it projects at the facets (projection = exponents on
/// facet columns set to zero):
///   - N-class generators equal their projection, which generates the
///     interior part of some localized ideal; their degree is at most d.
///   - OUT-class generators project to a single variable indexed by an
///     exterior column; they are squarefree of degree at most d.
///   - CROSS-class generators project to a minimal generator of no localized
///     ideal; they are squarefree quadratics x_i x_j with i, j interior to
///     two different facets and to no common one.
/// The verified bounds land in the report; d = number of rows.  Throws
/// InputError when c is not graded.  Requires is_delta_normal(c, t) to pass
/// and o to induce t (not re-checked).
GeneratorClassification classify_generators(const toric::Configuration& c,
                                            const geometry::Triangulation& t,
                                            const toric::TermOrder& o);

}  // namespace dnormal::stanley
