#pragma once

#include <string>
#include <vector>

namespace dnormal::ideals {

/// Monomials are exponent vectors with small machine-integer entries; all
/// degrees arising here are tiny even when the ambient arithmetic is exact
/// big-integer arithmetic.
using Exponents = std::vector<int>;

/// Faces are strictly increasing lists of 0-based variable indices.
using Face = std::vector<int>;

int degree(const Exponents& e);
bool divides(const Exponents& a, const Exponents& b);  // a | b
Exponents mul(const Exponents& a, const Exponents& b);
Exponents quotient(const Exponents& b, const Exponents& a);  // b / a, requires a | b
Face support(const Exponents& e);
bool is_one(const Exponents& e);

bool face_subset(const Face& a, const Face& b);
Face face_union(const Face& a, const Face& b);
Face face_intersection(const Face& a, const Face& b);
Face face_complement(const Face& f, int nvars);

/// Canonical order used everywhere monomials are listed: by total degree,
/// then between equal degrees the monomial whose first differing exponent is
/// larger comes first. On squarefree degree-one monomials this is simply
/// variable order.
bool canonical_less(const Exponents& a, const Exponents& b);

/// A monomial ideal held by its unique minimal generating set, canonically
/// sorted. The zero ideal has no generators; the unit ideal is generated by 1.
struct MonomialIdeal {
  int nvars = 0;
  std::vector<Exponents> gens;
};

/// Builds an ideal from arbitrary generators: discards divisible ones and
/// sorts canonically.
MonomialIdeal make_ideal(int nvars, std::vector<Exponents> gens);

bool contains(const MonomialIdeal& m, const Exponents& e);
bool is_unit(const MonomialIdeal& m);
bool is_zero(const MonomialIdeal& m);

/// Localization at a face: exponents on face variables are set to zero
/// (those variables become units) and the result is minimalized again.
MonomialIdeal localize(const MonomialIdeal& m, const Face& face);

MonomialIdeal radical(const MonomialIdeal& m);

/// All standard monomials (monomials outside the ideal) of total degree at
/// most `degree_cap`, in canonical order. Used as an independent oracle by
/// decomposition checks.
std::vector<Exponents> standard_monomials_up_to(const MonomialIdeal& m,
                                                int degree_cap);

/// An admissible pair (root, face): root has support disjoint from the face
/// and the coset root * K[face] consists of standard monomials. The standard
/// pairs of an ideal are the admissible pairs maximal under coverage.
struct StandardPair {
  Exponents root;
  Face face;

  bool operator==(const StandardPair& o) const = default;
};

/// True when every monomial of `small` (root times face variables) also lies
/// in the coset described by `big`.
bool pair_covers(const StandardPair& big, const StandardPair& small);

/// Standard pairs with faces ranging over all subsets of the variables.
/// Requires nvars <= 16 (the face scan is exponential in nvars).
std::vector<StandardPair> standard_pairs(const MonomialIdeal& m);

/// Standard pairs with faces restricted to subsets of the supplied faces.
/// Correct whenever every associated face of the ideal is such a subset,
/// which holds for initial ideals of toric ideals with the faces of their
/// regular triangulation.
std::vector<StandardPair> standard_pairs(
    const MonomialIdeal& m, const std::vector<Face>& allowed_faces);

/// Distinct faces appearing among the standard pairs, sorted.
std::vector<Face> associated_faces(const MonomialIdeal& m);
std::vector<Face> associated_faces(const std::vector<StandardPair>& pairs);

/// True when every associated face carries the pair with root 1; the
/// associated primes are then exactly the minimal primes.
bool embedded_prime_free(const MonomialIdeal& m);
bool embedded_prime_free(const std::vector<StandardPair>& pairs);

/// Default variable names: single letters a, b, c, ... when n <= 26,
/// otherwise x1..xn.
std::vector<std::string> default_names(int n);

/// Renders an exponent vector as a monomial, e.g. "a*c^2" or "1".
std::string format_monomial(const Exponents& e,
                            const std::vector<std::string>& names);

/// Parses the format produced by format_monomial (also accepts juxtaposition
/// without '*' when all names are single characters, e.g. "ac2" is rejected
/// but "a*c^2" and "ac^2" are read).
Exponents parse_monomial(const std::string& text,
                         const std::vector<std::string>& names);

}  // namespace dnormal::ideals
