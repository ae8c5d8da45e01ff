#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dnormal/ideals.hpp"
#include "dnormal/linalg.hpp"
#include "dnormal/numbers.hpp"

namespace dnormal::toric {

using ideals::Exponents;

/// A point configuration: the columns of an integer matrix, together with
/// cached invariants. `grading` is a rational functional evaluating to 1 on
/// every column when one exists; `positive` evaluates to >= 1 on every column
/// and certifies that no nonzero non-negative vector lies in the kernel
/// (fibers are finite). Absence of `positive` means the configuration is not
/// pointed.
struct Configuration {
  linalg::IntMatrix a;  // d x n, columns are the points
  std::vector<std::string> names;
  int rank = 0;
  Int lattice_index = 1;  // index of the column lattice in its saturation
  std::optional<RatVector> grading;
  std::optional<RatVector> positive;

  int d() const { return a.rows; }
  int n() const { return a.cols; }
  bool graded() const { return grading.has_value(); }
  bool pointed() const { return positive.has_value(); }
  IntVector column(int j) const { return a.column(j); }
};

/// Builds a configuration and computes all cached fields. Empty `names`
/// selects the defaults (letters, or x1..xn past 26 variables).
Configuration make_configuration(linalg::IntMatrix a,
                                 std::vector<std::string> names = {});

/// Weight order refined by degree-graded reverse lexicographic comparison.
/// `tiebreak` lists variable indices from largest to smallest; monomials of
/// equal weight compare by total degree (higher is greater), then the
/// monomial with the smaller exponent on the cheapest differing variable is
/// greater.
struct TermOrder {
  IntVector weight;
  std::vector<int> tiebreak;

  int compare(const Exponents& u, const Exponents& v) const;  // -1, 0, +1
  bool less(const Exponents& u, const Exponents& v) const {
    return compare(u, v) < 0;
  }
  bool greater(const Exponents& u, const Exponents& v) const {
    return compare(u, v) > 0;
  }
};

/// Validates sizes, non-negativity of the weight, and that tiebreak is a
/// permutation; an empty weight means all zeros, an empty tiebreak the
/// identity permutation.
TermOrder make_order(int n, IntVector weight = {},
                     std::vector<int> tiebreak = {});

/// x^lead - x^trail with lead strictly greater under the active order.
struct Binomial {
  Exponents lead;
  Exponents trail;

  bool operator==(const Binomial& o) const = default;
};

struct GroebnerBasis {
  TermOrder order;
  std::vector<Binomial> elements;  // reduced, canonically sorted
};

/// Basis of the integer kernel {u : A u = 0} as the columns of an n x
/// (n - rank) matrix, computed from the Hermite normal form.
linalg::IntMatrix kernel_basis(const Configuration& c);

/// True when the only non-negative integer kernel vector is zero; equivalent
/// to the existence of the `positive` functional.
bool fiber_finite(const Configuration& c);

/// The reduced Groebner basis of the toric ideal of c under `order`:
/// lattice-basis binomials, then one saturation pass per variable with a
/// variable-cheapest order, then Buchberger and autoreduction under `order`.
/// Throws InputError when the configuration is not pointed and ComputeError
/// when internal budgets are exceeded.
GroebnerBasis toric_groebner(const Configuration& c, const TermOrder& order);

/// Minimalized ideal of lead terms.
ideals::MonomialIdeal initial_ideal(const GroebnerBasis& g);

/// All u in N^n with A u = gamma, canonically sorted. Throws InputError when
/// the configuration is not pointed.
std::vector<Exponents> fiber(const Configuration& c, const IntVector& gamma);

/// Minimum of the fiber under the order; throws ComputeError when the fiber
/// is empty.
Exponents cheapest_in_fiber(const Configuration& c, const TermOrder& order,
                            const IntVector& gamma);

/// Maximum total degree of a monomial appearing in the basis.
int max_degree(const GroebnerBasis& g);

/// Renders "lead - trail" (e.g. "a*c - b^2").
std::string format_binomial(const Binomial& b,
                            const std::vector<std::string>& names);

}  // namespace dnormal::toric
