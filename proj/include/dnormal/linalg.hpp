#pragma once

#include <initializer_list>
#include <optional>
#include <vector>

#include "dnormal/numbers.hpp"

namespace dnormal::linalg {

/// Dense integer matrix with arbitrary-precision entries, row-major.
struct IntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Int> data;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), data(std::size_t(r) * c, Int(0)) {}

  static IntMatrix identity(int n);
  static IntMatrix from_rows(std::initializer_list<std::initializer_list<long>> rws);
  static IntMatrix from_columns(const std::vector<IntVector>& columns, int dim);

  Int& at(int r, int c) { return data[std::size_t(r) * cols + c]; }
  const Int& at(int r, int c) const { return data[std::size_t(r) * cols + c]; }

  IntVector column(int c) const;
  IntVector row(int r) const;
  IntMatrix select_columns(const std::vector<int>& idx) const;
  IntMatrix select_rows(const std::vector<int>& idx) const;
  IntMatrix transposed() const;

  bool operator==(const IntMatrix& o) const = default;
};

IntMatrix mul(const IntMatrix& a, const IntMatrix& b);
IntVector mul(const IntMatrix& a, const IntVector& v);

/// Exact determinant via Bareiss fraction-free elimination.
/// The empty 0x0 matrix has determinant 1. Non-square input is an error.
Int det(const IntMatrix& m);

/// Column-style Hermite normal form: h = m * u with u unimodular.
/// The first `rank` columns of h are the nonzero ones; pivots are positive,
/// sit in strictly increasing rows, and every entry left of a pivot in its
/// row lies in [0, pivot). Columns past `rank` are zero.
struct HnfResult {
  IntMatrix h;
  IntMatrix u;
  int rank = 0;
  std::vector<int> pivot_rows;  // row index of each pivot column
};
HnfResult hnf(const IntMatrix& m);

int rank(const IntMatrix& m);

/// Index of the column lattice inside its saturation: the gcd of the
/// rank-sized minors, computable as the product of the HNF pivots once
/// all-zero rows are discarded. Rank-deficient input (after discarding
/// zero rows) or a zero matrix is a rank error.
Int lattice_index(const IntMatrix& m);

/// One exact rational solution of a x = b, if the system is consistent
/// (free variables are set to zero).
std::optional<RatVector> solve(const IntMatrix& a, const RatVector& b);

/// Variant with rational coefficient rows.
std::optional<RatVector> solve_rows(const std::vector<RatVector>& rows,
                                    const RatVector& rhs);

enum class Rel { Le, Lt, Ge, Gt, Eq };

struct LinearConstraint {
  RatVector coef;
  Rel rel = Rel::Le;
  Rat rhs;
};

struct LinearSystem {
  int dim = 0;
  std::vector<LinearConstraint> constraints;

  explicit LinearSystem(int d = 0) : dim(d) {}
  void add(RatVector coef, Rel rel, Rat rhs);
};

struct Feasibility {
  bool feasible = false;
  RatVector witness;  // verified against the original system when feasible
};

/// Exact feasibility of a system of linear equalities and (possibly strict)
/// inequalities over the rationals, via Fourier-Motzkin elimination with
/// symbolic strictness tracking. Returns a verified witness when feasible.
Feasibility feasible(const LinearSystem& s);

}  // namespace dnormal::linalg
