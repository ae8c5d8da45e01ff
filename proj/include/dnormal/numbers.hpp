#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace dnormal {

// Exact arithmetic only: arbitrary-precision integers and rationals.
// No floating point is used anywhere in this project.
using Int = mpz_class;
using Rat = mpq_class;

using IntVector = std::vector<Int>;
using RatVector = std::vector<Rat>;

inline Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Int gcd_int(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm_int(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

/// Exact quotient; the caller guarantees divisibility.
inline Int div_exact(const Int& a, const Int& b) {
  Int q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

/// Largest integer <= q.
inline Int rat_floor(const Rat& q) {
  return floor_div(q.get_num(), q.get_den());
}

inline std::string to_string(const Int& a) { return a.get_str(); }

inline std::string to_string(const Rat& q) { return q.get_str(); }

inline std::string to_string(const IntVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  return s + ")";
}

inline std::string to_string(const RatVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  return s + ")";
}

}  // namespace dnormal
