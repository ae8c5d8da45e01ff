#include "dnormal/toric.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "dnormal/errors.hpp"

namespace dnormal::toric {

using ideals::canonical_less;
using ideals::degree;
using linalg::IntMatrix;

namespace {

Rat dot(const RatVector& c, const IntVector& v) {
  Rat s(0);
  for (std::size_t i = 0; i < c.size(); ++i) s += c[i] * v[i];
  return s;
}

/// Index of the column lattice inside its saturation (the gcd of the
/// maximal minors of a lattice basis).
Int saturation_index(const IntMatrix& a) {
  linalg::HnfResult h = linalg::hnf(a);
  if (h.rank == 0) return 1;
  std::vector<int> basis_cols(h.rank);
  std::iota(basis_cols.begin(), basis_cols.end(), 0);
  IntMatrix b = h.h.select_columns(basis_cols);  // d x rank, full column rank

  Int g = 0;
  std::vector<int> rows(h.rank);
  // Enumerate all rank-sized row subsets; gcd of their determinants.
  std::function<void(int, int)> rec = [&](int pos, int next) {
    if (g == 1) return;
    if (pos == h.rank) {
      Int d = linalg::det(b.select_rows(rows));
      g = gcd_int(g, d);
      return;
    }
    for (int r = next; r <= a.rows - (h.rank - pos); ++r) {
      rows[pos] = r;
      rec(pos + 1, r + 1);
    }
  };
  rec(0, 0);
  return abs_int(g);
}

std::optional<RatVector> positive_functional(
    const IntMatrix& a, const std::optional<RatVector>& grading) {
  if (grading) return grading;  // evaluates to exactly 1 on every column
  RatVector ones(a.rows, Rat(1));
  bool ones_work = a.cols > 0;
  for (int j = 0; j < a.cols && ones_work; ++j)
    if (dot(ones, a.column(j)) < 1) ones_work = false;
  if (ones_work) return ones;
  linalg::LinearSystem sys(a.rows);
  for (int j = 0; j < a.cols; ++j) {
    RatVector coef(a.rows);
    for (int i = 0; i < a.rows; ++i) coef[i] = Rat(a.at(i, j));
    sys.add(std::move(coef), linalg::Rel::Ge, Rat(1));
  }
  linalg::Feasibility f = linalg::feasible(sys);
  if (!f.feasible) return std::nullopt;
  return f.witness;
}

}  // namespace

Configuration make_configuration(IntMatrix a, std::vector<std::string> names) {
  Configuration c;
  c.rank = linalg::rank(a);
  c.lattice_index = saturation_index(a);
  RatVector ones(a.cols, Rat(1));
  c.grading = linalg::solve(a.transposed(), ones);
  c.positive = positive_functional(a, c.grading);
  if (names.empty()) names = ideals::default_names(a.cols);
  if (int(names.size()) != a.cols)
    throw InputError("variable name count does not match column count");
  std::set<std::string> uniq(names.begin(), names.end());
  if (int(uniq.size()) != a.cols)
    throw InputError("variable names are not unique");
  c.names = std::move(names);
  c.a = std::move(a);
  return c;
}

int TermOrder::compare(const Exponents& u, const Exponents& v) const {
  Int s = 0;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u[i] != v[i]) s += Int(u[i] - v[i]) * weight[i];
  if (s > 0) return 1;
  if (s < 0) return -1;
  int du = degree(u), dv = degree(v);
  if (du != dv) return du > dv ? 1 : -1;
  for (auto it = tiebreak.rbegin(); it != tiebreak.rend(); ++it) {
    int j = *it;
    if (u[j] != v[j]) return u[j] < v[j] ? 1 : -1;
  }
  return 0;
}

TermOrder make_order(int n, IntVector weight, std::vector<int> tiebreak) {
  if (weight.empty()) weight.assign(n, Int(0));
  if (int(weight.size()) != n) throw InputError("weight length mismatch");
  for (const Int& w : weight)
    if (w < 0) throw InputError("weights must be non-negative");
  if (tiebreak.empty()) {
    tiebreak.resize(n);
    std::iota(tiebreak.begin(), tiebreak.end(), 0);
  }
  if (int(tiebreak.size()) != n) throw InputError("tiebreak length mismatch");
  std::vector<bool> seen(n, false);
  for (int j : tiebreak) {
    if (j < 0 || j >= n || seen[j])
      throw InputError("tiebreak is not a permutation of the variables");
    seen[j] = true;
  }
  return {std::move(weight), std::move(tiebreak)};
}

IntMatrix kernel_basis(const Configuration& c) {
  linalg::HnfResult h = linalg::hnf(c.a);
  std::vector<int> cols;
  for (int j = h.rank; j < c.n(); ++j) cols.push_back(j);
  return h.u.select_columns(cols);
}

bool fiber_finite(const Configuration& c) { return c.pointed(); }

namespace {

/// Buchberger machinery, generic over a comparator (any additive total
/// preorder that is a well-order on the A-homogeneous monomials in play).
using Cmp = std::function<int(const Exponents&, const Exponents&)>;

struct Basis {
  std::vector<Binomial> els;
  const Cmp& cmp;

  explicit Basis(const Cmp& c) : cmp(c) {}

  // Reduces a monomial to a normal form: repeatedly applies the first
  // element whose lead divides it.
  Exponents normal_form(Exponents m) const {
    bool reduced = true;
    while (reduced) {
      reduced = false;
      for (const auto& g : els) {
        if (ideals::divides(g.lead, m)) {
          m = ideals::mul(ideals::quotient(m, g.lead), g.trail);
          reduced = true;
          break;
        }
      }
    }
    return m;
  }

  // Orients and fully reduces a binomial; empty optional when it drops to 0.
  std::optional<Binomial> reduce(Exponents a, Exponents b) const {
    a = normal_form(std::move(a));
    b = normal_form(std::move(b));
    int s = cmp(a, b);
    if (s == 0) return std::nullopt;
    if (s < 0) std::swap(a, b);
    return Binomial{std::move(a), std::move(b)};
  }
};

std::vector<Binomial> buchberger(std::vector<Binomial> gens, const Cmp& cmp) {
  Basis basis(cmp);
  for (auto& g : gens) {
    auto r = basis.reduce(std::move(g.lead), std::move(g.trail));
    if (r) basis.els.push_back(std::move(*r));
  }

  struct Pair {
    int deg;
    long seq;
    int i, j;
    bool operator<(const Pair& o) const {
      if (deg != o.deg) return deg < o.deg;
      return seq < o.seq;
    }
  };
  std::set<Pair> queue;
  long seq = 0;

  auto lcm_exp = [](const Exponents& a, const Exponents& b) {
    Exponents l(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) l[i] = std::max(a[i], b[i]);
    return l;
  };
  auto coprime = [](const Exponents& a, const Exponents& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] > 0 && b[i] > 0) return false;
    return true;
  };
  auto enqueue_with_all = [&](int k) {
    for (int i = 0; i < k; ++i) {
      if (coprime(basis.els[i].lead, basis.els[k].lead)) continue;
      Exponents l = lcm_exp(basis.els[i].lead, basis.els[k].lead);
      queue.insert({degree(l), seq++, i, k});
    }
  };
  for (int k = 0; k < int(basis.els.size()); ++k) enqueue_with_all(k);

  long pops = 0;
  while (!queue.empty()) {
    Pair p = *queue.begin();
    queue.erase(queue.begin());
    if (++pops > 2000000)
      throw ComputeError("resource error: S-pair budget exceeded");
    const Binomial& f = basis.els[p.i];
    const Binomial& g = basis.els[p.j];
    Exponents l = lcm_exp(f.lead, g.lead);
    // spoly(f, g) = x^(l - lead f) * f - x^(l - lead g) * g.
    Exponents m1 = ideals::mul(ideals::quotient(l, f.lead), f.trail);
    Exponents m2 = ideals::mul(ideals::quotient(l, g.lead), g.trail);
    auto r = basis.reduce(std::move(m1), std::move(m2));
    if (!r) continue;
    basis.els.push_back(std::move(*r));
    if (basis.els.size() > 20000)
      throw ComputeError("resource error: basis size budget exceeded");
    enqueue_with_all(int(basis.els.size()) - 1);
  }
  return std::move(basis.els);
}

std::vector<Binomial> autoreduce(std::vector<Binomial> els, const Cmp& cmp) {
  // Keep only elements whose lead is not divisible by another lead; scanning
  // leads in increasing order makes the survivors well-defined.
  std::sort(els.begin(), els.end(), [&](const Binomial& a, const Binomial& b) {
    int s = cmp(a.lead, b.lead);
    if (s != 0) return s < 0;
    return cmp(a.trail, b.trail) < 0;
  });
  std::vector<Binomial> kept;
  for (auto& e : els) {
    bool divisible = false;
    for (const auto& k : kept)
      if (ideals::divides(k.lead, e.lead)) { divisible = true; break; }
    if (!divisible) kept.push_back(std::move(e));
  }
  // Reduce every trail against the kept set.
  Basis basis(cmp);
  basis.els = kept;
  for (auto& e : kept) e.trail = basis.normal_form(std::move(e.trail));
  std::sort(kept.begin(), kept.end(),
            [](const Binomial& a, const Binomial& b) {
              if (a.lead != b.lead) return canonical_less(a.lead, b.lead);
              return canonical_less(a.trail, b.trail);
            });
  return kept;
}

std::vector<Binomial> reduced_basis(std::vector<Binomial> gens,
                                    const Cmp& cmp) {
  return autoreduce(buchberger(std::move(gens), cmp), cmp);
}

IntVector positive_weights(const Configuration& c) {
  const RatVector& p = *c.positive;
  Int denom = 1;
  for (const Rat& v : p) denom = lcm_int(denom, v.get_den());
  IntVector w(c.n());
  for (int j = 0; j < c.n(); ++j) {
    Rat v = dot(p, c.column(j)) * denom;
    w[j] = v.get_num();  // exact: denominator divides denom
  }
  return w;
}

}  // namespace

GroebnerBasis toric_groebner(const Configuration& c, const TermOrder& order) {
  if (int(order.weight.size()) != c.n())
    throw InputError("term order arity does not match the configuration");
  if (!c.pointed())
    throw InputError(
        "non-pointed configuration: the toric ideal has infinite fibers");

  IntVector posw = positive_weights(c);
  auto weighted = [&posw](const Exponents& u, const Exponents& v) {
    Int s = 0;
    for (std::size_t i = 0; i < u.size(); ++i)
      if (u[i] != v[i]) s += Int(u[i] - v[i]) * posw[i];
    if (s > 0) return 1;
    if (s < 0) return -1;
    return 0;
  };

  // Lattice-basis binomials.
  IntMatrix k = kernel_basis(c);
  std::vector<Binomial> gens;
  for (int j = 0; j < k.cols; ++j) {
    Exponents plus(c.n(), 0), minus(c.n(), 0);
    for (int i = 0; i < c.n(); ++i) {
      if (!k.at(i, j).fits_sint_p())
        throw ComputeError("resource error: kernel basis entry too large");
      long v = k.at(i, j).get_si();
      if (v > 0) plus[i] = int(v);
      if (v < 0) minus[i] = int(-v);
    }
    gens.push_back({std::move(plus), std::move(minus)});
  }

  // One saturation pass per variable: reduced basis under a positive-weight
  // order with the variable cheapest (pure reverse lexicographic tiebreak),
  // then division by the common variable power.
  for (int var = 0; var < c.n(); ++var) {
    std::vector<int> scan;  // cheapest first
    scan.push_back(var);
    for (int j = 0; j < c.n(); ++j)
      if (j != var) scan.push_back(j);
    Cmp sat_cmp = [&weighted, scan](const Exponents& u, const Exponents& v) {
      int s = weighted(u, v);
      if (s != 0) return s;
      for (int j : scan)
        if (u[j] != v[j]) return u[j] < v[j] ? 1 : -1;
      return 0;
    };
    gens = reduced_basis(std::move(gens), sat_cmp);
    for (auto& g : gens) {
      int common = std::min(g.lead[var], g.trail[var]);
      if (common > 0) {
        g.lead[var] -= common;
        g.trail[var] -= common;
      }
    }
  }

  Cmp user_cmp = [&order](const Exponents& u, const Exponents& v) {
    return order.compare(u, v);
  };
  GroebnerBasis g;
  g.order = order;
  g.elements = reduced_basis(std::move(gens), user_cmp);
  return g;
}

ideals::MonomialIdeal initial_ideal(const GroebnerBasis& g) {
  std::vector<Exponents> leads;
  int n = 0;
  for (const auto& e : g.elements) {
    n = int(e.lead.size());
    leads.push_back(e.lead);
  }
  if (n == 0) n = int(g.order.weight.size());
  return ideals::make_ideal(n, std::move(leads));
}

std::vector<Exponents> fiber(const Configuration& c, const IntVector& gamma) {
  if (int(gamma.size()) != c.d()) throw InputError("fiber degree dimension mismatch");
  if (!c.pointed())
    throw InputError("non-pointed configuration: fibers may be infinite");
  IntVector posw = positive_weights(c);
  const RatVector& p = *c.positive;
  Int denom = 1;
  for (const Rat& v : p) denom = lcm_int(denom, v.get_den());
  Rat total_r = dot(p, gamma) * denom;
  std::vector<Exponents> out;
  if (total_r.get_den() != 1) return out;
  Int total = total_r.get_num();
  if (total < 0) return out;

  Exponents cur(c.n(), 0);
  IntVector residual = gamma;
  auto residual_zero = [&residual] {
    for (const Int& x : residual)
      if (x != 0) return false;
    return true;
  };
  // The positive weights make every coordinate bounded by the remaining
  // weight budget; the budget reaches zero exactly on fiber members.
  std::function<void(int, Int)> rec = [&](int pos, Int budget) {
    if (pos == c.n()) {
      if (budget == 0 && residual_zero()) out.push_back(cur);
      return;
    }
    Int cap = budget / posw[pos];
    if (cap > 1000000)
      throw ComputeError("resource error: fiber coordinate bound too large");
    for (Int e = 0; e <= cap; ++e) {
      if (e > 0) {
        for (int i = 0; i < c.d(); ++i) residual[i] -= c.a.at(i, pos);
        cur[pos] = int(e.get_si());
      }
      rec(pos + 1, budget - e * posw[pos]);
    }
    for (int i = 0; i < c.d(); ++i) residual[i] += cap * c.a.at(i, pos);
    cur[pos] = 0;
  };
  rec(0, total);
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

Exponents cheapest_in_fiber(const Configuration& c, const TermOrder& order,
                            const IntVector& gamma) {
  std::vector<Exponents> f = fiber(c, gamma);
  if (f.empty())
    throw ComputeError("no representative: the fiber is empty");
  Exponents best = f.front();
  for (const auto& e : f)
    if (order.less(e, best)) best = e;
  return best;
}

int max_degree(const GroebnerBasis& g) {
  int d = 0;
  for (const auto& e : g.elements)
    d = std::max({d, degree(e.lead), degree(e.trail)});
  return d;
}

std::string format_binomial(const Binomial& b,
                            const std::vector<std::string>& names) {
  return ideals::format_monomial(b.lead, names) + " - " +
         ideals::format_monomial(b.trail, names);
}

}  // namespace dnormal::toric
