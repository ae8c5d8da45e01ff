#include "dnormal/linalg.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "dnormal/errors.hpp"

namespace dnormal::linalg {

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(std::initializer_list<std::initializer_list<long>> rws) {
  IntMatrix m(int(rws.size()), rws.size() ? int(rws.begin()->size()) : 0);
  int r = 0;
  for (const auto& row : rws) {
    if (int(row.size()) != m.cols) throw InputError("ragged matrix literal");
    int c = 0;
    for (long v : row) m.at(r, c++) = v;
    ++r;
  }
  return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVector>& columns, int dim) {
  IntMatrix m(dim, int(columns.size()));
  for (int j = 0; j < int(columns.size()); ++j) {
    if (int(columns[j].size()) != dim) throw InputError("column dimension mismatch");
    for (int i = 0; i < dim; ++i) m.at(i, j) = columns[j][i];
  }
  return m;
}

IntVector IntMatrix::column(int c) const {
  IntVector v(rows);
  for (int i = 0; i < rows; ++i) v[i] = at(i, c);
  return v;
}

IntVector IntMatrix::row(int r) const {
  IntVector v(cols);
  for (int j = 0; j < cols; ++j) v[j] = at(r, j);
  return v;
}

IntMatrix IntMatrix::select_columns(const std::vector<int>& idx) const {
  IntMatrix m(rows, int(idx.size()));
  for (int j = 0; j < int(idx.size()); ++j) {
    if (idx[j] < 0 || idx[j] >= cols) throw InputError("column index out of range");
    for (int i = 0; i < rows; ++i) m.at(i, j) = at(i, idx[j]);
  }
  return m;
}

IntMatrix IntMatrix::select_rows(const std::vector<int>& idx) const {
  IntMatrix m(int(idx.size()), cols);
  for (int i = 0; i < int(idx.size()); ++i) {
    if (idx[i] < 0 || idx[i] >= rows) throw InputError("row index out of range");
    for (int j = 0; j < cols; ++j) m.at(i, j) = at(idx[i], j);
  }
  return m;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix m(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(j, i) = at(i, j);
  return m;
}

IntMatrix mul(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols != b.rows) throw InputError("matrix product shape mismatch");
  IntMatrix m(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      const Int& aik = a.at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < b.cols; ++j) m.at(i, j) += aik * b.at(k, j);
    }
  return m;
}

IntVector mul(const IntMatrix& a, const IntVector& v) {
  if (a.cols != int(v.size())) throw InputError("matrix-vector shape mismatch");
  IntVector r(a.rows, Int(0));
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j)
      if (a.at(i, j) != 0) r[i] += a.at(i, j) * v[j];
  return r;
}

Int det(const IntMatrix& m) {
  if (m.rows != m.cols) throw InputError("determinant of non-square matrix");
  int n = m.rows;
  if (n == 0) return 1;
  IntMatrix a = m;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (a.at(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (a.at(i, k) != 0) { p = i; break; }
      if (p < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        a.at(i, j) = div_exact(a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j), prev);
    prev = a.at(k, k);
  }
  return sign > 0 ? a.at(n - 1, n - 1) : Int(-a.at(n - 1, n - 1));
}

namespace {

void add_column_multiple(IntMatrix& m, int dst, int src, const Int& q) {
  if (q == 0) return;
  for (int i = 0; i < m.rows; ++i) m.at(i, dst) -= q * m.at(i, src);
}

void swap_columns(IntMatrix& m, int a, int b) {
  if (a == b) return;
  for (int i = 0; i < m.rows; ++i) std::swap(m.at(i, a), m.at(i, b));
}

void negate_column(IntMatrix& m, int c) {
  for (int i = 0; i < m.rows; ++i) m.at(i, c) = -m.at(i, c);
}

}  // namespace

HnfResult hnf(const IntMatrix& m) {
  HnfResult res;
  res.h = m;
  res.u = IntMatrix::identity(m.cols);
  IntMatrix& h = res.h;
  IntMatrix& u = res.u;
  int c = 0;
  for (int r = 0; r < m.rows && c < m.cols; ++r) {
    // Euclidean column reduction on row r over columns >= c.
    for (;;) {
      int best = -1;
      int nonzero = 0;
      for (int j = c; j < m.cols; ++j) {
        if (h.at(r, j) == 0) continue;
        ++nonzero;
        if (best < 0 || abs_int(h.at(r, j)) < abs_int(h.at(r, best))) best = j;
      }
      if (nonzero == 0) { best = -1; break; }
      if (nonzero == 1) {
        swap_columns(h, c, best);
        swap_columns(u, c, best);
        break;
      }
      for (int j = c; j < m.cols; ++j) {
        if (j == best || h.at(r, j) == 0) continue;
        Int q = floor_div(h.at(r, j), h.at(r, best));
        add_column_multiple(h, j, best, q);
        add_column_multiple(u, j, best, q);
      }
    }
    if (h.at(r, c) == 0) continue;  // no pivot in this row
    if (h.at(r, c) < 0) {
      negate_column(h, c);
      negate_column(u, c);
    }
    // Reduce entries left of the pivot into [0, pivot).
    for (int k = 0; k < c; ++k) {
      Int q = floor_div(h.at(r, k), h.at(r, c));
      add_column_multiple(h, k, c, q);
      add_column_multiple(u, k, c, q);
    }
    res.pivot_rows.push_back(r);
    ++c;
  }
  res.rank = c;
  return res;
}

int rank(const IntMatrix& m) { return hnf(m).rank; }

Int lattice_index(const IntMatrix& m) {
  // Discard all-zero rows, then demand full row rank.
  std::vector<int> live;
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      if (m.at(i, j) != 0) { live.push_back(i); break; }
  if (live.empty()) throw ComputeError("rank error: zero matrix has no lattice index");
  IntMatrix t = m.select_rows(live);
  HnfResult r = hnf(t);
  if (r.rank < t.rows)
    throw ComputeError("rank error: matrix is not of full row rank");
  Int idx = 1;
  for (int i = 0; i < r.rank; ++i) idx *= r.h.at(i, i);
  return idx;
}

std::optional<RatVector> solve(const IntMatrix& a, const RatVector& b) {
  if (int(b.size()) != a.rows) throw InputError("solve: rhs dimension mismatch");
  std::vector<RatVector> rows(a.rows, RatVector(a.cols));
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) rows[i][j] = Rat(a.at(i, j));
  return solve_rows(rows, b);
}

std::optional<RatVector> solve_rows(const std::vector<RatVector>& rows_in,
                                    const RatVector& rhs_in) {
  std::vector<RatVector> a = rows_in;
  RatVector b = rhs_in;
  int m = int(a.size());
  int n = m ? int(a[0].size()) : 0;
  for (const auto& r : a)
    if (int(r.size()) != n) throw InputError("solve: ragged rows");
  if (int(b.size()) != m) throw InputError("solve: rhs dimension mismatch");

  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < n && r < m; ++c) {
    int p = -1;
    for (int i = r; i < m; ++i)
      if (a[i][c] != 0) { p = i; break; }
    if (p < 0) continue;
    std::swap(a[r], a[p]);
    std::swap(b[r], b[p]);
    for (int i = 0; i < m; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rat f = a[i][c] / a[r][c];
      for (int j = c; j < n; ++j) a[i][j] -= f * a[r][j];
      b[i] -= f * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (int i = r; i < m; ++i)
    if (b[i] != 0) return std::nullopt;
  RatVector x(n, Rat(0));
  for (int i = 0; i < r; ++i) x[pivot_col[i]] = b[i] / a[i][pivot_col[i]];
  return x;
}

void LinearSystem::add(RatVector coef, Rel rel, Rat rhs) {
  if (int(coef.size()) != dim) throw InputError("constraint dimension mismatch");
  constraints.push_back({std::move(coef), rel, std::move(rhs)});
}

namespace {

// Internal inequality c.x (<= | <) rhs.
struct Ineq {
  RatVector c;
  bool strict = false;
  Rat rhs;
};

// Scale so the first nonzero coefficient has absolute value 1; used as a
// canonical form for redundancy pruning.
std::string ineq_key(const Ineq& q) {
  std::string s;
  for (const auto& v : q.c) {
    s += v.get_str();
    s += ',';
  }
  return s;
}

Ineq normalized(Ineq q) {
  for (const auto& v : q.c) {
    if (v != 0) {
      Rat scale = abs(v);
      for (auto& w : q.c) w /= scale;
      q.rhs /= scale;
      break;
    }
  }
  return q;
}

bool satisfied(const LinearConstraint& c, const RatVector& x) {
  Rat lhs(0);
  for (std::size_t i = 0; i < c.coef.size(); ++i) lhs += c.coef[i] * x[i];
  switch (c.rel) {
    case Rel::Le: return lhs <= c.rhs;
    case Rel::Lt: return lhs < c.rhs;
    case Rel::Ge: return lhs >= c.rhs;
    case Rel::Gt: return lhs > c.rhs;
    case Rel::Eq: return lhs == c.rhs;
  }
  return false;
}

}  // namespace

Feasibility feasible(const LinearSystem& sys) {
  const int n = sys.dim;

  // Split into equalities and <=/< inequalities.
  struct Eq { RatVector c; Rat rhs; };
  std::vector<Eq> eqs;
  std::vector<Ineq> ineqs;
  for (const auto& c : sys.constraints) {
    switch (c.rel) {
      case Rel::Eq:
        eqs.push_back({c.coef, c.rhs});
        break;
      case Rel::Le:
        ineqs.push_back({c.coef, false, c.rhs});
        break;
      case Rel::Lt:
        ineqs.push_back({c.coef, true, c.rhs});
        break;
      case Rel::Ge: {
        RatVector neg(c.coef.size());
        for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = -c.coef[i];
        ineqs.push_back({std::move(neg), false, Rat(-c.rhs)});
        break;
      }
      case Rel::Gt: {
        RatVector neg(c.coef.size());
        for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = -c.coef[i];
        ineqs.push_back({std::move(neg), true, Rat(-c.rhs)});
        break;
      }
    }
  }

  // Substitute equalities away: x_k = (rhs - sum_{j != k} c_j x_j) / c_k.
  struct Subst { int var; RatVector expr; Rat constant; };  // x_var = constant + expr.x
  std::vector<Subst> chain;
  while (!eqs.empty()) {
    Eq eq = std::move(eqs.back());
    eqs.pop_back();
    int k = -1;
    for (int j = 0; j < n; ++j)
      if (eq.c[j] != 0) { k = j; break; }
    if (k < 0) {
      if (eq.rhs != 0) return {};  // 0 == nonzero
      continue;
    }
    Subst s;
    s.var = k;
    s.expr.assign(n, Rat(0));
    Rat ck = eq.c[k];
    for (int j = 0; j < n; ++j)
      if (j != k) s.expr[j] = -eq.c[j] / ck;
    s.constant = eq.rhs / ck;
    auto substitute = [&](RatVector& c, Rat& rhs) {
      Rat f = c[k];
      if (f == 0) return;
      c[k] = 0;
      for (int j = 0; j < n; ++j) c[j] += f * s.expr[j];
      rhs -= f * s.constant;
    };
    for (auto& e : eqs) substitute(e.c, e.rhs);
    for (auto& q : ineqs) substitute(q.c, q.rhs);
    chain.push_back(std::move(s));
  }

  // Fourier-Motzkin elimination with strictness tracking.
  auto prune = [&](std::vector<Ineq>& list) -> bool {
    std::map<std::string, Ineq> best;
    for (auto& raw : list) {
      Ineq q = normalized(std::move(raw));
      bool constant = true;
      for (const auto& v : q.c)
        if (v != 0) { constant = false; break; }
      if (constant) {
        if (q.strict ? !(Rat(0) < q.rhs) : !(Rat(0) <= q.rhs)) return false;
        continue;
      }
      std::string key = ineq_key(q);
      auto it = best.find(key);
      if (it == best.end()) {
        best.emplace(std::move(key), std::move(q));
      } else {
        Ineq& old = it->second;
        if (q.rhs < old.rhs || (q.rhs == old.rhs && q.strict && !old.strict))
          old = std::move(q);
      }
    }
    list.clear();
    for (auto& [k, v] : best) list.push_back(std::move(v));
    return true;
  };

  if (!prune(ineqs)) return {};

  struct Elimination {
    int var;
    std::vector<Ineq> uppers;  // coefficient on var > 0
    std::vector<Ineq> lowers;  // coefficient on var < 0
  };
  std::vector<Elimination> elims;
  std::vector<bool> eliminated(n, false);
  for (const auto& s : chain) eliminated[s.var] = true;

  for (;;) {
    // Pick the live variable minimizing |P| * |N|.
    int bestVar = -1;
    long bestCost = 0;
    for (int v = 0; v < n; ++v) {
      if (eliminated[v]) continue;
      long p = 0, q = 0;
      for (const auto& iq : ineqs) {
        if (iq.c[v] > 0) ++p;
        else if (iq.c[v] < 0) ++q;
      }
      if (p + q == 0) continue;
      long cost = p * q;
      if (bestVar < 0 || cost < bestCost) { bestVar = v; bestCost = cost; }
    }
    if (bestVar < 0) break;

    Elimination e;
    e.var = bestVar;
    std::vector<Ineq> rest;
    for (auto& iq : ineqs) {
      if (iq.c[bestVar] > 0) e.uppers.push_back(std::move(iq));
      else if (iq.c[bestVar] < 0) e.lowers.push_back(std::move(iq));
      else rest.push_back(std::move(iq));
    }
    for (const auto& up : e.uppers)
      for (const auto& lo : e.lowers) {
        // up: a x_v + r(x) <= bu   (a > 0)  =>  x_v <= (bu - r)/a
        // lo: -c x_v + s(x) <= bl  (c > 0)  =>  x_v >= (s - bl)/(-c)... combine:
        Rat a = up.c[bestVar];
        Rat c = -lo.c[bestVar];
        Ineq comb;
        comb.c.assign(n, Rat(0));
        for (int j = 0; j < n; ++j) comb.c[j] = c * up.c[j] + a * lo.c[j];
        comb.rhs = c * up.rhs + a * lo.rhs;
        comb.strict = up.strict || lo.strict;
        rest.push_back(std::move(comb));
      }
    ineqs = std::move(rest);
    if (!prune(ineqs)) return {};
    eliminated[bestVar] = true;
    elims.push_back(std::move(e));
    if (ineqs.size() > 200000)
      throw ComputeError("resource error: feasibility elimination exceeded budget");
  }

  // Feasible: reconstruct a witness in reverse elimination order.
  RatVector x(n, Rat(0));
  for (auto it = elims.rbegin(); it != elims.rend(); ++it) {
    const Elimination& e = *it;
    bool has_lo = false, has_hi = false;
    Rat lo, hi;
    auto residual = [&](const Ineq& q) {
      Rat r = q.rhs;
      for (int j = 0; j < n; ++j)
        if (j != e.var && q.c[j] != 0) r -= q.c[j] * x[j];
      return r;
    };
    for (const auto& q : e.uppers) {
      Rat bound = residual(q) / q.c[e.var];
      if (!has_hi || bound < hi) { hi = bound; has_hi = true; }
    }
    for (const auto& q : e.lowers) {
      Rat bound = residual(q) / q.c[e.var];  // c[var] < 0 flips the inequality
      if (!has_lo || bound > lo) { lo = bound; has_lo = true; }
    }
    // If both bounds meet, they must both be weak (a strict combination would
    // have made the eliminated system infeasible at this point), so lo works.
    if (has_lo && has_hi)
      x[e.var] = lo < hi ? Rat((lo + hi) / 2) : lo;
    else if (has_lo)
      x[e.var] = lo + 1;
    else if (has_hi)
      x[e.var] = hi - 1;
  }
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    Rat v = it->constant;
    for (int j = 0; j < n; ++j)
      if (it->expr[j] != 0) v += it->expr[j] * x[j];
    x[it->var] = v;
  }

  for (const auto& c : sys.constraints)
    if (!satisfied(c, x))
      throw ComputeError("internal error: feasibility witness failed verification");
  return {true, std::move(x)};
}

}  // namespace dnormal::linalg
