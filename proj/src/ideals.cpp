#include "dnormal/ideals.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "dnormal/errors.hpp"

namespace dnormal::ideals {

int degree(const Exponents& e) {
  int d = 0;
  for (int v : e) d += v;
  return d;
}

bool divides(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Exponents mul(const Exponents& a, const Exponents& b) {
  Exponents r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Exponents quotient(const Exponents& b, const Exponents& a) {
  Exponents r(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    r[i] = b[i] - a[i];
    if (r[i] < 0) throw InputError("monomial quotient is not a monomial");
  }
  return r;
}

Face support(const Exponents& e) {
  Face f;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] > 0) f.push_back(int(i));
  return f;
}

bool is_one(const Exponents& e) {
  for (int v : e)
    if (v != 0) return false;
  return true;
}

bool face_subset(const Face& a, const Face& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

Face face_union(const Face& a, const Face& b) {
  Face r;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

Face face_intersection(const Face& a, const Face& b) {
  Face r;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(r));
  return r;
}

Face face_complement(const Face& f, int nvars) {
  Face r;
  std::size_t k = 0;
  for (int i = 0; i < nvars; ++i) {
    if (k < f.size() && f[k] == i) { ++k; continue; }
    r.push_back(i);
  }
  return r;
}

bool canonical_less(const Exponents& a, const Exponents& b) {
  int da = degree(a), db = degree(b);
  if (da != db) return da < db;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] > b[i];
  return false;
}

MonomialIdeal make_ideal(int nvars, std::vector<Exponents> gens) {
  for (const auto& g : gens)
    if (int(g.size()) != nvars) throw InputError("generator dimension mismatch");
  std::vector<Exponents> minimal;
  std::sort(gens.begin(), gens.end(), canonical_less);
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  for (const auto& g : gens) {
    bool redundant = false;
    for (const auto& m : minimal)
      if (divides(m, g)) { redundant = true; break; }
    if (!redundant) minimal.push_back(g);
  }
  return {nvars, std::move(minimal)};
}

bool contains(const MonomialIdeal& m, const Exponents& e) {
  for (const auto& g : m.gens)
    if (divides(g, e)) return true;
  return false;
}

bool is_unit(const MonomialIdeal& m) {
  return !m.gens.empty() && is_one(m.gens.front());
}

bool is_zero(const MonomialIdeal& m) { return m.gens.empty(); }

MonomialIdeal localize(const MonomialIdeal& m, const Face& face) {
  std::vector<Exponents> gens = m.gens;
  for (auto& g : gens)
    for (int i : face) g[i] = 0;
  return make_ideal(m.nvars, std::move(gens));
}

MonomialIdeal radical(const MonomialIdeal& m) {
  std::vector<Exponents> gens = m.gens;
  for (auto& g : gens)
    for (auto& v : g) v = v > 0 ? 1 : 0;
  return make_ideal(m.nvars, std::move(gens));
}

std::vector<Exponents> standard_monomials_up_to(const MonomialIdeal& m,
                                                int degree_cap) {
  std::vector<Exponents> out;
  Exponents cur(m.nvars, 0);
  // Enumerate exponent vectors of degree <= cap position by position,
  // pruning once the partial monomial already lies in the ideal.
  auto rec = [&](auto&& self, int pos, int remaining) -> void {
    if (contains(m, cur)) return;
    if (pos == m.nvars) {
      out.push_back(cur);
      return;
    }
    for (int e = 0; e <= remaining; ++e) {
      cur[pos] = e;
      if (e > 0 && contains(m, cur)) break;  // larger e stays inside
      self(self, pos + 1, remaining - e);
    }
    cur[pos] = 0;
  };
  rec(rec, 0, degree_cap);
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

bool pair_covers(const StandardPair& big, const StandardPair& small) {
  if (!divides(big.root, small.root)) return false;
  if (!face_subset(small.face, big.face)) return false;
  Face extra = support(quotient(small.root, big.root));
  return face_subset(extra, big.face);
}

namespace {

/// Enumerates the admissible pairs (u, face) with u bounded by the maximal
/// generator exponents; every standard pair lies within this bound.
void admissible_roots(const MonomialIdeal& local, const Face& face,
                      const Exponents& bound, std::vector<Exponents>& out) {
  Exponents cur(local.nvars, 0);
  std::vector<bool> in_face(local.nvars, false);
  for (int i : face) in_face[i] = true;
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos == local.nvars) {
      out.push_back(cur);
      return;
    }
    if (in_face[pos]) {
      self(self, pos + 1);
      return;
    }
    for (int e = 0; e <= bound[pos]; ++e) {
      cur[pos] = e;
      if (contains(local, cur)) break;  // multiples stay inside
      self(self, pos + 1);
    }
    cur[pos] = 0;
  };
  rec(rec, 0);
}

std::vector<StandardPair> maximal_pairs(std::vector<StandardPair> cand) {
  std::vector<StandardPair> out;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    bool covered = false;
    for (std::size_t j = 0; j < cand.size() && !covered; ++j)
      if (j != i && pair_covers(cand[j], cand[i]) &&
          !(pair_covers(cand[i], cand[j])))
        covered = true;
    if (!covered) out.push_back(cand[i]);
  }
  std::sort(out.begin(), out.end(), [](const StandardPair& a,
                                       const StandardPair& b) {
    if (a.face != b.face) return a.face < b.face;
    return canonical_less(a.root, b.root);
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<StandardPair> pairs_over_faces(const MonomialIdeal& m,
                                           const std::vector<Face>& faces) {
  Exponents bound(m.nvars, 0);
  for (const auto& g : m.gens)
    for (int i = 0; i < m.nvars; ++i)
      bound[i] = std::max(bound[i], std::max(g[i] - 1, 0));

  std::vector<StandardPair> cand;
  for (const auto& face : faces) {
    MonomialIdeal local = localize(m, face);
    if (is_unit(local)) continue;  // no admissible pair on this face
    std::vector<Exponents> roots;
    admissible_roots(local, face, bound, roots);
    for (auto& r : roots) cand.push_back({std::move(r), face});
  }
  return maximal_pairs(std::move(cand));
}

}  // namespace

std::vector<StandardPair> standard_pairs(const MonomialIdeal& m) {
  if (m.nvars > 16)
    throw ComputeError(
        "standard pairs over all faces need at most 16 variables; "
        "restrict the faces instead");
  std::vector<Face> faces;
  for (unsigned mask = 0; mask < (1u << m.nvars); ++mask) {
    Face f;
    for (int i = 0; i < m.nvars; ++i)
      if (mask & (1u << i)) f.push_back(i);
    faces.push_back(std::move(f));
  }
  return pairs_over_faces(m, faces);
}

std::vector<StandardPair> standard_pairs(
    const MonomialIdeal& m, const std::vector<Face>& allowed_faces) {
  std::set<Face> faces;
  for (const auto& base : allowed_faces) {
    if (int(base.size()) > 24) throw ComputeError("face too large to scan");
    for (unsigned mask = 0; mask < (1u << base.size()); ++mask) {
      Face f;
      for (std::size_t i = 0; i < base.size(); ++i)
        if (mask & (1u << i)) f.push_back(base[i]);
      faces.insert(std::move(f));
    }
  }
  return pairs_over_faces(m, {faces.begin(), faces.end()});
}

std::vector<Face> associated_faces(const std::vector<StandardPair>& pairs) {
  std::set<Face> faces;
  for (const auto& p : pairs) faces.insert(p.face);
  return {faces.begin(), faces.end()};
}

std::vector<Face> associated_faces(const MonomialIdeal& m) {
  return associated_faces(standard_pairs(m));
}

bool embedded_prime_free(const std::vector<StandardPair>& pairs) {
  std::set<Face> with_unit_root;
  for (const auto& p : pairs)
    if (is_one(p.root)) with_unit_root.insert(p.face);
  for (const auto& p : pairs)
    if (!with_unit_root.count(p.face)) return false;
  return true;
}

bool embedded_prime_free(const MonomialIdeal& m) {
  return embedded_prime_free(standard_pairs(m));
}

std::vector<std::string> default_names(int n) {
  std::vector<std::string> names;
  if (n <= 26) {
    for (int i = 0; i < n; ++i) names.push_back(std::string(1, char('a' + i)));
  } else {
    for (int i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
  }
  return names;
}

std::string format_monomial(const Exponents& e,
                            const std::vector<std::string>& names) {
  if (e.size() != names.size()) throw InputError("name count mismatch");
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += names[i];
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s.empty() ? "1" : s;
}

Exponents parse_monomial(const std::string& text,
                         const std::vector<std::string>& names) {
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < names.size(); ++i) index[names[i]] = int(i);
  Exponents e(names.size(), 0);
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(unsigned(text[pos]))) ++pos;
  };
  skip_ws();
  if (pos < text.size() && text[pos] == '1' &&
      (pos + 1 == text.size() || !std::isalnum(unsigned(text[pos + 1])))) {
    ++pos;
    skip_ws();
    if (pos != text.size()) throw InputError("trailing text after monomial '1'");
    return e;
  }
  bool expect_factor = true;
  while (pos < text.size()) {
    skip_ws();
    if (pos >= text.size()) break;
    if (text[pos] == '*') {
      if (expect_factor) throw InputError("unexpected '*' in monomial");
      ++pos;
      expect_factor = true;
      continue;
    }
    // Longest-match variable name.
    int var = -1;
    std::size_t best_len = 0;
    for (const auto& [name, idx] : index) {
      if (name.size() > best_len && text.compare(pos, name.size(), name) == 0) {
        var = idx;
        best_len = name.size();
      }
    }
    if (var < 0)
      throw InputError("unknown variable in monomial at '" +
                       text.substr(pos) + "'");
    pos += best_len;
    int exp = 1;
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      if (pos >= text.size() || !std::isdigit(unsigned(text[pos])))
        throw InputError("missing exponent after '^'");
      exp = 0;
      while (pos < text.size() && std::isdigit(unsigned(text[pos]))) {
        exp = exp * 10 + (text[pos] - '0');
        if (exp > 1000000) throw InputError("exponent too large");
        ++pos;
      }
    }
    e[var] += exp;
    expect_factor = false;
  }
  if (expect_factor) throw InputError("empty monomial");
  return e;
}

}  // namespace dnormal::ideals
