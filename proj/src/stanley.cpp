#include "dnormal/stanley.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "dnormal/errors.hpp"

namespace dnormal::stanley {

namespace {

using geometry::FacePartition;
using geometry::Shelling;
using geometry::Triangulation;
using ideals::MonomialIdeal;
using ideals::StandardPair;
using toric::Configuration;
using toric::TermOrder;

std::string face_label(const Face& f) {
  std::string s = "{";
  for (size_t i = 0; i < f.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(f[i] + 1);
  }
  return s + "}";
}

std::string vec_label(const IntVector& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  return s + ")";
}

Triangulation triangulation_of(const SpecialPairs& s) {
  Triangulation t;
  for (const auto& p : s.partitions) t.facets.push_back(p.sigma);
  return t;
}

Exponents face_monomial(int nvars, const Face& q) {
  Exponents m(nvars, 0);
  for (int v : q) m[v] = 1;
  return m;
}

/// Zeroes the exponents on the face's variables.
Exponents project(const Exponents& e, const Face& sigma) {
  Exponents out = e;
  for (int v : sigma) out[v] = 0;
  return out;
}

bool is_squarefree(const Exponents& e) {
  return std::all_of(e.begin(), e.end(), [](int x) { return x <= 1; });
}

/// All monomials of the coset root * K[face variables] of total degree at
/// most cap.
void coset_monomials_up_to(const StanleyPair& p, int cap,
                           std::vector<Exponents>& out) {
  int base = ideals::degree(p.root);
  if (base > cap) return;
  Exponents cur = p.root;
  auto rec = [&](auto&& self, size_t idx, int budget) -> void {
    if (idx == p.facet.size()) {
      out.push_back(cur);
      return;
    }
    int v = p.facet[idx];
    for (int e = 0; e <= budget; ++e) {
      cur[v] = p.root[v] + e;
      self(self, idx + 1, budget - e);
    }
    cur[v] = p.root[v];
  };
  rec(rec, 0, cap - base);
}

}  // namespace

SpecialPairs special_pairs(const Configuration& c, const Triangulation& t,
                           const TermOrder& o) {
  if (t.facets.empty()) throw InputError("triangulation has no facets");
  SpecialPairs s;
  s.nvars = c.n();
  for (const auto& sigma : t.facets) {
    FacePartition part = geometry::face_partition(c, sigma);
    std::vector<SpecialPair> block;
    for (const auto& gamma : geometry::fp_points(c, sigma)) {
      Exponents root = toric::cheapest_in_fiber(c, o, gamma);
      if (!ideals::face_subset(ideals::support(root), part.in))
        throw ComputeError(
            "root " + ideals::format_monomial(root, c.names) +
            " of the parallelepiped point " + vec_label(gamma) + " of facet " +
            face_label(sigma) +
            " has support outside the facet's interior columns; the term "
            "order does not induce this triangulation");
      block.push_back({std::move(root), sigma, gamma});
    }
    std::sort(block.begin(), block.end(),
              [](const SpecialPair& a, const SpecialPair& b) {
                return ideals::canonical_less(a.root, b.root);
              });
    for (size_t i = 0; i + 1 < block.size(); ++i)
      if (block[i].root == block[i + 1].root)
        throw ComputeError(
            "parallelepiped points " + vec_label(block[i].gamma) + " and " +
            vec_label(block[i + 1].gamma) + " of facet " + face_label(sigma) +
            " share the root " +
            ideals::format_monomial(block[i].root, c.names) +
            "; the term order does not induce this triangulation");
    s.partitions.push_back(std::move(part));
    for (auto& p : block) s.pairs.push_back(std::move(p));
  }
  return s;
}

std::vector<StandardPair> as_standard_pairs(const SpecialPairs& s) {
  std::vector<StandardPair> out;
  for (const auto& p : s.pairs) out.push_back({p.root, p.facet});
  std::sort(out.begin(), out.end(),
            [](const StandardPair& a, const StandardPair& b) {
              if (a.face != b.face) return a.face < b.face;
              return ideals::canonical_less(a.root, b.root);
            });
  return out;
}

Face delta_of_root(const SpecialPairs& s, const Exponents& root) {
  std::vector<Face> paired;
  for (const auto& p : s.pairs)
    if (p.root == root) paired.push_back(p.facet);
  if (paired.empty())
    throw InputError(
        "monomial " +
        ideals::format_monomial(root, ideals::default_names(s.nvars)) +
        " is not the root of any special pair");
  std::vector<Face> expected;
  Face supp = ideals::support(root);
  for (const auto& part : s.partitions)
    if (ideals::face_subset(supp, part.in)) expected.push_back(part.sigma);
  if (paired != expected)
    throw ComputeError(
        "facets pairing the root " +
        ideals::format_monomial(root, ideals::default_names(s.nvars)) +
        " are not exactly the facets whose interior columns carry its "
        "support");
  Face acc = paired.front();
  for (size_t i = 1; i < paired.size(); ++i)
    acc = ideals::face_intersection(acc, paired[i]);
  return acc;
}

Exponents shelling_monomial(const SpecialPairs& s, const Exponents& root,
                            const Face& sigma, const Shelling& global) {
  bool present = std::any_of(
      s.pairs.begin(), s.pairs.end(),
      [&](const SpecialPair& p) { return p.root == root && p.facet == sigma; });
  if (!present)
    throw InputError(
        "(" + ideals::format_monomial(root, ideals::default_names(s.nvars)) +
        ", " + face_label(sigma) + ") is not a special pair");
  Face delta = delta_of_root(s, root);
  Shelling local =
      geometry::restricted_shelling(triangulation_of(s), global, delta);
  for (size_t i = 0; i < local.order.size(); ++i)
    if (local.order[i] == sigma) return face_monomial(s.nvars, local.q[i]);
  throw ComputeError("internal error: paired facet missing from its star");
}

std::vector<StanleyPair> stanley_decomposition(const SpecialPairs& s,
                                               const Shelling& global) {
  Triangulation t = triangulation_of(s);
  std::map<Exponents, Shelling> restricted;
  std::vector<StanleyPair> out;
  for (const auto& p : s.pairs) {
    auto it = restricted.find(p.root);
    if (it == restricted.end())
      it = restricted
               .emplace(p.root, geometry::restricted_shelling(
                                    t, global, delta_of_root(s, p.root)))
               .first;
    const Shelling& local = it->second;
    const Face* q = nullptr;
    for (size_t i = 0; i < local.order.size(); ++i)
      if (local.order[i] == p.facet) q = &local.q[i];
    if (!q)
      throw ComputeError("internal error: paired facet missing from its star");
    out.push_back({ideals::mul(p.root, face_monomial(s.nvars, *q)), p.facet,
                   p.root, *q});
  }
  return out;
}

StanleyFiltration algorithm_list(const std::vector<StanleyPair>& d,
                                 const Shelling& global) {
  StanleyFiltration f;
  f.shelling = global.order;
  for (const auto& sigma : global.order) {
    std::vector<StanleyPair> block;
    for (const auto& p : d)
      if (p.facet == sigma) block.push_back(p);
    std::stable_sort(block.begin(), block.end(),
                     [](const StanleyPair& a, const StanleyPair& b) {
                       return ideals::canonical_less(a.base_root, b.base_root);
                     });
    for (auto& p : block) f.pairs.push_back(std::move(p));
    f.block_ends.push_back(int(f.pairs.size()));
  }
  if (f.pairs.size() != d.size())
    throw InputError(
        "the decomposition uses a face that is not in the shelling order");
  return f;
}

CertificateReport verify_filtration(const MonomialIdeal& m,
                                    const StanleyFiltration& f,
                                    int degree_cap) {
  CertificateReport rep;
  rep.subject = "Stanley filtration";
  int cap = degree_cap;
  if (cap < 0) {
    cap = 0;
    for (const auto& g : m.gens) cap = std::max(cap, ideals::degree(g));
    cap += 3;
  }
  auto names = ideals::default_names(m.nvars);
  rep.add("pairs", true, std::to_string(f.pairs.size()));
  rep.add("degree cap", true, std::to_string(cap));
  if (!f.shelling.empty()) {
    std::string order;
    for (const auto& sigma : f.shelling) {
      if (!order.empty()) order += " ";
      order += face_label(sigma);
    }
    rep.add("shelling order", true, order);
  }

  const int r = int(f.pairs.size());
  std::set<Exponents> covered;
  bool disjoint = true;
  std::string dup_detail;
  bool prefixes_ok = true;
  std::string prefix_detail;
  for (int j = 1; j <= r; ++j) {
    std::vector<Exponents> added;
    coset_monomials_up_to(f.pairs[j - 1], cap, added);
    for (const auto& e : added)
      if (!covered.insert(e).second && disjoint) {
        disjoint = false;
        dup_detail = "pair " + std::to_string(j) + " re-covers " +
                     ideals::format_monomial(e, names);
      }
    if (!prefixes_ok) continue;
    std::vector<Exponents> gens = m.gens;
    for (int l = j; l < r; ++l) gens.push_back(f.pairs[l].root);
    MonomialIdeal mj = ideals::make_ideal(m.nvars, std::move(gens));
    auto std_mons = ideals::standard_monomials_up_to(mj, cap);
    std::set<Exponents> expected(std_mons.begin(), std_mons.end());
    if (covered != expected) {
      prefixes_ok = false;
      for (const auto& e : covered)
        if (!expected.count(e)) {
          prefix_detail = "prefix " + std::to_string(j) + ": " +
                          ideals::format_monomial(e, names) +
                          " is covered but lies in the prefix ideal";
          break;
        }
      if (prefix_detail.empty())
        for (const auto& e : expected)
          if (!covered.count(e)) {
            prefix_detail = "prefix " + std::to_string(j) +
                            ": standard monomial " +
                            ideals::format_monomial(e, names) +
                            " is not covered";
            break;
          }
    }
  }
  if (r == 0 && prefixes_ok) {
    auto std_mons = ideals::standard_monomials_up_to(m, cap);
    if (!std_mons.empty()) {
      prefixes_ok = false;
      prefix_detail = "empty filtration misses the standard monomial " +
                      ideals::format_monomial(std_mons.front(), names);
    }
  }
  rep.add("pair cosets are pairwise disjoint", disjoint, dup_detail);
  rep.add("prefixes decompose the intermediate ideals", prefixes_ok,
          prefix_detail);
  return rep;
}

CertificateReport certify_cm(const MonomialIdeal& m, const StanleyFiltration& f,
                             const Triangulation& t, int degree_cap) {
  CertificateReport rep;
  rep.subject = "Cohen-Macaulayness certificate";
  CertificateReport vf = verify_filtration(m, f, degree_cap);
  rep.add("Stanley filtration", vf.pass,
          vf.pass ? std::to_string(f.pairs.size()) + " pairs"
                  : vf.first_failure());
  bool faces_ok = true;
  std::string detail;
  for (const auto& p : f.pairs)
    if (std::find(t.facets.begin(), t.facets.end(), p.facet) ==
        t.facets.end()) {
      faces_ok = false;
      detail = "face " + face_label(p.facet) +
               " is not a facet of the triangulation";
      break;
    }
  rep.add("every face is a facet of the triangulation", faces_ok, detail);
  bool ok = rep.pass;
  rep.add("certificate", ok,
          ok ? "Cohen-Macaulayness certified by Stanley filtration"
             : "no certificate found under the supplied shelling order; this "
               "does not decide Cohen-Macaulayness");
  return rep;
}

GeneratorClassification classify_generators(const Configuration& c,
                                            const Triangulation& t,
                                            const TermOrder& o) {
  if (!c.graded())
    throw InputError("generator classification needs a graded configuration");
  MonomialIdeal j = toric::initial_ideal(toric::toric_groebner(c, o));
  const int d = c.rank;

  std::vector<FacePartition> parts;
  std::vector<MonomialIdeal> local;
  for (const auto& sigma : t.facets) {
    parts.push_back(geometry::face_partition(c, sigma));
    local.push_back(ideals::localize(j, sigma));
  }

  GeneratorClassification out;
  out.report.subject = "generator classification";
  int n_count = 0, out_count = 0, cross_count = 0;
  bool n_identity = true, n_degree = true, out_bounds = true,
       cross_bounds = true;
  std::string n_id_detail, n_deg_detail, out_detail, cross_detail;
  int max_degree = 0;

  for (const auto& gen : j.gens) {
    ClassifiedGenerator cg;
    cg.gen = gen;
    cg.degree = ideals::degree(gen);
    cg.squarefree = is_squarefree(gen);
    max_degree = std::max(max_degree, cg.degree);

    int n_facet = -1, out_facet = -1;
    Exponents n_image, out_image;
    for (size_t i = 0; i < parts.size(); ++i) {
      Exponents img = project(gen, parts[i].sigma);
      const auto& gens = local[i].gens;
      if (std::find(gens.begin(), gens.end(), img) == gens.end()) continue;
      Face supp = ideals::support(img);
      if (ideals::face_subset(supp, parts[i].in)) {
        if (n_facet < 0) {
          n_facet = int(i);
          n_image = img;
        }
      } else if (ideals::degree(img) == 1 && supp.size() == 1 &&
                 ideals::face_subset(supp, parts[i].out)) {
        if (out_facet < 0) {
          out_facet = int(i);
          out_image = img;
        }
      }
    }

    std::string label = ideals::format_monomial(gen, c.names);
    if (n_facet >= 0) {
      cg.cls = GenClass::kNClass;
      cg.facet_index = n_facet;
      cg.image = n_image;
      ++n_count;
      if (gen != n_image && n_identity) {
        n_identity = false;
        n_id_detail = label + " differs from its projection at facet " +
                      face_label(parts[n_facet].sigma);
      }
      if (cg.degree > d && n_degree) {
        n_degree = false;
        n_deg_detail = label + " has degree " + std::to_string(cg.degree);
      }
    } else if (out_facet >= 0) {
      cg.cls = GenClass::kOutClass;
      cg.facet_index = out_facet;
      cg.image = out_image;
      ++out_count;
      if ((!cg.squarefree || cg.degree > d) && out_bounds) {
        out_bounds = false;
        out_detail = label;
      }
    } else {
      cg.cls = GenClass::kCrossClass;
      ++cross_count;
      bool valid = cg.degree == 2 && cg.squarefree;
      if (valid) {
        Face supp = ideals::support(gen);
        bool witnessed = false;
        for (size_t a = 0; a < parts.size() && !witnessed; ++a)
          for (size_t b = 0; b < parts.size() && !witnessed; ++b) {
            if (a == b) continue;
            Face common = ideals::face_intersection(parts[a].in, parts[b].in);
            bool i_ok = ideals::face_subset({supp[0]}, parts[a].in) &&
                        !ideals::face_subset({supp[0]}, common);
            bool j_ok = ideals::face_subset({supp[1]}, parts[b].in) &&
                        !ideals::face_subset({supp[1]}, common);
            witnessed = i_ok && j_ok;
          }
        valid = witnessed;
      }
      if (!valid && cross_bounds) {
        cross_bounds = false;
        cross_detail = label + " fits no class";
      }
    }
    out.generators.push_back(std::move(cg));
  }

  auto& rep = out.report;
  rep.add("class sizes", true,
          "N " + std::to_string(n_count) + ", OUT " +
              std::to_string(out_count) + ", CROSS " +
              std::to_string(cross_count));
  rep.add("N-class generators equal their projections", n_identity,
          n_id_detail);
  rep.add("N-class degree at most " + std::to_string(d), n_degree,
          n_deg_detail);
  rep.add("OUT-class squarefree of degree at most " + std::to_string(d),
          out_bounds, out_detail);
  rep.add("CROSS-class quadratic between two facet interiors", cross_bounds,
          cross_detail);
  rep.add("maximum generator degree at most " + std::to_string(d),
          max_degree <= d, "max degree " + std::to_string(max_degree));
  return out;
}

}  // namespace dnormal::stanley
