#include "dnormal/cli.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dnormal/errors.hpp"
#include "dnormal/families.hpp"
#include "dnormal/geometry.hpp"
#include "dnormal/ideals.hpp"
#include "dnormal/report.hpp"
#include "dnormal/stanley.hpp"

namespace dnormal::cli {
namespace {

using nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Token parsing
// ---------------------------------------------------------------------------

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ',')) out.push_back(trim(cur));
  return out;
}

Int parse_big(const std::string& tok, const std::string& context) {
  std::size_t k = (!tok.empty() && tok[0] == '-') ? 1 : 0;
  bool ok = k < tok.size();
  for (; ok && k < tok.size(); ++k)
    ok = std::isdigit(static_cast<unsigned char>(tok[k])) != 0;
  if (!ok)
    throw InputError(context + ": '" + tok + "' is not an integer");
  return Int(tok);
}

int parse_small(const std::string& tok, const std::string& context) {
  Int v = parse_big(tok, context);
  if (!v.fits_sint_p())
    throw InputError(context + ": '" + tok + "' is out of range");
  return static_cast<int>(v.get_si());
}

IntVector parse_int_csv(const std::string& s, const std::string& context) {
  IntVector out;
  for (const auto& tok : split_csv(s)) out.push_back(parse_big(tok, context));
  return out;
}

std::string fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

// ---------------------------------------------------------------------------
// JSON rendering
// ---------------------------------------------------------------------------

ordered_json json_int(const Int& v) {
  if (v.fits_slong_p()) return ordered_json(v.get_si());
  return ordered_json(v.get_str());
}

ordered_json json_vec(const IntVector& v) {
  auto a = ordered_json::array();
  for (const Int& x : v) a.push_back(json_int(x));
  return a;
}

ordered_json json_face(const ideals::Face& f) {
  auto a = ordered_json::array();
  for (int i : f) a.push_back(i + 1);  // 1-based in all printed output
  return a;
}

ordered_json json_faces(const std::vector<ideals::Face>& fs) {
  auto a = ordered_json::array();
  for (const auto& f : fs) a.push_back(json_face(f));
  return a;
}

ordered_json json_report(const CertificateReport& r) {
  ordered_json j;
  j["subject"] = r.subject;
  j["pass"] = r.pass;
  auto items = ordered_json::array();
  for (const auto& it : r.items) {
    ordered_json ji;
    ji["label"] = it.label;
    ji["pass"] = it.pass;
    if (!it.detail.empty()) ji["detail"] = it.detail;
    items.push_back(ji);
  }
  j["items"] = items;
  return j;
}

// ---------------------------------------------------------------------------
// Inputs and orders
// ---------------------------------------------------------------------------

struct LoadedInput {
  std::string display;  // file name without directories
  std::string digest;
  ConfigFile file;
  toric::Configuration config;
};

LoadedInput load_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string bytes = buf.str();
  LoadedInput li;
  li.display = std::filesystem::path(path).filename().string();
  li.digest = fnv1a64(bytes);
  std::istringstream s(bytes);
  li.file = parse_config(s, li.display);
  li.config = to_configuration(li.file);
  return li;
}

struct Options {
  std::string input;
  std::string weight_csv;
  std::string tiebreak_csv;
  int degree_cap = 6;
  int threads = 1;
  bool timings = false;
  // family
  std::string kind;
  std::string v_csv;
  std::string edges_path;
  std::string out_dir = ".";
  int d_max = 8;
};

std::optional<IntVector> resolve_weight(const LoadedInput& li,
                                        const Options& opt) {
  if (!opt.weight_csv.empty()) {
    IntVector w = parse_int_csv(opt.weight_csv, "--weight");
    if (static_cast<int>(w.size()) != li.config.n())
      throw InputError("--weight needs " + std::to_string(li.config.n()) +
                       " entries, found " + std::to_string(w.size()));
    return w;
  }
  return li.file.weight;
}

IntVector require_weight(const LoadedInput& li, const Options& opt) {
  auto w = resolve_weight(li, opt);
  if (!w)
    throw InputError(
        "a weight is required: add a 'weight:' line to the file or pass "
        "--weight");
  return *w;
}

std::vector<int> names_to_indices(const std::vector<std::string>& picked,
                                  const std::vector<std::string>& names) {
  std::vector<int> idx;
  idx.reserve(picked.size());
  for (const auto& name : picked) {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end())
      throw InputError("unknown variable name '" + name + "' in tiebreak");
    idx.push_back(static_cast<int>(it - names.begin()));
  }
  return idx;
}

toric::TermOrder resolve_order(const LoadedInput& li, const Options& opt) {
  auto w = resolve_weight(li, opt);
  std::vector<std::string> tb = opt.tiebreak_csv.empty()
                                    ? li.file.tiebreak
                                    : split_csv(opt.tiebreak_csv);
  std::vector<int> idx =
      tb.empty() ? std::vector<int>{} : names_to_indices(tb, li.config.names);
  return toric::make_order(li.config.n(), w.value_or(IntVector{}),
                           std::move(idx));
}

ordered_json base_report(const std::string& command, const LoadedInput* li) {
  ordered_json rep;
  rep["command"] = command;
  rep["input"] = li ? ordered_json(li->display) : ordered_json(nullptr);
  rep["input_digest"] = li ? ordered_json(li->digest) : ordered_json(nullptr);
  return rep;
}

ordered_json order_json(const toric::TermOrder& o,
                        const std::vector<std::string>& names) {
  ordered_json j;
  j["weight"] = json_vec(o.weight);
  auto tb = ordered_json::array();
  for (int i : o.tiebreak) tb.push_back(names[i]);
  j["tiebreak"] = tb;
  return j;
}

// ---------------------------------------------------------------------------
// Shared computation steps
// ---------------------------------------------------------------------------

/// Compares the special pairs with the standard pairs of the initial ideal
/// (the construction can only disagree when a facet has normalized volume at
/// least two and the order is unsuitable, so this is checked explicitly).
CertificateReport pairs_agreement(const ideals::MonomialIdeal& initial,
                                  const stanley::SpecialPairs& sp) {
  CertificateReport r;
  r.subject = "special pairs";
  auto got = stanley::as_standard_pairs(sp);
  auto want = ideals::standard_pairs(initial);
  auto key_less = [](const ideals::StandardPair& x,
                     const ideals::StandardPair& y) {
    if (x.face != y.face) return x.face < y.face;
    return x.root < y.root;
  };
  std::sort(got.begin(), got.end(), key_less);
  std::sort(want.begin(), want.end(), key_less);
  if (got == want) {
    r.add("agree with the standard pairs of the initial ideal", true,
          std::to_string(want.size()) + " pairs");
  } else if (got.size() != want.size()) {
    r.add("agree with the standard pairs of the initial ideal", false,
          "expected " + std::to_string(want.size()) + " pairs, computed " +
              std::to_string(got.size()));
  } else {
    std::size_t i = 0;
    while (i < got.size() && got[i] == want[i]) ++i;
    r.add("agree with the standard pairs of the initial ideal", false,
          "pair " + std::to_string(i + 1) + " differs");
  }
  return r;
}

struct StanleyRun {
  geometry::Triangulation t;
  CertificateReport dn;
  bool dn_ok = false;
  toric::GroebnerBasis gb;
  ideals::MonomialIdeal initial;
  stanley::SpecialPairs sp;
  std::optional<CertificateReport> agreement;  // only when n <= 16
  geometry::Shelling shell;
  stanley::StanleyFiltration fil;
};

StanleyRun run_stanley(const LoadedInput& li, const IntVector& w,
                       const toric::TermOrder& order) {
  StanleyRun r;
  r.t = geometry::regular_triangulation(li.config, w);
  r.dn = geometry::is_delta_normal(li.config, r.t);
  r.dn_ok = r.dn.pass;
  if (!r.dn_ok) return r;
  r.gb = toric::toric_groebner(li.config, order);
  r.initial = toric::initial_ideal(r.gb);
  r.sp = stanley::special_pairs(li.config, r.t, order);
  if (li.config.n() <= 16) r.agreement = pairs_agreement(r.initial, r.sp);
  r.shell = geometry::find_shelling(r.t);
  r.fil = stanley::algorithm_list(stanley::stanley_decomposition(r.sp, r.shell),
                                  r.shell);
  return r;
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

void fill_groebner(ordered_json& rep, const LoadedInput& li,
                   const toric::TermOrder& order) {
  auto gb = toric::toric_groebner(li.config, order);
  ordered_json results;
  results["variables"] = li.config.names;
  results["order"] = order_json(order, li.config.names);
  results["generator_count"] = static_cast<int>(gb.elements.size());
  results["max_degree"] = toric::max_degree(gb);
  auto gens = ordered_json::array();
  for (const auto& b : gb.elements)
    gens.push_back(toric::format_binomial(b, li.config.names));
  results["generators"] = gens;
  rep["results"] = results;
  rep["certificates"] = ordered_json::array();
}

void fill_triangulate(ordered_json& rep, const LoadedInput& li,
                      const IntVector& w) {
  auto t = geometry::regular_triangulation(li.config, w);
  ordered_json results;
  results["weight"] = json_vec(w);
  results["facet_count"] = static_cast<int>(t.facets.size());
  results["facets"] = json_faces(t.facets);
  auto vols = ordered_json::array();
  bool unimodular = true;
  for (const auto& f : t.facets) {
    Int v = geometry::normalized_volume(li.config, f);
    unimodular = unimodular && v == 1;
    vols.push_back(json_int(v));
  }
  results["volumes"] = vols;
  results["unimodular"] = unimodular;
  results["verified"] = geometry::is_triangulation(li.config, t);
  rep["results"] = results;
  rep["certificates"] = ordered_json::array();
}

void fill_standard_pairs(ordered_json& rep, const LoadedInput& li,
                         const toric::TermOrder& order) {
  auto gb = toric::toric_groebner(li.config, order);
  auto initial = toric::initial_ideal(gb);
  auto pairs = ideals::standard_pairs(initial);
  ordered_json results;
  ordered_json ideal;
  ideal["generator_count"] = static_cast<int>(initial.gens.size());
  auto gens = ordered_json::array();
  for (const auto& g : initial.gens)
    gens.push_back(ideals::format_monomial(g, li.config.names));
  ideal["generators"] = gens;
  results["initial_ideal"] = ideal;
  results["pair_count"] = static_cast<int>(pairs.size());
  auto arr = ordered_json::array();
  for (const auto& p : pairs) {
    ordered_json jp;
    jp["root"] = ideals::format_monomial(p.root, li.config.names);
    jp["face"] = json_face(p.face);
    arr.push_back(jp);
  }
  results["pairs"] = arr;
  rep["results"] = results;
  rep["certificates"] = ordered_json::array();
}

void fill_delta_normal(ordered_json& rep, const LoadedInput& li,
                       const IntVector& w) {
  auto t = geometry::regular_triangulation(li.config, w);
  auto cert = geometry::is_delta_normal(li.config, t);
  ordered_json results;
  results["weight"] = json_vec(w);
  results["facet_count"] = static_cast<int>(t.facets.size());
  results["facets"] = json_faces(t.facets);
  results["delta_normal"] = cert.pass;
  rep["results"] = results;
  rep["certificates"] = ordered_json::array({json_report(cert)});
}

void fill_normal(ordered_json& rep, const LoadedInput& li) {
  auto cert = geometry::is_normal(li.config);
  ordered_json results;
  results["normal"] = cert.pass;
  rep["results"] = results;
  rep["certificates"] = ordered_json::array({json_report(cert)});
}

void fill_stanley_filtration(ordered_json& rep, const LoadedInput& li,
                             const IntVector& w, const toric::TermOrder& order,
                             int cap) {
  auto sr = run_stanley(li, w, order);
  ordered_json results;
  results["delta_normal"] = sr.dn_ok;
  auto certs = ordered_json::array({json_report(sr.dn)});
  if (sr.dn_ok) {
    results["pair_count"] = static_cast<int>(sr.sp.pairs.size());
    results["shelling"] = json_faces(sr.shell.order);
    results["shelling_restrictions"] = json_faces(sr.shell.q);
    auto arr = ordered_json::array();
    for (const auto& p : sr.fil.pairs) {
      ordered_json jp;
      jp["root"] = ideals::format_monomial(p.root, li.config.names);
      jp["face"] = json_face(p.facet);
      jp["base_root"] = ideals::format_monomial(p.base_root, li.config.names);
      jp["q"] = json_face(p.q);
      arr.push_back(jp);
    }
    results["filtration"] = arr;
    results["block_ends"] = sr.fil.block_ends;
    auto ver = stanley::verify_filtration(sr.initial, sr.fil, cap);
    results["degree_cap"] = cap;
    results["verified"] = ver.pass;
    if (sr.agreement) certs.push_back(json_report(*sr.agreement));
    certs.push_back(json_report(ver));
  }
  rep["results"] = results;
  rep["certificates"] = certs;
}

void fill_cm_certify(ordered_json& rep, const LoadedInput& li,
                     const IntVector& w, const toric::TermOrder& order,
                     int cap) {
  auto sr = run_stanley(li, w, order);
  ordered_json results;
  results["delta_normal"] = sr.dn_ok;
  auto certs = ordered_json::array({json_report(sr.dn)});
  if (sr.dn_ok) {
    auto cm = stanley::certify_cm(sr.initial, sr.fil, sr.t, cap);
    results["degree_cap"] = cap;
    results["cohen_macaulay_certified"] = cm.pass;
    if (sr.agreement) certs.push_back(json_report(*sr.agreement));
    certs.push_back(json_report(cm));
  }
  rep["results"] = results;
  rep["certificates"] = certs;
}

const char* class_name(stanley::GenClass c) {
  switch (c) {
    case stanley::GenClass::kNClass:
      return "N";
    case stanley::GenClass::kOutClass:
      return "OUT";
    default:
      return "CROSS";
  }
}

void fill_degree_bound(ordered_json& rep, const LoadedInput& li,
                       const IntVector& w, const toric::TermOrder& order) {
  auto t = geometry::regular_triangulation(li.config, w);
  auto dn = geometry::is_delta_normal(li.config, t);
  ordered_json results;
  results["delta_normal"] = dn.pass;
  auto certs = ordered_json::array({json_report(dn)});
  if (dn.pass) {
    auto gc = stanley::classify_generators(li.config, t, order);
    int n_count = 0, out_count = 0, cross_count = 0, max_deg = 0;
    for (const auto& g : gc.generators) {
      max_deg = std::max(max_deg, g.degree);
      switch (g.cls) {
        case stanley::GenClass::kNClass:
          ++n_count;
          break;
        case stanley::GenClass::kOutClass:
          ++out_count;
          break;
        default:
          ++cross_count;
      }
    }
    results["dimension"] = li.config.d();
    results["max_generator_degree"] = max_deg;
    results["bound_satisfied"] = gc.report.pass;
    ordered_json counts;
    counts["N"] = n_count;
    counts["OUT"] = out_count;
    counts["CROSS"] = cross_count;
    results["counts"] = counts;
    results["facets"] = json_faces(t.facets);
    auto arr = ordered_json::array();
    for (const auto& g : gc.generators) {
      ordered_json jg;
      jg["monomial"] = ideals::format_monomial(g.gen, li.config.names);
      jg["class"] = class_name(g.cls);
      jg["facet"] = g.facet_index < 0 ? ordered_json(nullptr)
                                      : ordered_json(g.facet_index + 1);
      jg["image"] = g.cls == stanley::GenClass::kCrossClass
                        ? ordered_json(nullptr)
                        : ordered_json(ideals::format_monomial(
                              g.image, li.config.names));
      jg["degree"] = g.degree;
      jg["squarefree"] = g.squarefree;
      arr.push_back(jg);
    }
    results["generators"] = arr;
    certs.push_back(json_report(gc.report));
  }
  rep["results"] = results;
  rep["certificates"] = certs;
}

void fill_pipeline(ordered_json& rep, const LoadedInput& li, const IntVector& w,
                   const toric::TermOrder& order, int cap, std::ostream& err) {
  ordered_json results;
  results["weight"] = json_vec(w);
  results["degree_cap"] = cap;
  auto stages = ordered_json::array();
  auto certs = ordered_json::array();
  std::string failed, diagnostic;
  auto halt = [&](const std::string& stage, const std::string& why) {
    failed = stage;
    diagnostic = why;
  };

  const auto& c = li.config;
  auto gb = toric::toric_groebner(c, order);
  auto initial = toric::initial_ideal(gb);
  {
    ordered_json s;
    s["stage"] = "groebner";
    s["ok"] = true;
    s["generator_count"] = static_cast<int>(gb.elements.size());
    s["max_degree"] = toric::max_degree(gb);
    stages.push_back(s);
  }

  geometry::Triangulation t;
  if (failed.empty()) {
    t = geometry::regular_triangulation(c, w);
    bool ok = geometry::is_triangulation(c, t);
    ordered_json s;
    s["stage"] = "triangulation";
    s["ok"] = ok;
    s["facet_count"] = static_cast<int>(t.facets.size());
    s["facets"] = json_faces(t.facets);
    stages.push_back(s);
    if (!ok)
      halt("triangulation", "the weight does not induce a triangulation");
  }

  if (failed.empty()) {
    auto dn = geometry::is_delta_normal(c, t);
    certs.push_back(json_report(dn));
    ordered_json s;
    s["stage"] = "delta-normality";
    s["ok"] = dn.pass;
    stages.push_back(s);
    if (!dn.pass) halt("delta-normality", dn.first_failure());
  }

  stanley::SpecialPairs sp;
  if (failed.empty()) {
    sp = stanley::special_pairs(c, t, order);
    bool ok = true;
    ordered_json s;
    s["stage"] = "special-pairs";
    if (c.n() <= 16) {
      auto agree = pairs_agreement(initial, sp);
      certs.push_back(json_report(agree));
      ok = agree.pass;
      s["ok"] = ok;
      s["pair_count"] = static_cast<int>(sp.pairs.size());
      s["agrees_with_standard_pairs"] = agree.pass;
      if (!ok) halt("special-pairs", agree.first_failure());
    } else {
      s["ok"] = true;
      s["pair_count"] = static_cast<int>(sp.pairs.size());
    }
    stages.push_back(s);
  }

  geometry::Shelling shell;
  if (failed.empty()) {
    shell = geometry::find_shelling(t);
    ordered_json s;
    s["stage"] = "shelling";
    s["ok"] = true;
    s["order"] = json_faces(shell.order);
    stages.push_back(s);
  }

  std::vector<stanley::StanleyPair> dec;
  if (failed.empty()) {
    dec = stanley::stanley_decomposition(sp, shell);
    ordered_json s;
    s["stage"] = "decomposition";
    s["ok"] = true;
    s["pair_count"] = static_cast<int>(dec.size());
    stages.push_back(s);
  }

  stanley::StanleyFiltration fil;
  if (failed.empty()) {
    fil = stanley::algorithm_list(dec, shell);
    auto ver = stanley::verify_filtration(initial, fil, cap);
    certs.push_back(json_report(ver));
    ordered_json s;
    s["stage"] = "filtration";
    s["ok"] = ver.pass;
    s["verified"] = ver.pass;
    stages.push_back(s);
    if (!ver.pass) halt("filtration", ver.first_failure());
  }

  if (failed.empty()) {
    auto cm = stanley::certify_cm(initial, fil, t, cap);
    certs.push_back(json_report(cm));
    ordered_json s;
    s["stage"] = "cm-certificate";
    s["ok"] = cm.pass;
    s["certified"] = cm.pass;
    stages.push_back(s);
    if (!cm.pass) halt("cm-certificate", cm.first_failure());
  }

  if (failed.empty()) {
    auto gc = stanley::classify_generators(c, t, order);
    certs.push_back(json_report(gc.report));
    int n_count = 0, out_count = 0, cross_count = 0, max_deg = 0;
    for (const auto& g : gc.generators) {
      max_deg = std::max(max_deg, g.degree);
      switch (g.cls) {
        case stanley::GenClass::kNClass:
          ++n_count;
          break;
        case stanley::GenClass::kOutClass:
          ++out_count;
          break;
        default:
          ++cross_count;
      }
    }
    ordered_json s;
    s["stage"] = "degree-bound";
    s["ok"] = gc.report.pass;
    s["max_generator_degree"] = max_deg;
    s["dimension"] = c.d();
    ordered_json counts;
    counts["N"] = n_count;
    counts["OUT"] = out_count;
    counts["CROSS"] = cross_count;
    s["counts"] = counts;
    stages.push_back(s);
    if (!gc.report.pass) halt("degree-bound", gc.report.first_failure());
  }

  results["stages"] = stages;
  results["verdict"] = failed.empty() ? "pass" : ("failed at " + failed);
  rep["results"] = results;
  rep["certificates"] = certs;
  if (!failed.empty())
    err << "pipeline halted at '" << failed << "': " << diagnostic << "\n";
}

// ---------------------------------------------------------------------------
// family
// ---------------------------------------------------------------------------

std::vector<std::pair<int, int>> parse_edges(std::istream& in,
                                             const std::string& source) {
  std::vector<std::pair<int, int>> edges;
  std::string raw;
  int no = 0;
  while (std::getline(in, raw)) {
    ++no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::string t = trim(raw);
    if (t.empty() || t[0] == '#') continue;
    auto toks = split_ws(t);
    const std::string where = source + ":" + std::to_string(no);
    if (toks.size() != 2)
      throw InputError(where + ": expected two vertex numbers");
    edges.emplace_back(parse_small(toks[0], where), parse_small(toks[1], where));
  }
  return edges;
}

std::string join_under(const IntVector& v) {
  std::string s;
  for (const Int& x : v) {
    if (!s.empty()) s += "_";
    s += x.get_str();
  }
  return s;
}

void emit_config(const std::filesystem::path& dir, const std::string& name,
                 const ConfigFile& f) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  std::ofstream out(dir / name, std::ios::binary);
  if (!out) throw InputError("cannot write '" + (dir / name).string() + "'");
  out << write_config(f);
}

ordered_json cmd_family(const Options& opt) {
  if (opt.kind == "fz") {
    if (opt.v_csv.empty()) throw InputError("--kind fz needs --v a,b,c,d");
    IntVector v = parse_int_csv(opt.v_csv, "--v");
    auto c = families::firla_ziegler(v);
    ConfigFile f{c.a, c.names, std::nullopt, {}};
    const std::string name = "fz_" + join_under(v) + ".cfg";
    emit_config(opt.out_dir, name, f);
    auto rep = base_report("family", nullptr);
    ordered_json results;
    results["kind"] = "fz";
    results["v"] = json_vec(v);
    results["file"] = name;
    results["rows"] = c.d();
    results["columns"] = c.n();
    rep["results"] = results;
    rep["certificates"] =
        ordered_json::array({json_report(geometry::is_normal(c))});
    return rep;
  }
  if (opt.kind == "delta-tower") {
    if (opt.v_csv.empty())
      throw InputError("--kind delta-tower needs --v a,b,c,d");
    if (opt.d_max < 5)
      throw InputError("--d-max must be at least 5");
    IntVector v = parse_int_csv(opt.v_csv, "--v");
    auto base = families::firla_ziegler(v);
    auto tw = families::delta_normal_tower(base, opt.d_max);
    auto rep = base_report("family", nullptr);
    ordered_json results;
    results["kind"] = "delta-tower";
    results["v"] = json_vec(v);
    results["d_max"] = opt.d_max;
    auto certs = ordered_json::array({json_report(tw.base_report)});
    auto files = ordered_json::array();
    auto levels = ordered_json::array();
    bool all_pass = tw.base_report.pass;
    for (const auto& level : tw.levels) {
      const int d = level.config.d();
      const int n = level.config.n();
      IntVector apex_weight(n, Int(0));
      if (n >= 2) apex_weight[0] = apex_weight[1] = 1;
      ConfigFile lf{level.config.a, level.config.names, apex_weight, {}};
      const std::string name = "tower_d" + std::to_string(d) + ".cfg";
      emit_config(opt.out_dir, name, lf);
      files.push_back(name);
      certs.push_back(json_report(level.report));
      bool level_pass = level.report.pass;
      if (level.report.pass && !level.delta.facets.empty()) {
        auto parity = families::parity_certificate(level.config);
        auto dn = geometry::is_delta_normal(level.config, level.delta);
        certs.push_back(json_report(parity));
        certs.push_back(json_report(dn));
        level_pass = level_pass && parity.pass && dn.pass;
      }
      ordered_json jl;
      jl["d"] = d;
      jl["file"] = name;
      jl["columns"] = n;
      jl["extreme_rays"] =
          static_cast<int>(geometry::extreme_columns(level.config).size());
      jl["pass"] = level_pass;
      levels.push_back(jl);
      all_pass = all_pass && level_pass;
    }
    results["files"] = files;
    results["levels"] = levels;
    results["pass"] = all_pass;
    rep["results"] = results;
    rep["certificates"] = certs;
    return rep;
  }
  throw InputError("unknown family kind '" + opt.kind +
                   "' (expected fz, delta-tower or graph)");
}

}  // namespace

// ---------------------------------------------------------------------------
// Configuration files
// ---------------------------------------------------------------------------

ConfigFile parse_config(std::istream& in, const std::string& source) {
  struct Line {
    int number;
    std::string text;
  };
  std::vector<Line> content;
  std::string raw;
  int no = 0;
  while (std::getline(in, raw)) {
    ++no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::string t = trim(raw);
    if (t.empty() || t[0] == '#') continue;
    content.push_back({no, t});
  }
  auto at = [&](int line) { return source + ":" + std::to_string(line); };
  if (content.empty()) throw InputError(source + ": empty configuration file");

  auto head = split_ws(content[0].text);
  if (head.size() != 2)
    throw InputError(at(content[0].number) +
                     ": expected header 'd n' (rows and columns)");
  const int d = parse_small(head[0], at(content[0].number));
  const int n = parse_small(head[1], at(content[0].number));
  if (d < 1 || n < 1)
    throw InputError(at(content[0].number) +
                     ": rows and columns must be positive");
  if (static_cast<int>(content.size()) < 1 + d)
    throw InputError(source + ": expected " + std::to_string(d) +
                     " matrix rows after the header");

  ConfigFile f;
  f.a = linalg::IntMatrix(d, n);
  for (int i = 0; i < d; ++i) {
    const auto& ln = content[1 + i];
    auto toks = split_ws(ln.text);
    if (static_cast<int>(toks.size()) != n)
      throw InputError(at(ln.number) + ": expected " + std::to_string(n) +
                       " entries, found " + std::to_string(toks.size()));
    for (int j = 0; j < n; ++j) f.a.at(i, j) = parse_big(toks[j], at(ln.number));
  }

  std::set<std::string> seen;
  for (std::size_t k = 1 + d; k < content.size(); ++k) {
    const auto& ln = content[k];
    auto colon = ln.text.find(':');
    if (colon == std::string::npos)
      throw InputError(at(ln.number) + ": expected 'key: values'");
    const std::string key = trim(ln.text.substr(0, colon));
    const std::string rest = trim(ln.text.substr(colon + 1));
    if (key != "names" && key != "weight" && key != "tiebreak")
      throw InputError(at(ln.number) + ": unknown key '" + key +
                       "' (expected names, weight or tiebreak)");
    if (!seen.insert(key).second)
      throw InputError(at(ln.number) + ": duplicate key '" + key + "'");
    auto toks = split_ws(rest);
    if (static_cast<int>(toks.size()) != n)
      throw InputError(at(ln.number) + ": '" + key + "' needs " +
                       std::to_string(n) + " entries, found " +
                       std::to_string(toks.size()));
    if (key == "names") {
      std::set<std::string> unique(toks.begin(), toks.end());
      if (static_cast<int>(unique.size()) != n)
        throw InputError(at(ln.number) + ": variable names must be distinct");
      f.names = toks;
    } else if (key == "weight") {
      IntVector w;
      for (const auto& tok : toks) w.push_back(parse_big(tok, at(ln.number)));
      f.weight = std::move(w);
    } else {
      f.tiebreak = toks;
    }
  }
  return f;
}

ConfigFile load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  return parse_config(in, std::filesystem::path(path).filename().string());
}

std::string write_config(const ConfigFile& f) {
  std::ostringstream out;
  out << f.a.rows << " " << f.a.cols << "\n";
  for (int i = 0; i < f.a.rows; ++i) {
    for (int j = 0; j < f.a.cols; ++j)
      out << (j ? " " : "") << f.a.at(i, j).get_str();
    out << "\n";
  }
  if (!f.names.empty()) {
    out << "names:";
    for (const auto& s : f.names) out << " " << s;
    out << "\n";
  }
  if (f.weight) {
    out << "weight:";
    for (const Int& x : *f.weight) out << " " << x.get_str();
    out << "\n";
  }
  if (!f.tiebreak.empty()) {
    out << "tiebreak:";
    for (const auto& s : f.tiebreak) out << " " << s;
    out << "\n";
  }
  return out.str();
}

toric::Configuration to_configuration(const ConfigFile& f) {
  return toric::make_configuration(f.a, f.names);
}

// ---------------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------------

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  CLI::App app{"Certified toolkit for Delta-normal toric configurations"};
  app.name("dnormal");
  Options opt;
  app.add_option("--degree-cap", opt.degree_cap,
                 "Degree cap for truncated certificate checks")
      ->check(CLI::Range(-1, 1000000))
      ->capture_default_str();
  app.add_option("--threads", opt.threads,
                 "Worker threads (never affects output bytes)")
      ->check(CLI::PositiveNumber);
  app.add_flag("--timings", opt.timings,
               "Append wall-clock timings to the report");
  app.require_subcommand(1);

  auto add_input = [&](CLI::App* sub, bool order_flags) {
    sub->add_option("input", opt.input, "configuration file")->required();
    if (order_flags) {
      sub->add_option("--weight", opt.weight_csv,
                      "comma-separated weight entries (overrides the file)");
      sub->add_option(
          "--tiebreak", opt.tiebreak_csv,
          "comma-separated variable names, largest first (overrides the file)");
    }
    sub->fallthrough();
  };

  add_input(app.add_subcommand(
                "groebner", "Reduced Groebner basis of the toric ideal"),
            true);
  add_input(app.add_subcommand(
                "triangulate", "Regular triangulation induced by the weight"),
            true);
  add_input(app.add_subcommand("standard-pairs",
                               "Standard pairs of the initial ideal"),
            true);
  add_input(app.add_subcommand(
                "delta-normal",
                "Check normality of every cell of the regular triangulation"),
            true);
  add_input(app.add_subcommand("normal",
                               "Check normality of the configuration"),
            false);
  add_input(app.add_subcommand(
                "stanley-filtration",
                "Stanley decomposition ordered into a verified filtration"),
            true);
  add_input(app.add_subcommand(
                "cm-certify",
                "Cohen-Macaulay certificate from a shelling-aligned filtration"),
            true);
  add_input(app.add_subcommand(
                "degree-bound",
                "Classify initial-ideal generators and verify degree bounds"),
            true);
  add_input(app.add_subcommand("pipeline",
                               "Run the full certificate chain, halting at "
                               "the first failing stage"),
            true);

  auto* fam = app.add_subcommand("family", "Generate a named configuration "
                                           "family and write its files");
  fam->add_option("--kind", opt.kind, "fz, delta-tower or graph")
      ->required()
      ->check(CLI::IsMember({"fz", "delta-tower", "graph"}));
  fam->add_option("--v", opt.v_csv, "four coordinates a,b,c,d (fz towers)");
  fam->add_option("--d-max", opt.d_max, "largest tower level")
      ->capture_default_str();
  fam->add_option("--edges", opt.edges_path, "edge list file (graph kind)");
  int vertices = 0;
  fam->add_option("--vertices", vertices, "vertex count (graph kind)");
  fam->add_option("--out-dir", opt.out_dir, "directory for emitted files")
      ->capture_default_str();
  fam->fallthrough();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "input error: " << e.what() << "\n";
    return 2;
  }

  try {
    const std::string cmd = app.get_subcommands().front()->get_name();
    ordered_json rep;
    if (cmd == "family") {
      if (opt.kind == "graph") {
        if (opt.edges_path.empty() || vertices <= 0)
          throw InputError(
              "--kind graph needs --edges FILE and --vertices N (N >= 1)");
        std::ifstream in(opt.edges_path, std::ios::binary);
        if (!in) throw InputError("cannot open '" + opt.edges_path + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        const std::string bytes = buf.str();
        const std::string display =
            std::filesystem::path(opt.edges_path).filename().string();
        std::istringstream s(bytes);
        auto edges = parse_edges(s, display);
        auto g = families::graph_configuration(vertices, edges);
        ConfigFile f{g.config.a, g.config.names, std::nullopt, {}};
        const std::string name = "graph_" + std::to_string(vertices) + "v_" +
                                 std::to_string(edges.size()) + "e.cfg";
        emit_config(opt.out_dir, name, f);
        rep = base_report("family", nullptr);
        rep["input"] = display;
        rep["input_digest"] = fnv1a64(bytes);
        ordered_json results;
        results["kind"] = "graph";
        results["vertices"] = vertices;
        results["edges"] = static_cast<int>(edges.size());
        results["file"] = name;
        results["rows"] = g.config.d();
        results["columns"] = g.config.n();
        rep["results"] = results;
        rep["certificates"] = ordered_json::array();
      } else {
        rep = cmd_family(opt);
      }
    } else {
      LoadedInput li = load_input(opt.input);
      rep = base_report(cmd, &li);
      if (cmd == "groebner") {
        fill_groebner(rep, li, resolve_order(li, opt));
      } else if (cmd == "triangulate") {
        fill_triangulate(rep, li, require_weight(li, opt));
      } else if (cmd == "standard-pairs") {
        fill_standard_pairs(rep, li, resolve_order(li, opt));
      } else if (cmd == "delta-normal") {
        fill_delta_normal(rep, li, require_weight(li, opt));
      } else if (cmd == "normal") {
        fill_normal(rep, li);
      } else if (cmd == "stanley-filtration") {
        fill_stanley_filtration(rep, li, require_weight(li, opt),
                                resolve_order(li, opt), opt.degree_cap);
      } else if (cmd == "cm-certify") {
        fill_cm_certify(rep, li, require_weight(li, opt),
                        resolve_order(li, opt), opt.degree_cap);
      } else if (cmd == "degree-bound") {
        fill_degree_bound(rep, li, require_weight(li, opt),
                          resolve_order(li, opt));
      } else if (cmd == "pipeline") {
        fill_pipeline(rep, li, require_weight(li, opt),
                      resolve_order(li, opt), opt.degree_cap, err);
      } else {
        throw InputError("unknown command '" + cmd + "'");
      }
    }
    if (opt.timings) {
      const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
      ordered_json tj;
      tj["total_ms"] = static_cast<long long>(ms);
      rep["timings"] = tj;
    }
    out << rep.dump(2) << "\n";
    return 0;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const ComputeError& e) {
    err << "computation error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace dnormal::cli
