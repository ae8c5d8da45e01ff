#include "dnormal/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dnormal/errors.hpp"
#include "doctest.h"

using namespace dnormal;
using nlohmann::json;

namespace {

std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(DN_FIXTURE_DIR) / name;
}

std::filesystem::path golden(const std::string& name) {
  return fixture("golden") / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(bool(in));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
  json body;  // parsed stdout when non-empty
};

CliResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliResult r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  if (!r.out.empty() && r.out[0] == '{') r.body = json::parse(r.out);
  return r;
}

std::string grid() { return fixture("supernormal13.cfg").string(); }
std::string segment() { return fixture("nonnormal_q3.cfg").string(); }

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / "dnormal_cli_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("configuration files parse, serialize and round-trip") {
  const std::string text =
      "# comment\n"
      "2 3\n"
      "1 1 1\n"
      "0 1 3\n"
      "names: x y z\n"
      "weight: 4 0 1\n"
      "tiebreak: y x z\n";
  std::istringstream in(text);
  auto f = cli::parse_config(in, "mem");
  CHECK(f.a.rows == 2);
  CHECK(f.a.cols == 3);
  CHECK(f.a.at(1, 2) == 3);
  CHECK(f.names == std::vector<std::string>{"x", "y", "z"});
  REQUIRE(f.weight.has_value());
  CHECK((*f.weight)[0] == 4);
  CHECK(f.tiebreak == std::vector<std::string>{"y", "x", "z"});

  // The canonical serialization parses back to the same content.
  std::istringstream again(cli::write_config(f));
  auto g = cli::parse_config(again, "mem2");
  CHECK(g.a == f.a);
  CHECK(g.names == f.names);
  CHECK(g.weight == f.weight);
  CHECK(g.tiebreak == f.tiebreak);

  auto c = cli::to_configuration(f);
  CHECK(c.n() == 3);
  CHECK(c.names[1] == "y");

  auto rejects = [](const std::string& body) {
    std::istringstream s(body);
    CHECK_THROWS_AS(cli::parse_config(s, "mem"), InputError);
  };
  rejects("");
  rejects("2\n1 1\n0 1\n");                      // header needs two numbers
  rejects("2 2\n1 1\n");                         // missing matrix row
  rejects("1 2\n1 1 1\n");                       // too many entries
  rejects("1 2\n1 x\n");                         // not an integer
  rejects("1 2\n1 1\nnames: a\n");               // wrong names count
  rejects("1 2\n1 1\nnames: a a\n");             // duplicate names
  rejects("1 2\n1 1\nweight: 1 2\nweight: 1 2\n");  // duplicate key
  rejects("1 2\n1 1\ncolor: red blue\n");        // unknown key
  rejects("0 2\n");                              // no rows
}

TEST_CASE("grid commands reproduce the printed invariants") {
  auto gb = run_cli({"groebner", grid()});
  REQUIRE(gb.code == 0);
  CHECK(gb.body["results"]["generator_count"] == 52);
  CHECK(gb.body["results"]["max_degree"] == 3);
  CHECK(gb.body["results"]["order"]["tiebreak"][0] == "b");
  CHECK(gb.body["results"]["generators"].size() == 52);

  auto tri = run_cli({"triangulate", grid()});
  REQUIRE(tri.code == 0);
  CHECK(tri.body["results"]["facets"] ==
        json::parse("[[1,4,13],[4,11,12],[4,11,13],[11,12,13]]"));
  CHECK(tri.body["results"]["volumes"] == json::parse("[9,2,3,1]"));
  CHECK(tri.body["results"]["unimodular"] == false);
  CHECK(tri.body["results"]["verified"] == true);

  auto sp = run_cli({"standard-pairs", grid()});
  REQUIRE(sp.code == 0);
  CHECK(sp.body["results"]["pair_count"] == 15);
  CHECK(sp.body["results"]["initial_ideal"]["generator_count"] == 52);
  // Count pairs per facet: 9 on {1,4,13}, 2 on {4,11,12}, 3 on {4,11,13},
  // 1 on {11,12,13} - matching the normalized volumes.
  int per[4] = {0, 0, 0, 0};
  const json facets = json::parse("[[1,4,13],[4,11,12],[4,11,13],[11,12,13]]");
  for (const auto& p : sp.body["results"]["pairs"])
    for (int i = 0; i < 4; ++i)
      if (p["face"] == facets[i]) ++per[i];
  CHECK(per[0] == 9);
  CHECK(per[1] == 2);
  CHECK(per[2] == 3);
  CHECK(per[3] == 1);
}

TEST_CASE("certificate commands pass on the grid") {
  auto dn = run_cli({"delta-normal", grid()});
  REQUIRE(dn.code == 0);
  CHECK(dn.body["results"]["delta_normal"] == true);
  CHECK(dn.body["certificates"][0]["pass"] == true);

  auto nm = run_cli({"normal", grid()});
  REQUIRE(nm.code == 0);
  CHECK(nm.body["results"]["normal"] == true);

  auto fil = run_cli({"stanley-filtration", grid()});
  REQUIRE(fil.code == 0);
  CHECK(fil.body["results"]["pair_count"] == 15);
  CHECK(fil.body["results"]["verified"] == true);
  CHECK(fil.body["results"]["degree_cap"] == 6);
  CHECK(fil.body["results"]["block_ends"] == json::parse("[9,12,14,15]"));
  CHECK(fil.body["results"]["filtration"].size() == 15);
  // Certificates: delta-normality, special-pair agreement, the filtration.
  REQUIRE(fil.body["certificates"].size() == 3);
  for (const auto& c : fil.body["certificates"]) CHECK(c["pass"] == true);

  auto cm = run_cli({"cm-certify", grid()});
  REQUIRE(cm.code == 0);
  CHECK(cm.body["results"]["cohen_macaulay_certified"] == true);

  auto db = run_cli({"degree-bound", grid()});
  REQUIRE(db.code == 0);
  CHECK(db.body["results"]["dimension"] == 3);
  CHECK(db.body["results"]["max_generator_degree"] == 3);
  CHECK(db.body["results"]["bound_satisfied"] == true);
  CHECK(db.body["results"]["counts"] == json::parse(R"({"N":28,"OUT":17,"CROSS":7})"));
  CHECK(db.body["results"]["generators"].size() == 52);
  for (const auto& g : db.body["results"]["generators"]) {
    if (g["class"] == "CROSS") {
      CHECK(g["degree"] == 2);
      CHECK(g["squarefree"] == true);
      CHECK(g["facet"].is_null());
    }
  }
}

TEST_CASE("pipeline passes on the grid and halts on the gapped segment") {
  auto ok = run_cli({"pipeline", grid()});
  REQUIRE(ok.code == 0);
  CHECK(ok.body["results"]["verdict"] == "pass");
  REQUIRE(ok.body["results"]["stages"].size() == 9);
  const char* names[9] = {"groebner",      "triangulation", "delta-normality",
                          "special-pairs", "shelling",      "decomposition",
                          "filtration",    "cm-certificate", "degree-bound"};
  for (int i = 0; i < 9; ++i) {
    CHECK(ok.body["results"]["stages"][i]["stage"] == names[i]);
    CHECK(ok.body["results"]["stages"][i]["ok"] == true);
  }

  auto bad = run_cli({"pipeline", segment(), "--weight", "0,1,0"});
  REQUIRE(bad.code == 0);  // a negative verdict is still a successful run
  CHECK(bad.body["results"]["verdict"] == "failed at delta-normality");
  CHECK(bad.body["results"]["stages"].size() == 3);
  CHECK(bad.body["results"]["stages"][2]["ok"] == false);
  CHECK(bad.err.find("pipeline halted at 'delta-normality'") !=
        std::string::npos);
  CHECK(bad.err.find("(1,2)") != std::string::npos);
}

TEST_CASE("reports are byte-stable across repeat runs and thread counts") {
  auto a = run_cli({"pipeline", grid()});
  auto b = run_cli({"pipeline", grid()});
  auto c = run_cli({"--threads", "4", "pipeline", grid()});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  CHECK(a.body.find("timings") == a.body.end());

  auto timed = run_cli({"--timings", "normal", grid()});
  REQUIRE(timed.code == 0);
  CHECK(timed.body.contains("timings"));
  CHECK(timed.body["timings"].contains("total_ms"));
}

TEST_CASE("golden reports are frozen for the grid and the families") {
  auto expect_golden = [](const std::string& file,
                          const std::vector<std::string>& args) {
    CAPTURE(file);
    auto r = run_cli(args);
    REQUIRE(r.code == 0);
    CHECK(r.out == slurp(golden(file)));
  };
  expect_golden("groebner.json", {"groebner", grid()});
  expect_golden("triangulate.json", {"triangulate", grid()});
  expect_golden("standard-pairs.json", {"standard-pairs", grid()});
  expect_golden("delta-normal.json", {"delta-normal", grid()});
  expect_golden("normal.json", {"normal", grid()});
  expect_golden("stanley-filtration.json", {"stanley-filtration", grid()});
  expect_golden("cm-certify.json", {"cm-certify", grid()});
  expect_golden("degree-bound.json", {"degree-bound", grid()});
  expect_golden("pipeline.json", {"pipeline", grid()});

  const auto dir = scratch_dir();
  expect_golden("family_fz.json", {"family", "--kind", "fz", "--v", "1,2,3,5",
                                   "--out-dir", dir.string()});
  expect_golden("family_tower.json",
                {"family", "--kind", "delta-tower", "--v", "1,2,3,5",
                 "--d-max", "6", "--out-dir", dir.string()});
  expect_golden("family_graph.json",
                {"family", "--kind", "graph", "--edges",
                 fixture("petersen.edges").string(), "--vertices", "10",
                 "--out-dir", dir.string()});
  // The emitted configuration file is golden too.
  CHECK(slurp(dir / "fz_1_2_3_5.cfg") == slurp(golden("fz_1_2_3_5.cfg")));
}

TEST_CASE("family commands emit loadable configuration files") {
  const auto dir = scratch_dir();

  auto fz = run_cli({"family", "--kind", "fz", "--v", "1,2,3,5", "--out-dir",
                     dir.string()});
  REQUIRE(fz.code == 0);
  CHECK(fz.body["results"]["columns"] == 8);
  CHECK(fz.body["certificates"][0]["pass"] == true);  // output is normal
  auto fzc = cli::to_configuration(
      cli::load_config((dir / "fz_1_2_3_5.cfg").string()));
  CHECK(fzc.n() == 8);
  CHECK(fzc.d() == 4);

  auto tw = run_cli({"family", "--kind", "delta-tower", "--v", "1,2,3,5",
                     "--d-max", "5", "--out-dir", dir.string()});
  REQUIRE(tw.code == 0);
  CHECK(tw.body["results"]["pass"] == true);
  CHECK(tw.body["results"]["files"] == json::parse(R"(["tower_d5.cfg"])"));
  CHECK(tw.body["results"]["levels"][0]["extreme_rays"] == 6);
  auto lvl = cli::load_config((dir / "tower_d5.cfg").string());
  CHECK(lvl.a.rows == 5);
  CHECK(lvl.a.cols == 10);
  REQUIRE(lvl.weight.has_value());  // the apex weight travels with the file
  // The emitted weight induces the two-cell triangulation: the level file
  // feeds straight back into the triangulation command.
  auto tri = run_cli({"triangulate", (dir / "tower_d5.cfg").string()});
  REQUIRE(tri.code == 0);
  CHECK(tri.body["results"]["facet_count"] == 2);

  auto gr = run_cli({"family", "--kind", "graph", "--edges",
                     fixture("petersen.edges").string(), "--vertices", "10",
                     "--out-dir", dir.string()});
  REQUIRE(gr.code == 0);
  CHECK(gr.body["results"]["rows"] == 10);
  CHECK(gr.body["results"]["columns"] == 15);
  CHECK(gr.body["input"] == "petersen.edges");
  auto gc = cli::to_configuration(
      cli::load_config((dir / "graph_10v_15e.cfg").string()));
  CHECK(gc.graded());
}

TEST_CASE("exit codes distinguish success, input and computation errors") {
  const auto dir = scratch_dir();
  {
    std::ofstream bad(dir / "bad.cfg");
    bad << "this is not a header\n";
  }

  // Input errors: exit 2, no report on stdout.
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"groebner", (dir / "bad.cfg").string()},
           {"groebner", (dir / "missing.cfg").string()},
           {"triangulate", segment()},            // no weight anywhere
           {"groebner", grid(), "--weight", "1,2"},
           {"groebner", grid(), "--tiebreak", "b,e"},
           {"family", "--kind", "fz"},            // --v missing
           {"family", "--kind", "graph", "--vertices", "3"},
           {"nonsense", grid()},
       }) {
    CAPTURE(args[0]);
    auto r = run_cli(args);
    CHECK(r.code == 2);
    CHECK(r.out.empty());
    CHECK(!r.err.empty());
  }

  // Computation error: a weight whose subdivision is not a triangulation.
  auto tw = run_cli({"family", "--kind", "delta-tower", "--v", "1,2,3,5",
                     "--d-max", "6", "--out-dir", dir.string()});
  REQUIRE(tw.code == 0);
  auto r3 = run_cli({"triangulate", (dir / "tower_d6.cfg").string()});
  CHECK(r3.code == 3);
  CHECK(r3.err.find("not a triangulation") != std::string::npos);

  // Negative verdicts are exit 0.
  auto neg = run_cli({"normal", segment()});
  CHECK(neg.code == 0);
  CHECK(neg.body["results"]["normal"] == false);

  // Help lands on stdout with exit 0.
  auto help = run_cli({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("SUBCOMMAND") != std::string::npos);
}
