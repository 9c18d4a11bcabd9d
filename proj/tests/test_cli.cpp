// End-to-end runs of the command-line tool against the shipped fixtures.
// Each case shells out to the built binary, so these exercise argument
// parsing, file loading, exit codes, and output formatting as a user sees
// them.

#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "scl/families.hpp"
#include "scl/json_io.hpp"
#include "scl/version.hpp"

namespace {

using Json = nlohmann::ordered_json;

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  std::string tag = std::to_string(++counter);
  std::string out_path = "/tmp/scl_cli_out_" + tag;
  std::string err_path = "/tmp/scl_cli_err_" + tag;
  std::string cmd = std::string(SCL_CLI_PATH) + " " + args + " >" + out_path +
                    " 2>" + err_path;
  int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return r;
}

std::string fx(const std::string& name) {
  return std::string(SCL_FIXTURES_DIR) + "/" + name;
}

std::string write_temp(const std::string& name, const std::string& body) {
  std::string path = "/tmp/" + name;
  std::ofstream out(path);
  out << body;
  return path;
}

std::string err_code(const RunResult& r) {
  Json e = Json::parse(r.err, nullptr, false);
  if (e.is_discarded() || !e.contains("error")) return "<unparsed>";
  return e["error"]["code"].get<std::string>();
}

}  // namespace

TEST_CASE("expand renders the factored expansion") {
  auto r = run_cli("--surface " + fx("square.json") + " expand --curve " +
                   fx("square_diagonal.json"));
  REQUIRE(r.exit_code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["laurent"].get<std::string>() == "(1 + y1)*x1^-1");
  CHECK(j["g_vector"] == Json::array({-1}));
  CHECK(j["f_polynomial"].get<std::string>() == "y1 + 1");
  CHECK(j["terms"].size() == 2);

  auto again = run_cli("--surface " + fx("square.json") + " expand --curve " +
                       fx("square_diagonal.json"));
  CHECK(again.out == r.out);

  auto text = run_cli("--surface " + fx("square.json") + " --format text " +
                      "expand --curve " + fx("square_diagonal.json"));
  REQUIRE(text.exit_code == 0);
  CHECK(text.out.find("laurent (1 + y1)*x1^-1") != std::string::npos);
  CHECK(text.out.find("g-vector (-1)") != std::string::npos);
}

TEST_CASE("expand reports structured errors") {
  auto r = run_cli("--surface /nonexistent.json expand --curve " +
                   fx("square_diagonal.json"));
  CHECK(r.exit_code == 2);
  CHECK(err_code(r) == "bad_file");

  auto bad_fmt = run_cli("--surface " + fx("square.json") +
                         " --format yaml expand --curve " +
                         fx("square_diagonal.json"));
  CHECK(bad_fmt.exit_code == 2);
  CHECK(err_code(bad_fmt) == "usage");

  std::string bad_curve = write_temp("bad_curve.json", "{\"kind\": \"open\"");
  auto r2 = run_cli("--surface " + fx("square.json") + " expand --curve " + bad_curve);
  CHECK(r2.exit_code == 2);
  CHECK(err_code(r2) == "bad_json");

  std::string wrong_edge = write_temp(
      "wrong_edge.json", "{\"kind\": \"open\", \"crossings\": [\"t9\"]}");
  auto r3 = run_cli("--surface " + fx("square.json") + " expand --curve " + wrong_edge);
  CHECK(r3.exit_code == 2);
  CHECK(err_code(r3) == "bad_surface");
}

TEST_CASE("expand emits dot graphs") {
  auto r = run_cli("--surface " + fx("square.json") + " --format dot expand --curve " +
                   fx("square_diagonal.json"));
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("graph snake {") == 0);

  auto band = run_cli("--surface " + fx("annulus11.json") +
                      " --format dot expand --curve " + fx("annulus11_loop.json"));
  REQUIRE(band.exit_code == 0);
  CHECK(band.out.find("graph snake {") == 0);
}

TEST_CASE("mutate echoes the seed and checks expansions") {
  auto idle = run_cli("--surface " + fx("square.json") + " mutate");
  REQUIRE(idle.exit_code == 0);
  Json j = Json::parse(idle.out);
  CHECK(j["initial"] == j["final"]);
  CHECK(j["trace"].empty());

  auto ok = run_cli("--surface " + fx("square.json") +
                    " mutate --path 1 --check-against-curve " +
                    fx("square_diagonal.json"));
  REQUIRE(ok.exit_code == 0);
  Json jok = Json::parse(ok.out);
  CHECK(jok["check"]["status"].get<std::string>() == "match");
  CHECK(jok["trace"].size() == 1);

  std::string plain_arc =
      write_temp("square_arc.json", "{\"kind\": \"open\", \"base_arc\": \"t1\"}");
  auto bad = run_cli("--surface " + fx("square.json") +
                     " mutate --path 1 --check-against-curve " + plain_arc);
  CHECK(bad.exit_code == 1);
  Json jbad = Json::parse(bad.out);
  CHECK(jbad["check"]["status"].get<std::string>() == "mismatch");

  auto junk = run_cli("--surface " + fx("square.json") + " mutate --path 7");
  CHECK(junk.exit_code == 2);
  CHECK(err_code(junk) == "bad_path");
}

TEST_CASE("lattice reports matching counts") {
  auto r = run_cli("--surface " + fx("square.json") + " lattice --curve " +
                   fx("square_diagonal.json"));
  REQUIRE(r.exit_code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["kind"].get<std::string>() == "snake");
  CHECK(j["matching_count"] == 2);
  CHECK(j["ideal_count"] == 2);
  CHECK(j["counts_match"] == true);

  auto band = run_cli("--surface " + fx("annulus11.json") + " lattice --curve " +
                      fx("annulus11_loop.json"));
  REQUIRE(band.exit_code == 0);
  Json jb = Json::parse(band.out);
  CHECK(jb["kind"].get<std::string>() == "band");
  CHECK(jb["matching_count"] == 3);
  CHECK(jb["counts_match"] == true);
  CHECK(jb["minimal_is_good"] == true);
}

TEST_CASE("verify suites pass on the fixtures") {
  auto cheb = run_cli("--surface " + fx("annulus11.json") + " verify chebyshev --k 2");
  REQUIRE(cheb.exit_code == 0);
  Json j = Json::parse(cheb.out);
  CHECK(j["total"] == 13 + 12 + 2);
  CHECK(j["passed"] == j["total"]);

  auto pt = run_cli("--surface " + fx("square.json") + " verify ptolemy");
  REQUIRE(pt.exit_code == 0);
  Json jp = Json::parse(pt.out);
  CHECK(jp["total"] == 1);

  auto counts = run_cli("--surface " + fx("annulus11.json") + " verify counts --k 3");
  REQUIRE(counts.exit_code == 0);

  auto counts_bad = run_cli("--surface " + fx("square.json") + " verify counts");
  CHECK(counts_bad.exit_code == 2);
  CHECK(err_code(counts_bad) == "unsupported_family");

  auto ginj = run_cli("--surface " + fx("annulus11.json") +
                      " verify g-injectivity --bound 2 --mult 2 --k 2");
  REQUIRE(ginj.exit_code == 0);
  Json jg = Json::parse(ginj.out);
  CHECK(jg["total"] == 2);

  auto hex = run_cli("--surface " + fx("hexagon.json") +
                     " verify g-injectivity --bound 2 --mult 2 --k 2");
  REQUIRE(hex.exit_code == 0);
  Json jh = Json::parse(hex.out);
  CHECK(jh["total"] == 5);
}

TEST_CASE("lattice parity runs without a surface") {
  auto r = run_cli("verify lattice-parity --max-tiles 4");
  REQUIRE(r.exit_code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["total"] == 1 + 2 + 4 + 8);
  CHECK(j["passed"] == j["total"]);

  auto with_surface = run_cli("--surface " + fx("annulus11.json") +
                              " --jobs 2 verify lattice-parity --max-tiles 3");
  REQUIRE(with_surface.exit_code == 0);
  Json jw = Json::parse(with_surface.out);
  CHECK(jw["total"].get<int>() > 7);
  CHECK(jw["passed"] == jw["total"]);

  auto unknown = run_cli("verify nonsense");
  CHECK(unknown.exit_code == 2);
  CHECK(err_code(unknown) == "usage");
}

TEST_CASE("catalog and bases list family collections") {
  auto cat = run_cli("--surface " + fx("pentagon.json") + " catalog --bound 6");
  REQUIRE(cat.exit_code == 0);
  Json j = Json::parse(cat.out);
  CHECK(j["curves"].size() == 5);

  auto bas = run_cli("--surface " + fx("pentagon.json") +
                     " bases --bound 3 --mult 1 --k 1");
  REQUIRE(bas.exit_code == 0);
  Json jb = Json::parse(bas.out);
  CHECK(jb["elements"].size() == 6);

  auto no_fam = run_cli("--surface " + fx("square.json") + " catalog");
  CHECK(no_fam.exit_code == 0);

  std::string stripped = write_temp("no_family.json", [] {
    Json j = Json::parse(slurp(fx("square.json")));
    j.erase("family");
    return j.dump();
  }());
  auto bare = run_cli("--surface " + stripped + " catalog");
  CHECK(bare.exit_code == 2);
  CHECK(err_code(bare) == "unsupported_family");
}

TEST_CASE("manifests are stable apart from timing") {
  std::string m1 = "/tmp/scl_manifest_1.json";
  std::string m2 = "/tmp/scl_manifest_2.json";
  std::string base = "--surface " + fx("square.json") + " --seed 7 --manifest ";
  std::string tail = " expand --curve " + fx("square_diagonal.json");
  REQUIRE(run_cli(base + m1 + tail).exit_code == 0);
  REQUIRE(run_cli(base + m2 + tail).exit_code == 0);
  Json a = Json::parse(slurp(m1));
  Json b = Json::parse(slurp(m2));
  CHECK(a["inputs"].size() == 2);
  CHECK(a["seed"] == 7);
  CHECK(a["library_version"].get<std::string>() == scl::library_version);
  CHECK(a["summary"].get<std::string>() == "expanded (t1)");
  a.erase("elapsed_ms");
  b.erase("elapsed_ms");
  a["command"] = b["command"] = "";
  CHECK(a == b);
  std::remove(m1.c_str());
  std::remove(m2.c_str());
}

TEST_CASE("fixture surfaces match the builtin models") {
  auto digest_of = [](const std::string& name) {
    Json j = Json::parse(slurp(fx(name)));
    return scl::surface_from_json(j).digest();
  };
  CHECK(digest_of("square.json") == scl::PolygonModel(4).T().digest());
  CHECK(digest_of("pentagon.json") == scl::PolygonModel(5).T().digest());
  CHECK(digest_of("hexagon.json") == scl::PolygonModel(6).T().digest());
  CHECK(digest_of("annulus11.json") == scl::AnnulusModel(1, 1).T().digest());
  CHECK(digest_of("annulus22.json") == scl::AnnulusModel(2, 2).T().digest());
}
