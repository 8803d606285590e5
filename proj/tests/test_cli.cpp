#include "qlab/cli.hpp"

#include "qlab/decompose.hpp"
#include "qlab/json_io.hpp"

#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace qlab;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& body) {
  std::filesystem::path p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << body;
  return p;
}

}  // namespace

TEST_CASE("mz subcommand emits the pinned probabilities") {
  CliResult r = invoke({"mz", "--phi", "0", "--json"});
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["P_D1"].get<double>() == 1.0);
  CHECK(j["P_D2"].get<double>() == 0.0);
}

TEST_CASE("mz scan produces a full grid") {
  CliResult r = invoke({"mz", "--scan", "11", "--json"});
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  REQUIRE(j.size() == 11);
  CHECK(j[0]["P_D1"].get<double>() == doctest::Approx(1.0));
  CHECK(j[5]["P_D1"].get<double>() == doctest::Approx(0.0).epsilon(1e-12));

  CliResult csv = invoke({"mz", "--scan", "5", "--csv"});
  CHECK(csv.out.rfind("phi,P_D1,P_D2\n", 0) == 0);
}

TEST_CASE("gate subcommand reports the matrix and both parameter tuples") {
  CliResult r = invoke({"gate", "not", "--json"});
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  Matrix m = matrix_from_json(j["matrix"]);
  CHECK(std::abs(m(0, 1) - Complex(1, 0)) <= 1e-15);
  CHECK(std::abs(m(0, 0)) <= 1e-15);
  CHECK(j["t_bs_params"]["omega"].get<double>() == 0.0);
  CHECK(j["t_mz_params"]["alpha"].get<double>() ==
        doctest::Approx(-std::numbers::pi / 2));
  CHECK(j["t_mz_params"]["phi"].get<double>() ==
        doctest::Approx(-std::numbers::pi / 2));
  // the not gate carries its h* fixed point in the report
  CHECK(j["fixed_point"]["has_fixed_point"].get<bool>());
  Vector h = vector_from_json(j["fixed_point"]["fixed_vectors"][0]);
  CHECK(std::abs(h(0) - h(1)) <= 1e-12);
}

TEST_CASE("compile subcommand") {
  auto path = temp_file("qlab_cli_test.net",
                        "mode a b\nsource a\nphase a phi=pi\nmirror a -> b\n"
                        "detector b OUT\n");
  CliResult r = invoke({"compile", path.string(), "--json"});
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  Matrix m = matrix_from_json(j["unitary"]);
  CHECK(std::abs(m(0, 0) - Complex(-1, 0)) <= 1e-12);
  CHECK(j["detector_probs"]["OUT"].get<double>() == doctest::Approx(1.0));

  CliResult exact = invoke({"compile", path.string(), "--json", "--mirror-phase", "exact"});
  Json je = Json::parse(exact.out);
  Matrix me = matrix_from_json(je["unitary"]);
  CHECK(std::abs(me(0, 0) - Complex(0, -1)) <= 1e-12);
}

TEST_CASE("compile reports non-square maps as isometry columns") {
  auto path = temp_file("qlab_cli_split.net",
                        "mode a b c\nsource a\nbeamsplitter a -> b c\n"
                        "detector b UP\ndetector c DOWN\n");
  CliResult r = invoke({"compile", path.string(), "--json"});
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["unitary"].is_null());
  REQUIRE(j["isometry_columns"].size() == 1);
  Vector col = vector_from_json(j["isometry_columns"][0]);
  CHECK(col.size() == 2);
  CHECK(j["detector_probs"]["UP"].get<double>() == doctest::Approx(0.5));
  CHECK(j["detector_probs"]["DOWN"].get<double>() == doctest::Approx(0.5));
}

TEST_CASE("decompose subcommand round trips through JSON and netlists") {
  Matrix u = random_unitary(3, 17);
  auto path = temp_file("qlab_cli_matrix.json", matrix_to_json(u).dump());

  CliResult r = invoke({"decompose", "--input", path.string(), "--json"});
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["n"].get<int>() == 3);
  CHECK(j["factors"].size() <= 3);
  CHECK(j["recompose_error"].get<double>() <= 1e-10);

  CliResult mesh = invoke({"decompose", "--input", path.string(), "--emit-netlist"});
  REQUIRE(mesh.code == 0);
  Matrix back = compile_mesh(mesh.out);
  CHECK((back - u).norm() <= 1e-8);
}

TEST_CASE("evolve subcommand emits CSV rows") {
  CliResult r = invoke({"evolve", "--E", "0", "--A", "1", "--t", "1", "--grid", "3"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("t,P1,P2\n", 0) == 0);

  CliResult j = invoke({"evolve", "--E", "0", "--A", "1", "--t", "1", "--json"});
  Json rows = Json::parse(j.out);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0]["P1"].get<double>() ==
        doctest::Approx(std::cos(1.0) * std::cos(1.0)).epsilon(1e-10));

  CliResult st = invoke({"evolve", "--stationary", "--a", "1,0", "--b", "0,0",
                         "--json"});
  Json sj = Json::parse(st.out);
  CHECK(sj["P1"].get<double>() == 1.0);
}

TEST_CASE("fock subcommand reports the cloning defect") {
  CliResult r = invoke({"fock", "--demo", "cloning", "--alpha", "0.70710678118654752,0",
                        "--beta", "0.70710678118654752,0", "--json"});
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["defect"].get<double>() ==
        doctest::Approx(std::sqrt(0.5)).epsilon(1e-9));
}

TEST_CASE("omega subcommand") {
  CliResult r = invoke({"omega", "--maxlen", "2", "--json"});
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["kraft"].get<double>() == 0.25);
  CHECK(j["h_all_zero"].get<int>() == 2);
  CHECK(j["complexities"].size() == 1);
  CHECK(j["complexities"][0]["canonical"].get<std::string>() == "11");

  CliResult rep = invoke({"omega", "--maxlen", "6", "--report", "relations", "--json"});
  REQUIRE(rep.code == 0);
  Json jr = Json::parse(rep.out);
  CHECK(jr.contains("slacks"));
  CHECK(jr["slacks"].size() == 6);
}

TEST_CASE("omega output is byte-identical across thread counts") {
  CliResult one = invoke({"omega", "--maxlen", "8", "--report", "relations",
                          "--threads", "1", "--json"});
  CliResult four = invoke({"omega", "--maxlen", "8", "--report", "relations",
                           "--threads", "4", "--json"});
  REQUIRE(one.code == 0);
  REQUIRE(four.code == 0);
  CHECK(one.out == four.out);

  CliResult again = invoke({"omega", "--maxlen", "8", "--report", "relations",
                            "--threads", "4", "--json"});
  CHECK(four.out == again.out);
}

TEST_CASE("qbit subcommand codes, classifies and samples") {
  CliResult r = invoke({"qbit", "--code", "0.78539816339744831,0,0", "--json"});
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["class"].get<std::string>() == "nonclassical");
  CHECK(j["P_t"].get<double>() == doctest::Approx(0.5).epsilon(1e-12));

  CliResult s = invoke({"qbit", "--sample", "1000", "--seed", "7", "--json"});
  Json sj = Json::parse(s.out);
  CHECK(sj["count_t"].get<int>() + sj["count_f"].get<int>() == 1000);
  CHECK(sj["seed"].get<std::uint64_t>() == 7);

  // environment seed override
  setenv("QAIT_SEED", "99", 1);
  CliResult env = invoke({"qbit", "--sample", "10", "--json"});
  unsetenv("QAIT_SEED");
  CHECK(Json::parse(env.out)["seed"].get<std::uint64_t>() == 99);
}

TEST_CASE("help goes to stdout with a zero exit code") {
  CliResult top = invoke({"--help"});
  CHECK(top.code == 0);
  CHECK(top.out.find("compile") != std::string::npos);
  CliResult sub = invoke({"omega", "--help"});
  CHECK(sub.code == 0);
  CHECK(sub.out.find("--maxlen") != std::string::npos);
}

TEST_CASE("exit codes: domain errors give 1, usage errors give 2") {
  CliResult domain = invoke({"gate", "hadamard", "--json"});
  CHECK(domain.code == 1);
  Json j = Json::parse(domain.out);
  CHECK(j["error"].get<std::string>() == "UnknownGate");

  CliResult usage = invoke({"frobnicate"});
  CHECK(usage.code == 2);

  CliResult missing = invoke({"compile", "/nonexistent/file.net"});
  CHECK(missing.code == 1);
  CHECK(Json::parse(missing.out)["error"].get<std::string>() == "FileError");

  CliResult odd = invoke({"omega", "--maxlen", "3"});
  CHECK(odd.code == 1);
}

TEST_CASE("identical invocations produce identical bytes") {
  for (auto args : {std::vector<std::string>{"gate", "sqrt_not", "--json"},
                    std::vector<std::string>{"mz", "--phi", "1.25", "--json"},
                    std::vector<std::string>{"omega", "--maxlen", "6", "--json"}}) {
    CliResult a = invoke(args);
    CliResult b = invoke(args);
    CHECK(a.out == b.out);
  }
}
