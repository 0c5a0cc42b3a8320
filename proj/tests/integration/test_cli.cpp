#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "doctest.h"

namespace {

namespace fs = std::filesystem;

std::string binary() {
  const char* bin = std::getenv("COPHTREE_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "COPHTREE_BIN must point at the CLI");
  return bin;
}

struct RunResult {
  int exit_code;
  std::string out;
};

// Runs the CLI with `args` appended; stderr is folded into stdout only when
// asked, so goldens on stdout stay clean.
RunResult run(const std::string& args, bool merge_stderr = false) {
  const std::string cmd = "'" + binary() + "' " + args +
                          (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  const int status = pclose(pipe);
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  return {WEXITSTATUS(status), out};
}

// Scratch files live in a per-binary subdir of the test working directory.
fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::current_path() / "cli_scratch";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string put(const std::string& name, const std::string& content) {
  const fs::path p = scratch() / name;
  std::ofstream(p, std::ios::binary) << content;
  return p.string();
}

const std::string k_fig_x =
    "((1[&height=1],2[&height=4])[&height=6],"
    "(3[&height=2],4[&height=3])[&height=5])[&height=7];\n";
const std::string k_fig_y =
    "(((3[&height=4],4[&height=1])[&height=5],2[&height=3])[&height=6],"
    "1[&height=2])[&height=7];\n";

std::string fig_x() { return put("fig_x.nwk", k_fig_x); }
std::string fig_y() { return put("fig_y.nwk", k_fig_y); }
std::string fig_pair() { return put("fig_pair.nwk", k_fig_x + k_fig_y); }

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("validate reports counts") {
  const std::string one = put("cherry.nwk", "(A:1,B:1);\n");
  RunResult r = run("validate " + one);
  CHECK(r.exit_code == 0);
  CHECK(r.out == "1 tree, leaf counts: 2\n");

  r = run("validate " + fig_pair() + " --convention explicit");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "2 trees, leaf counts: 4, 4\n");
}

TEST_CASE("validate failure exit codes") {
  RunResult r = run("validate " + put("bad.nwk", "(A:1,"), true);
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("syntax error at byte") != std::string::npos);

  r = run("validate " + put("dup.nwk", "(A:1,A:1);"), true);
  CHECK(r.exit_code == 2);
  CHECK(r.out.find("invalid tree") != std::string::npos);

  r = run("validate " + put("empty.nwk", ""), true);
  CHECK(r.exit_code == 1);
}

TEST_CASE("dist on the worked example") {
  const std::string x = fig_x();
  const std::string y = fig_y();
  const std::string base = x + " " + y + " --convention explicit";
  RunResult r = run("dist " + base);
  CHECK(r.exit_code == 0);
  CHECK(r.out == "2\n");

  CHECK(run("dist " + x + " " + x + " --convention explicit").out == "0\n");
  CHECK(run("dist " + base + " --p l1").out == "9\n");
  RunResult l2 = run("dist " + base + " --p l2");
  CHECK(std::abs(std::stod(l2.out) - std::sqrt(13.0)) < 1e-10);
}

TEST_CASE("dist oracle cross-check") {
  RunResult r = run("dist " + fig_x() + " " + fig_y() +
                    " --convention explicit --oracle");
  CHECK(r.exit_code == 0);
  REQUIRE(r.out.rfind("closed_form 2\ninterleaving 2", 0) == 0);
  const std::size_t pos = r.out.find("difference ");
  REQUIRE(pos != std::string::npos);
  CHECK(std::stod(r.out.substr(pos + 11)) <= 1e-6);

  // l1 has no interleaving counterpart to check against.
  CHECK(run("dist " + fig_x() + " " + fig_y() +
            " --convention explicit --oracle --p l1",
            true)
            .exit_code == 4);
}

TEST_CASE("dist picks trees out of multi-tree files by index") {
  const std::string pair = fig_pair();
  RunResult r = run("dist " + pair + " " + pair +
                    " --index-a 0 --index-b 1 --convention explicit");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "2\n");

  CHECK(run("dist " + pair + " " + pair + " --convention explicit", true)
            .exit_code == 4);
  CHECK(run("dist " + pair + " " + pair +
            " --index-a 0 --index-b 7 --convention explicit",
            true)
            .exit_code == 4);
}

TEST_CASE("dist rejects mismatched label sets") {
  RunResult r = run("dist " + put("ab.nwk", "(A:1,B:1);") + " " +
                        put("ac.nwk", "(A:1,C:1);"),
                    true);
  CHECK(r.exit_code == 2);
  CHECK(r.out.find("invalid tree") != std::string::npos);
}

TEST_CASE("vector emits the upper triangle") {
  RunResult r = run("vector " + fig_x() + " --convention explicit");
  CHECK(r.exit_code == 0);
  CHECK(r.out ==
        "{\"labels\":[\"1\",\"2\",\"3\",\"4\"],"
        "\"rows\":[[1,6,7,7],[4,7,7],[2,5],[3]]}\n");

  r = run("vector " + put("mini.nwk", "(A:1,B:1);") + " --format csv");
  CHECK(r.out ==
        "label_i,label_j,height\n"
        "A,A,-1\n"
        "A,B,0\n"
        "B,B,-1\n");
}

TEST_CASE("vector digit cap") {
  const std::string t = put(
      "digits.nwk",
      "(A[&height=0.123456789],B[&height=0.111111111])[&height=1];");
  RunResult r = run("vector " + t + " --convention explicit --digits 3");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "{\"labels\":[\"A\",\"B\"],\"rows\":[[0.123,1],[0.111]]}\n");
}

TEST_CASE("smooth lowers heights and reserializes") {
  RunResult r = run("smooth " + put("cherry2.nwk", "(A:1,B:1);") +
                    " --epsilon 1");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "(A[&height=-2],B[&height=-2])[&height=-1];\n");

  CHECK(run("smooth " + put("cherry3.nwk", "(A:1,B:1);") + " --epsilon -1",
            true)
            .exit_code == 4);
}

TEST_CASE("hom reports the morphism direction") {
  const std::string up = put("up.nwk", "(A[&height=0],B[&height=0])[&height=2];");
  const std::string down =
      put("down.nwk", "(A[&height=-1],B[&height=-1])[&height=1];");
  const std::string conv = " --convention explicit";
  CHECK(run("hom " + up + " " + down + conv).out == "A→B\n");
  CHECK(run("hom " + down + " " + up + conv).out == "B→A\n");
  CHECK(run("hom " + up + " " + up + conv).out == "both (equal)\n");
  CHECK(run("hom " + fig_x() + " " + fig_y() + conv).out == "incomparable\n");
}

TEST_CASE("matrix over a multi-tree file") {
  const std::string pair = fig_pair();
  RunResult r = run("matrix " + pair + " --convention explicit");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "," + pair + ":0," + pair + ":1\n" +  //
                     pair + ":0,0,2\n" +               //
                     pair + ":1,2,0\n");

  r = run("matrix " + pair + " --convention explicit --format json");
  CHECK(r.exit_code == 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["metric"] == "linf");
  CHECK(j["labels"][1] == pair + ":1");
  CHECK(j["values"][0][1].get<double>() == 2.0);
  CHECK(j["values"][1][0].get<double>() == 2.0);
  CHECK(j["values"][0][0].get<double>() == 0.0);

  // --out writes the same bytes to a file instead of stdout.
  const std::string out_path = (scratch() / "m.csv").string();
  RunResult to_file =
      run("matrix " + pair + " --convention explicit --out " + out_path);
  CHECK(to_file.exit_code == 0);
  CHECK(to_file.out.empty());
  std::ifstream in(out_path, std::ios::binary);
  std::string written((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  CHECK(written == run("matrix " + pair + " --convention explicit").out);
}

TEST_CASE("matrix rejects label drift inside one file") {
  RunResult r =
      run("matrix " + put("drift.nwk", "(A:1,B:1);(A:1,C:1);"), true);
  CHECK(r.exit_code == 2);
}

TEST_CASE("interleave prints a certificate") {
  RunResult r =
      run("interleave " + fig_x() + " " + fig_y() + " --convention explicit");
  CHECK(r.exit_code == 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  const double eps = j["epsilon"].get<double>();
  CHECK(eps >= 2.0);
  CHECK(eps <= 2.0 + 1e-8);
  REQUIRE(j["witness_forward"]["rows"].size() == 10);
  REQUIRE(j["witness_backward"]["rows"].size() == 10);
  for (const auto& row : j["witness_forward"]["rows"])
    CHECK(row["margin"].get<double>() >= 0.0);
}

TEST_CASE("repeat runs are byte-identical") {
  const std::string base =
      fig_x() + " " + fig_y() + " --convention explicit";
  CHECK(run("dist " + base).out == run("dist " + base).out);
  CHECK(run("interleave " + base).out == run("interleave " + base).out);
  const std::string pair = fig_pair();
  CHECK(run("matrix " + pair + " --convention explicit --format json").out ==
        run("matrix " + pair + " --convention explicit --format json").out);
}

TEST_CASE("usage errors exit 4") {
  CHECK(run("dist --bogus-flag a b", true).exit_code == 4);
  CHECK(run("validate " + (scratch() / "missing.nwk").string(), true)
            .exit_code == 4);
  CHECK(run("", true).exit_code == 4);
  CHECK(run("--help").exit_code == 0);
}

TEST_SUITE_END();
