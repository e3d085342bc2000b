#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>
#include <json.hpp>

#include "fredholm/cli.hpp"
#include "fredholm/error.hpp"

using namespace fredholm;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

}  // namespace

TEST_CASE("analyze reports") {
  const Run id = run({"analyze", fixture("identity2.json")});
  REQUIRE(id.code == 0);
  CHECK(id.err.empty());
  const json doc = json::parse(id.out);
  CHECK(doc["report"]["index"] == 0);
  CHECK(doc["report"]["rank"] == 2);
  CHECK(doc["report"]["invertible"] == true);
  CHECK(doc["report"]["rank_uncertain"] == false);
  CHECK(doc["characteristic_matrix"].size() == 2);

  const Run over = run({"analyze", fixture("overdetermined.json")});
  REQUIRE(over.code == 0);
  const json odoc = json::parse(over.out);
  CHECK(odoc["report"]["index"] == -1);
  CHECK(odoc["report"]["r"] == 3);
  CHECK(odoc["report"]["m"] == 2);

  const Run text = run({"analyze", fixture("overdetermined.json"), "--format", "text"});
  CHECK(text.code == 0);
  CHECK(text.out.find("index -1") != std::string::npos);
}

TEST_CASE("solve documents") {
  const Run unique = run({"solve", fixture("exp_scalar.json"), "--samples"});
  REQUIRE(unique.code == 0);
  const json u = json::parse(unique.out);
  CHECK(u["status"] == "Unique");
  CHECK(u["samples"].size() == 1025);
  CHECK(u["grid"].size() == 1025);
  CHECK(std::abs(u["samples"].back()[0][0].get<double>() - 0.36787944117144233) < 1e-6);

  const Run bare = run({"solve", fixture("exp_scalar.json")});
  CHECK_FALSE(json::parse(bare.out).contains("samples"));

  const Run inconsistent = run({"solve", fixture("inconsistent.json")});
  CHECK(inconsistent.code == 0);
  const json i = json::parse(inconsistent.out);
  CHECK(i["status"] == "Inconsistent");
  CHECK(i["report"]["dim_cokernel"] == 1);

  const Run family = run({"solve", fixture("family.json")});
  CHECK(family.code == 0);
  const json f = json::parse(family.out);
  CHECK(f["status"] == "Family");
  CHECK(f["kernel_basis"].size() == 1);

  const Run text = run({"solve", fixture("family.json"), "--format", "text"});
  CHECK(text.out.find("status: Family") != std::string::npos);
}

TEST_CASE("verify") {
  const Run norms = run({"verify", fixture("ft_norms.json"), "--norms"});
  CHECK(norms.code == 0);
  const json n = json::parse(norms.out);
  CHECK(n["pass"] == true);
  CHECK(n["norms"]["seminorm"] == 0.0);
  CHECK(std::abs(n["norms"]["total"].get<double>() - 1.5773502691896257) < 1e-6);
  CHECK(n["reports"].size() == 3);
  const Run general = run({"verify", fixture("overdetermined.json")});
  CHECK(general.code == 0);
  CHECK(json::parse(general.out)["skipped"].size() == 1);

  const Run ex1 = run({"verify", fixture("example1.json")});
  CHECK(ex1.code == 0);
  const Run forced = run({"verify", fixture("example1.json"), "--rank-tol", "1000"});
  CHECK(forced.code == 1);
  CHECK(json::parse(forced.out)["pass"] == false);
  CHECK(forced.err.find("failed") != std::string::npos);

  const Run corpus = run({"verify", "--corpus"});
  CHECK(corpus.code == 0);
  CHECK(json::parse(corpus.out)["reports"].size() == 4);

  CHECK(run({"verify"}).code == 2);
  CHECK(run({"verify", "--corpus", "--norms"}).code == 2);
}

TEST_CASE("byte-identical repeated runs") {
  const std::vector<std::vector<std::string>> cases = {
      {"analyze", fixture("overdetermined.json")},
      {"solve", fixture("exp_scalar.json"), "--samples"},
      {"solve", fixture("family.json"), "--format", "text"},
      {"verify", fixture("example2.json"), "--norms"},
  };
  for (const auto& args : cases) {
    const Run first = run(args);
    const Run second = run(args);
    CHECK(first.code == second.code);
    CHECK(first.out == second.out);
    CHECK_FALSE(first.out.empty());
  }
}

TEST_CASE("output file") {
  const auto path = std::filesystem::temp_directory_path() / "fredholm_cli_output.json";
  std::filesystem::remove(path);
  const Run r = run({"analyze", fixture("identity2.json"), "--output", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream body;
  body << in.rdbuf();
  CHECK(body.str() == run({"analyze", fixture("identity2.json")}).out);
  std::filesystem::remove(path);

  CHECK(run({"analyze", fixture("identity2.json"), "--output", "/nonexistent/dir/x.json"}).code == 2);
}

TEST_CASE("input and configuration errors exit 2") {
  const Run malformed = run({"analyze", fixture("malformed.json")});
  CHECK(malformed.code == 2);
  CHECK(malformed.err.find("/coefficient") != std::string::npos);
  const Run order = run({"solve", fixture("invalid_order.json")});
  CHECK(order.code == 2);
  CHECK(order.err.find("InvalidOrder") != std::string::npos);
  CHECK(run({"analyze", fixture("does_not_exist.json")}).code == 2);
  CHECK(run({"analyze", fixture("identity2.json"), "--grid", "4"}).code == 2);
  CHECK(run({"analyze", fixture("identity2.json"), "--rank-tol", "-1"}).code == 2);
  CHECK(run({"solve", fixture("identity2.json"), "--consistency-tol", "0"}).code == 2);
  CHECK(run({"analyze", fixture("identity2.json"), "--format", "xml"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"analyze"}).code == 2);
  const Run conflict = run({"solve", fixture("identity2.json"), "--rank-tol", "0.01"});
  CHECK(conflict.code == 2);
  CHECK(conflict.err.find("ToleranceConflict") != std::string::npos);
}

TEST_CASE("help exits 0") {
  const Run help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("analyze") != std::string::npos);
}

TEST_CASE("every error code maps to a documented exit code") {
  for (ErrorCode code : kAllErrorCodes) {
    const int exit = exit_code_for(code);
    CHECK((exit == 2 || exit == 3));
    CHECK_FALSE(to_string(code).empty());
  }
  CHECK(exit_code_for(ErrorCode::SyntaxError) == 2);
  CHECK(exit_code_for(ErrorCode::IoError) == 2);
  CHECK(exit_code_for(ErrorCode::ToleranceConflict) == 2);
  CHECK(exit_code_for(ErrorCode::SingularFundamental) == 3);
  CHECK(exit_code_for(ErrorCode::NoApplicableOracle) == 3);
}
