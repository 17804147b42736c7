#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "combalg/cli.hpp"

using namespace combalg;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

json report(std::vector<std::string> args) {
  args.push_back("--json");
  auto r = call(args);
  json j = json::parse(r.out);
  j["exit"] = r.code;
  return j;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("combalg_" + std::to_string(::getpid()) + "_" + name + ".json");
}

int verify(const std::vector<std::string>& command, const json& rep) {
  const auto path = temp_file(command[0] + "_" + command[1]);
  {
    std::ofstream f(path);
    f << rep.dump(2);
  }
  auto r = call({command[0], command[1], "--verify", path.string()});
  std::filesystem::remove(path);
  return r.code;
}

}  // namespace

TEST_CASE("documented examples") {
  auto a = report({"coord", "check", "x + x^2*y"});
  CHECK(a["exit"] == 1);
  CHECK(a["verdict"] == "not_coordinate");

  auto b = report({"fg", "primitive", "x1 x1 x2"});
  CHECK(b["exit"] == 0);
  CHECK(b["trace"].size() == 2);
  CHECK(b["complexity_before"] == 3);
  CHECK(b["complexity_after"] == 1);

  auto c = report({"tame", "decompose", "x + y^2", "y"});
  CHECK(c["exit"] == 0);
  REQUIRE(c["certificate"]["factors"].size() == 1);
  CHECK(c["certificate"]["factors"][0]["factor"] == "shear");
}

TEST_CASE("exit code taxonomy") {
  CHECK(call({"fg", "member", "(x1^2, x2)", "x1"}).code == cli::kExitNo);
  CHECK(call({"fg", "member", "(x1^2, x2)", "x1^4 x2"}).code == cli::kExitYes);
  CHECK(call({"retract", "witness", "x^2"}).code == cli::kExitInconclusive);
  CHECK(call({"retract", "witness", "x + x^2*y", "--deg", "2"}).code == cli::kExitYes);
  CHECK(call({"coord", "conjg", "x + x^2*y", "--budget", "0"}).code == cli::kExitInconclusive);
  CHECK(call({"coord", "conjg", "x^2"}).code == cli::kExitNo);
  CHECK(call({"fg", "conjugacy", "x1 x2 x1^-1 x2^-1", "x1 x1 x2 x2", "--budget", "1"}).code != cli::kExitYes);
  CHECK(call({"gb", "contains-one", "1 + 2*x*y, x^2"}).code == cli::kExitYes);
  CHECK(call({"gb", "contains-one", "x, y"}).code == cli::kExitNo);
}

TEST_CASE("usage errors") {
  CHECK(call({}).code == cli::kExitUsage);
  CHECK(call({"coord"}).code == cli::kExitUsage);
  CHECK(call({"coord", "check"}).code == cli::kExitUsage);
  CHECK(call({"coord", "check", "x", "y"}).code == cli::kExitUsage);
  CHECK(call({"coord", "check", "x", "--frobnicate"}).code == cli::kExitUsage);
  auto p = call({"coord", "check", "x + * y"});
  CHECK(p.code == cli::kExitUsage);
  CHECK(p.err.find("position") != std::string::npos);
  CHECK(call({"retract", "witness", "7"}).code == cli::kExitUsage);
  CHECK(call({"fg", "primitive", "1"}).code == cli::kExitUsage);
  CHECK(call({"coord", "check", "--verify", "/nonexistent/file.json"}).code == cli::kExitUsage);
}

TEST_CASE("reports are stable apart from timing") {
  const std::vector<std::vector<std::string>> commands{
      {"coord", "check", "x + y^2 + x*y^3"}, {"fg", "nielsen", "(x1 x2, x2, x1 x2 x2)"},
      {"gb", "basis", "x^2 - y, x*y - 1"},   {"retract", "jc", "(x + y^2, y)"},
      {"tame", "random", "5", "--seed", "9"}};
  for (const auto& c : commands) {
    json a = report(c), b = report(c);
    a.erase("timing");
    b.erase("timing");
    CHECK(a.dump() == b.dump());
    CHECK(a["version"] == cli::kVersion);
    CHECK(a.contains("input"));
  }
}

TEST_CASE("certificates round-trip through --verify") {
  const std::vector<std::vector<std::string>> commands{
      {"fg", "reduce", "x1 x2 x2^-1 x1 x1^-1"},
      {"fg", "nielsen", "(x1 x2 x1, x1 x2)"},
      {"fg", "member", "(x1 x2, x2)", "x1"},
      {"fg", "member", "(x1^2, x2)", "x1"},
      {"fg", "same-subgroup", "(x1 x2, x2)", "(x1, x2)"},
      {"fg", "same-subgroup", "(x1^2, x2)", "(x1, x2)"},
      {"fg", "auto", "(x1 x2, x2)"},
      {"fg", "auto", "(x1^2, x2)"},
      {"fg", "primitive", "x1 x1 x2"},
      {"fg", "primitive", "x1 x2 x1^-1 x2^-1"},
      {"fg", "whitehead", "x1 x2 x2 x1 x2"},
      {"fg", "conjugacy", "x1 x2 x2", "x1 x1 x2"},
      {"poly", "parse", "(x + y)^3 - 1/2"},
      {"poly", "jacobian", "(x + y^2, y)"},
      {"poly", "jacobian", "(x + x^2*y, y)"},
      {"gb", "basis", "x^2 + y^2 - 1, x - y"},
      {"gb", "contains-one", "1 + 2*x*y, x^2"},
      {"gb", "spoly", "1 + 2*x*y", "x^2"},
      {"tame", "decompose", "x + y^2 + (y + x^3)^2", "y + x^3"},
      {"tame", "decompose", "x + x*y", "y"},
      {"tame", "invert", "y + 1", "x + y^3"},
      {"tame", "decompose", "2*x + y + 1", "x - 3"},
      {"tame", "univar-pair", "t^2 + t", "t^2"},
      {"tame", "univar-pair", "t^2", "t^3"},
      {"tame", "random", "6", "--seed", "3"},
      {"coord", "check", "x + y^2 + x*y^3"},
      {"coord", "check", "y + (x + y^2)^2"},
      {"coord", "check", "x + x^2*y"},
      {"coord", "complete", "y + (x + y^2)^2"},
      {"coord", "reduce", "y + (x + y^2)^2"},
      {"coord", "conjg", "x + x^2*y"},
      {"coord", "unimodular", "x + x^2*y"},
      {"coord", "unimodular", "x^2 + y^2"},
      {"retract", "verify", "(x + y*x^2, 0)"},
      {"retract", "verify", "(y, x)"},
      {"retract", "normal-form", "x^2"},
      {"retract", "witness", "x + x^2*y", "--deg", "2"},
      {"retract", "witness", "x^2", "--deg", "2", "--budget", "20"},
      {"retract", "fixed", "(x + y^2, y)", "--deg", "3"},
      {"retract", "stable", "(x^2, y^2)", "3"},
      {"retract", "jc", "(x + y^2, y)"},
  };
  for (const auto& c : commands) {
    CAPTURE(c[0] + " " + c[1] + " " + c[2]);
    json rep = report(c);
    rep.erase("exit");
    CHECK(verify(c, rep) == cli::kExitYes);
  }
}

TEST_CASE("tampered certificates are rejected") {
  json a = report({"coord", "check", "y + (x + y^2)^2"});
  a.erase("exit");
  REQUIRE(a["verdict"] == "coordinate");
  a["certificate"]["q"] = "x";
  CHECK(verify({"coord", "check"}, a) == cli::kExitNo);

  json b = report({"retract", "witness", "x + x^2*y", "--deg", "2"});
  b.erase("exit");
  b["certificate"]["b"] = "y";
  CHECK(verify({"retract", "witness"}, b) == cli::kExitNo);

  json c = report({"fg", "primitive", "x1 x1 x2"});
  c.erase("exit");
  c["trace"].erase(0);
  CHECK(verify({"fg", "primitive"}, c) == cli::kExitNo);

  json d = report({"tame", "decompose", "x + y^2", "y"});
  d.erase("exit");
  d["verdict"] = "not_automorphism";
  CHECK(verify({"tame", "decompose"}, d) == cli::kExitNo);

  // A report from another command is a usage error.
  CHECK(verify({"coord", "reduce"}, d) == cli::kExitUsage);
}

TEST_CASE("selftest") {
  auto list = call({"selftest", "--list"});
  CHECK(list.code == 0);
  CHECK(list.out.find("coord.conjecture-g") != std::string::npos);
  CHECK(list.out.find("retract.witness") != std::string::npos);
  auto all = call({"selftest"});
  CHECK(all.code == 0);
  CHECK(all.out.find("FAIL") == std::string::npos);
}
