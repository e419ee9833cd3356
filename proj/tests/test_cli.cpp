#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "ck/cli.hpp"

namespace {

using namespace ck;
namespace fs = std::filesystem;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun ck_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

Json json_of(std::vector<std::string> args) {
  args.push_back("--json");
  args.push_back("-");
  CliRun r = ck_run(args);
  return Json::parse(r.out);
}

fs::path temp_file(const std::string& name) { return fs::temp_directory_path() / ("ck_test_" + name); }

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

int count_lines_starting(const std::string& text, const std::string& prefix) {
  std::istringstream in(text);
  int n = 0;
  for (std::string line; std::getline(in, line);) n += line.rfind(prefix, 0) == 0;
  return n;
}

void write_broken_algebra(const fs::path& p) {
  std::ofstream(p) << R"({"name": "broken", "generators": ["A", "B", "C"],
                          "brackets": {"[A,B]": "A", "[A,C]": "A", "[B,C]": "B"}})";
}

// ------------------------------------------------------------------ argument parsing

TEST(Args, ParameterValues) {
  EXPECT_EQ(cli::parse_parameter_value("w1", "-1/2"), Scalar(Rational(-1, 2)));
  EXPECT_EQ(cli::parse_parameter_value("w1", "−1"), Scalar(-1));
  EXPECT_EQ(cli::parse_parameter_value("w2", "sym"), Scalar::symbol("w2"));
  EXPECT_THROW(cli::parse_parameter_value("w1", "one"), cli::UsageError);
  auto [w1, w2] = cli::parse_ck_assignments({"w2=0"});
  EXPECT_EQ(w1, Scalar::symbol("w1"));
  EXPECT_TRUE(w2.is_zero());
  EXPECT_THROW(cli::parse_ck_assignments({"w3=1"}), cli::UsageError);
  EXPECT_THROW(cli::parse_ck_assignments({"w1=1", "w1=0"}), cli::UsageError);
}

// ------------------------------------------------------------------ exit codes

struct ExitCase {
  std::vector<std::string> args;
  int code;
};

TEST(ExitCodes, Matrix) {
  fs::path broken = temp_file("broken.json");
  write_broken_algebra(broken);
  std::vector<ExitCase> cases = {
      {{"algebra", "--ck", "w1=0", "w2=-1", "--show"}, 0},
      {{"algebra", "--name", "so22"}, 0},
      {{"verify", "--all-ck"}, 0},
      {{"verify", "--ck", "w1=sym", "w2=sym"}, 0},
      {{"verify", "--name", "ext-galilei"}, 0},
      {{"verify", "--file", broken.string()}, 1},
      {{"contract", "--from", "so22", "--kind", "space-time"}, 0},
      {{"contract", "--from", "so22", "--kind", "sideways"}, 2},
      {{"expand", "--from", "poincare", "--axis", "1"}, 0},
      {{"expand", "--from", "galilei", "--axis", "1"}, 0},
      {{"expand", "--from", "so4", "--axis", "1"}, 2},
      {{"expand", "--from", "ext-galilei", "--axis", "1", "--degree-bound", "1"}, 2},
      {{"expand", "--from", "poincare", "--axis", "3"}, 2},
      {{"expand", "--from", "poincare"}, 2},
      {{"expand", "--from", "nowhere", "--axis", "1"}, 2},
      {{"atlas"}, 0},
      {{}, 2},
      {{"bogus"}, 2},
      {{"atlas", "--unknown"}, 2},
      {{"algebra", "--ck", "w1=x"}, 2},
      {{"algebra", "--name", "so4", "--ck", "w1=0"}, 2},
  };
  for (const auto& c : cases) {
    std::string joined;
    for (const auto& a : c.args) joined += a + " ";
    EXPECT_EQ(ck_run(c.args).code, c.code) << joined;
  }
  fs::remove(broken);
}

TEST(ExitCodes, EnvironmentBound) {
  setenv("CK_DEGREE_BOUND", "1", 1);
  EXPECT_EQ(ck_run({"expand", "--from", "ext-galilei", "--axis", "1"}).code, 2);
  EXPECT_EQ(ck_run({"expand", "--from", "ext-galilei", "--axis", "1", "--degree-bound", "2"}).code, 0);
  setenv("CK_DEGREE_BOUND", "4", 1);
  Json j = json_of({"expand", "--from", "euclid3", "--axis", "1"});
  EXPECT_EQ(j["payload"]["expansion"]["degree_bound"], 4);
  setenv("CK_DEGREE_BOUND", "lots", 1);
  EXPECT_EQ(ck_run({"atlas"}).code, 2);
  unsetenv("CK_DEGREE_BOUND");
}

#ifdef CK_BINARY
TEST(ExitCodes, BinaryEndToEnd) {
  auto status = [](const std::string& args) {
    int s = std::system((std::string(CK_BINARY) + " " + args + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(s);
  };
  fs::path broken = temp_file("broken_bin.json");
  write_broken_algebra(broken);
  EXPECT_EQ(status("atlas"), 0);
  EXPECT_EQ(status("verify --file " + broken.string()), 1);
  EXPECT_EQ(status("expand --from so4 --axis 1"), 2);
  EXPECT_EQ(status("frobnicate"), 2);
  EXPECT_EQ(status("--help"), 0);
  fs::remove(broken);
}
#endif

// ------------------------------------------------------------------ output

TEST(Output, ConstraintInTextForm) {
  CliRun r = ck_run({"expand", "--ck", "w1=0", "w2=sym", "--axis", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("4*w2*c1*a1^2 + w1 = 0"), std::string::npos) << r.out;
  CliRun dS = ck_run({"expand", "--from", "poincare", "--axis", "1", "--to", "so31-ds"});
  EXPECT_NE(dS.out.find("4*c1*a1^2 - w1 = 0"), std::string::npos) << dS.out;
  EXPECT_NE(dS.out.find("so31-ds (w1 = -1): 4*c1*a1^2 + 1 = 0"), std::string::npos) << dS.out;
}

TEST(Output, AtlasTextLines) {
  CliRun r = ck_run({"atlas"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(count_lines_starting(r.out, "PASS "), 12);
  EXPECT_EQ(count_lines_starting(r.out, "EXPECTED-FAIL "), 1);
  EXPECT_EQ(count_lines_starting(r.out, "FAIL "), 0);
}

TEST(Output, NegativeControlReport) {
  Json j = json_of({"expand", "--from", "galilei", "--axis", "1"});
  EXPECT_EQ(j["exit_code"], 0);
  const Json& e = j["payload"]["expansion"];
  EXPECT_EQ(e["verdict"], "closes-but-not-CK");
  EXPECT_EQ(e["expected_failure"], true);
  EXPECT_EQ(e["hypothesis"]["kt_in_k"], true);
  EXPECT_EQ(e["hypothesis"]["holds"], false);
  EXPECT_EQ(e["closure"]["closes"], true);
  EXPECT_TRUE(e["closure"]["matching_cells"].empty());
}

TEST(Output, JsonFileMatchesStdout) {
  fs::path p = temp_file("report.json");
  CliRun file_run = ck_run({"expand", "--from", "nh-plus", "--axis", "2", "--json", p.string()});
  EXPECT_EQ(file_run.code, 0);
  Json from_file = Json::parse(read_file(p));
  Json from_stdout = json_of({"expand", "--from", "nh-plus", "--axis", "2"});
  EXPECT_EQ(from_file["payload"], from_stdout["payload"]);
  fs::remove(p);
}

TEST(Output, TimingOnlyInText) {
  CliRun text = ck_run({"atlas"});
  EXPECT_NE(text.out.find(" s)"), std::string::npos);
  CliRun json = ck_run({"atlas", "--json", "-"});
  EXPECT_EQ(json.out.find(" s)"), std::string::npos);
  EXPECT_EQ(json.out.find("time"), std::string::npos);
}

// ------------------------------------------------------------------ determinism and round trips

TEST(Determinism, RepeatedRunsAreByteIdentical) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"atlas", "--json", "-"}, {"verify", "--all-ck", "--json", "-"}, {"expand", "--from", "galilei", "--axis", "2", "--json", "-"}}) {
    CliRun a = ck_run(args), b = ck_run(args);
    EXPECT_EQ(a.out, b.out);
  }
}

TEST(Determinism, ParallelAtlasSamePayload) {
  Json a = json_of({"atlas"});
  Json b = json_of({"atlas", "--parallel"});
  EXPECT_EQ(a["payload"], b["payload"]);
}

TEST(RoundTrip, JsonParsesBackToPayload) {
  auto pr = atlas_problem(atlas_arrows()[6]);
  ExpansionReport r = run_expansion(pr);
  Json payload = expansion_to_json(r);
  EXPECT_EQ(Json::parse(payload.dump()), payload);
  for (std::size_t n = 0; n < r.primed.size(); ++n) {
    std::string text = payload["primed_generators"][r.labels[n] + "'"].get<std::string>();
    EXPECT_EQ(parse_uea(pr.ctx, text), r.primed[n]) << r.labels[n];
  }
  std::vector<IdealPoly> gens;
  for (const auto& c : payload["constraints"]) {
    std::string eq = c.get<std::string>();
    eq = eq.substr(0, eq.size() - 4);  // " = 0"
    gens.push_back(IdealPoly::from_scalar(parse_scalar(eq), alpha_symbols()));
  }
  EXPECT_TRUE(same_ideal(groebner_basis(gens, alpha_symbols()), r.ideal));
}

TEST(RoundTrip, SavedDefinitionLoadsBack) {
  fs::path p = temp_file("so31.json");
  EXPECT_EQ(ck_run({"algebra", "--ck", "w1=sym", "w2=-1", "--save", p.string()}).code, 0);
  LieAlgebra g = load_algebra(p.string());
  EXPECT_TRUE(g.same_structure(make_ck_algebra(Scalar::symbol("w1"), -1)));
  Json a = json_of({"verify", "--file", p.string()});
  EXPECT_EQ(a["exit_code"], 0);
  fs::remove(p);
}

TEST(RoundTrip, ExpandFromDefinitionFile) {
  fs::path p = temp_file("ext.json");
  EXPECT_EQ(ck_run({"algebra", "--name", "ext-galilei", "--save", p.string()}).code, 0);
  Json from_file = json_of({"expand", "--file", p.string(), "--axis", "1"});
  Json built_in = json_of({"expand", "--from", "ext-galilei", "--axis", "1"});
  EXPECT_EQ(from_file["exit_code"], 0);
  EXPECT_EQ(from_file["payload"]["expansion"]["constraints"], built_in["payload"]["expansion"]["constraints"]);
  EXPECT_EQ(from_file["payload"]["expansion"]["primed_generators"], built_in["payload"]["expansion"]["primed_generators"]);
  fs::remove(p);
}

TEST(Values, SubstitutionReport) {
  Json j = json_of({"expand", "--from", "poincare", "--axis", "1", "--values", "a1=1/2", "c1=1", "w1=1"});
  EXPECT_EQ(j["payload"]["substitution"]["satisfied"], true);
  j = json_of({"expand", "--from", "poincare", "--axis", "1", "--values", "a1=1", "c1=1", "w1=1"});
  EXPECT_EQ(j["payload"]["substitution"]["satisfied"], false);
}

}  // namespace
