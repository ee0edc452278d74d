#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cdcurv/cli.hpp"
#include "cdcurv/json_io.hpp"

using namespace cdcurv;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Result run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Result r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

const std::string szego = R"({"kind":"power","alpha":"1"})";
const std::string bergman = R"({"kind":"power","alpha":"2"})";
const std::string exp_bergman = R"({"kind":"exp_poly","base":{"kind":"power","alpha":"2"},"poly":["0","1"]})";

}  // namespace

TEST(Cli, CurvatureOfSzego) {
  const auto r = run_cli({"curvature", "--spec", szego, "--order", "8"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const Json expected = Json::array({"-1", "-2", "-3", "-4", "-5", "-6", "-7", "-8"});
  EXPECT_EQ(r.json(), expected);
}

TEST(Cli, GlobalOptionBeforeSubcommand) {
  const auto r = run_cli({"--order", "8", "curvature", "--spec", szego});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_EQ(r.json().size(), 8u);
}

TEST(Cli, CompositionSumValue) {
  const auto r = run_cli({"lemma-2n", "--n", "10"});
  ASSERT_EQ(r.code, cli::kOk);
  EXPECT_EQ(r.json(), Json::parse(R"({"value":"1/5","expected":"1/5","ok":true})"));
}

TEST(Cli, SimilarExpPerturbation) {
  const auto r = run_cli({"similar", "--t", exp_bergman, "--s", bergman});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const Json j = r.json();
  EXPECT_EQ(j.at("verdict"), "CERTIFIED");
  EXPECT_EQ(j.at("psi").at(0), "0");
  EXPECT_EQ(j.at("psi").at(1), "1");
  for (std::size_t n = 2; n < j.at("psi").size(); ++n) EXPECT_EQ(j.at("psi").at(n), "0");
  EXPECT_EQ(j.at("flags").at("hypercontraction_scope"), "checked-at-realization");
}

TEST(Cli, SimilarFailureExitCode) {
  const auto r = run_cli({"similar", "--t", R"({"kind":"power","alpha":"3"})", "--s", bergman});
  EXPECT_EQ(r.code, cli::kVerdictFailure);
  EXPECT_EQ(r.json().at("verdict"), "NOT_CERTIFIED");
}

TEST(Cli, SimilarFrames) {
  const std::string s = R"({"h0":{"kind":"power","alpha":"2"},"h1":{"kind":"power","alpha":"4"}})";
  const std::string t =
      R"({"h0":{"kind":"exp_poly","base":{"kind":"power","alpha":"2"},"poly":["0","1"]},"h1":{"kind":"exp_poly","base":{"kind":"power","alpha":"4"},"poly":["0","1"]}})";
  const auto r = run_cli({"similar", "--t", t, "--s", s});
  ASSERT_EQ(r.code, cli::kOk) << r.out << r.err;
  EXPECT_EQ(r.json().at("flags").at("condition2_ok"), true);
}

TEST(Cli, VerdictFailures) {
  EXPECT_EQ(run_cli({"pd-check", "--spec", R"({"kind":"coeffs","a":["1","-1"]})"}).code, cli::kVerdictFailure);
  EXPECT_EQ(run_cli({"pd-check", "--spec", szego}).code, cli::kOk);
  const auto shift = run_cli({"--dim", "5", "shift", "--spec", szego, "--hyper", "2"});
  EXPECT_EQ(shift.code, cli::kVerdictFailure);
  EXPECT_EQ(shift.json().at("defect").at("first_negative"), 1);
  const auto homog = run_cli({"homogeneous", "--h0", szego, "--h1", bergman, "--a", "1"});
  EXPECT_EQ(homog.code, cli::kVerdictFailure);
  EXPECT_EQ(homog.json().at("homogeneous"), false);
  EXPECT_EQ(run_cli({"homogeneous", "--h0", szego, "--h1", R"({"kind":"power","alpha":"3"})", "--a", "1"}).code, cli::kOk);
  EXPECT_EQ(run_cli({"theorem-p", "--p", "1", "--spec", bergman}).code, cli::kVerdictFailure);
  EXPECT_EQ(run_cli({"theorem-p", "--p", "2", "--spec", szego}).code, cli::kOk);
}

TEST(Cli, Fb2Report) {
  const auto r = run_cli({"--order", "8", "fb2", "--spec",
                          R"({"h0":{"kind":"power","alpha":"1"},"h1":{"kind":"power","alpha":"3"},"a":"1"})"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const Json j = r.json();
  EXPECT_EQ(j.at("equal"), true);
  EXPECT_EQ(j.at("trace_curv").at(0), "-4");
  EXPECT_EQ(j.at("det").at(0), "2");
  EXPECT_EQ(j.at("theta_sq").at(0), "1/2");
  EXPECT_EQ(j.at("additivity").at("additive"), true);
  EXPECT_EQ(j.at("additivity").at("lambda"), "1");
}

TEST(Cli, Fb3NeedsK) {
  const std::string spec = R"({"h0":{"kind":"power","alpha":"1"},"h1":{"kind":"power","alpha":"3"},"h2":{"kind":"power","alpha":"5"}})";
  EXPECT_EQ(run_cli({"fb3", "--spec", spec}).code, cli::kInputError);
  const std::string with_k = spec.substr(0, spec.size() - 1) + R"(,"k":"4/3"})";
  const auto r = run_cli({"--order", "6", "fb3", "--spec", with_k});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_EQ(r.json().at("trace_curv").at(0), "-9");
}

TEST(Cli, TensorAndIdentity) {
  const auto t = run_cli({"--order", "8", "tensor", "--spec", R"({"h1":{"kind":"power","alpha":"1"},"sections":[["1"],["0","1"]]})"});
  EXPECT_EQ(t.code, cli::kOk) << t.err;
  const auto d = run_cli({"det-identity", "--trials", "20", "--n", "4"});
  EXPECT_EQ(d.code, cli::kOk);
  EXPECT_EQ(d.json().at("failures"), 0);
}

TEST(Cli, RigidityAndHs) {
  const auto r = run_cli({"rigidity", "--k0", "1", "--k1", "5", "--m-max", "1000"});
  ASSERT_EQ(r.code, cli::kOk);
  EXPECT_EQ(r.json().at("exponent"), "-1");
  EXPECT_EQ(r.json().at("samples").size(), 3u);
  const auto hs = run_cli({"hs-check", "--spec", szego, "--w", "0.3"});
  ASSERT_EQ(hs.code, cli::kOk) << hs.err;
  EXPECT_NEAR(hs.json().at("hs_sq").get<double>(), 1 / (0.91 * 0.91), 1e-6);
  const auto hs_imag = run_cli({"hs-check", "--spec", bergman, "--w", "0.6i"});
  EXPECT_EQ(hs_imag.code, cli::kOk) << hs_imag.err;
}

TEST(Cli, InputErrors) {
  EXPECT_EQ(run_cli({}).code, cli::kInputError);
  EXPECT_EQ(run_cli({"bogus"}).code, cli::kInputError);
  EXPECT_EQ(run_cli({"curvature"}).code, cli::kInputError);
  const auto malformed = run_cli({"curvature", "--spec", R"({"kind":"nope"})"});
  EXPECT_EQ(malformed.code, cli::kInputError);
  EXPECT_NE(malformed.err.find("MalformedSpec"), std::string::npos);
  EXPECT_EQ(run_cli({"curvature", "--spec", "{not json"}).code, cli::kInputError);
  EXPECT_EQ(run_cli({"--order", "2", "curvature", "--spec", szego}).code, cli::kInputError);
  EXPECT_EQ(run_cli({"--format", "xml", "lemma-2n", "--n", "3"}).code, cli::kInputError);
  EXPECT_EQ(run_cli({"--grid", "0.5,1.5", "similar", "--t", exp_bergman, "--s", bergman}).code, cli::kInputError);
  EXPECT_EQ(run_cli({"lemma-2n", "--n", "40"}).code, cli::kInputError);
  EXPECT_EQ(run_cli({"hs-check", "--spec", szego, "--w", "1.5"}).code, cli::kInputError);
}

TEST(Cli, HelpExitsCleanly) { EXPECT_EQ(run_cli({"--help"}).code, cli::kOk); }

TEST(Cli, SpecFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "cdcurv_cli_spec.json";
  std::ofstream(path) << szego;
  const auto r = run_cli({"curvature", "--spec", "@" + path.string(), "--order", "4"});
  std::filesystem::remove(path);
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_EQ(r.json(), Json::parse(R"(["-1","-2","-3","-4"])"));
  EXPECT_EQ(run_cli({"curvature", "--spec", "@/nonexistent/spec.json"}).code, cli::kInputError);
}

TEST(Cli, OrderFromEnvironment) {
  ::setenv("CDCURV_ORDER", "5", 1);
  const auto from_env = run_cli({"curvature", "--spec", szego});
  const auto explicit_order = run_cli({"curvature", "--spec", szego, "--order", "6"});
  ::unsetenv("CDCURV_ORDER");
  ASSERT_EQ(from_env.code, cli::kOk) << from_env.err;
  EXPECT_EQ(from_env.json().size(), 5u);
  EXPECT_EQ(explicit_order.json().size(), 6u);
}

TEST(Cli, JsonRoundTripIsByteIdentical) {
  const std::vector<std::vector<std::string>> commands{
      {"curvature", "--spec", exp_bergman},
      {"similar", "--t", exp_bergman, "--s", bergman},
      {"rigidity", "--k0", "2", "--k1", "3", "--m-max", "1000"},
      {"hs-check", "--spec", szego, "--w", "0.3"},
      {"fb2", "--spec", R"({"h0":{"kind":"power","alpha":"1"},"h1":{"kind":"power","alpha":"3"},"a":"1"})"},
      {"det-identity", "--trials", "5"}};
  for (const auto& args : commands) {
    const auto r = run_cli(args);
    ASSERT_FALSE(r.out.empty()) << args[0];
    EXPECT_EQ(r.json().dump() + "\n", r.out) << args[0];
  }
}

TEST(Cli, DeterministicUnderSeed) {
  const auto a = run_cli({"--seed", "7", "det-identity", "--trials", "30", "--n", "5"});
  const auto b = run_cli({"--seed", "7", "det-identity", "--trials", "30", "--n", "5"});
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.json().at("seed"), 7);
  EXPECT_EQ(a.json().at("singular_cases"), 3);
}

TEST(Cli, TableFormat) {
  const auto r = run_cli({"--format", "table", "lemma-2n", "--n", "3"});
  ASSERT_EQ(r.code, cli::kOk);
  EXPECT_NE(r.out.find("value"), std::string::npos);
  EXPECT_NE(r.out.find("2/3"), std::string::npos);
  EXPECT_THROW(Json::parse(r.out), Json::exception);
}
