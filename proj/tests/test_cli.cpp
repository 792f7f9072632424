#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "linvol/cli.hpp"
#include "support.hpp"

using namespace linvol;
using linvol::io::json;

namespace {

struct Result {
  int code = 0;
  std::string out, err;
  json report() const { return json::parse(out); }
};

Result runCli(std::vector<std::string> args) {
  args.insert(args.begin(), "linvol");
  std::ostringstream out, err;
  Result r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

const std::string kFigure1 = "A B A C D C|D E B E";

std::string tempPath(const std::string& name) { return (std::filesystem::path(::testing::TempDir()) / name).string(); }

}  // namespace

TEST(Cli, Validate) {
  auto r = runCli({"validate", "--perm", kFigure1});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = r.report();
  EXPECT_EQ(j["d"], 5);
  EXPECT_EQ(j["l"], 6);
  EXPECT_EQ(j["m"], 4);
  EXPECT_EQ(j["classes"]["a0"], (json{"A", "C"}));
  EXPECT_EQ(j["classes"]["a1"], (json{"E"}));
  EXPECT_EQ(j["classes"]["a01"], (json{"B", "D"}));
  EXPECT_TRUE(j["warnings"].empty());
  EXPECT_EQ(j["meta"]["command"], "validate");
  EXPECT_EQ(j["meta"]["version"], cli::kVersion);

  auto w = runCli({"validate", "--perm", "A B|A B"}).report();
  EXPECT_EQ(w["warnings"].size(), 1u);
}

TEST(Cli, PermutationFromFile) {
  const auto path = tempPath("figure1.perm");
  std::ofstream(path) << "A B A C D C\nD E B E\n";
  auto a = runCli({"stratum", "--perm", path}).report();
  auto b = runCli({"stratum", "--perm", kFigure1}).report();
  EXPECT_EQ(a["kappa"], b["kappa"]);
  EXPECT_EQ(a["kappa"]["orders"], (json{2, 2}));
  EXPECT_EQ(a["hDimension"], 2);
  // hashed by content, so the source of the permutation does not matter
  EXPECT_EQ(a["meta"]["configHash"], b["meta"]["configHash"]);
  EXPECT_EQ(a["meta"]["config"]["perm"], kFigure1);

  // a relative path in a config file is looked up next to the file
  const auto dir = std::filesystem::path(::testing::TempDir()) / "cfgdir";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "f1.perm") << "A B A C D C\nD E B E\n";
  std::ofstream(dir / "stratum.json") << R"({"perm": "f1.perm"})";
  auto c = runCli({"stratum", "--config", (dir / "stratum.json").string()});
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_EQ(c.report()["meta"]["configHash"], b["meta"]["configHash"]);
}

TEST(Cli, ZeroStepsIsTheIdentity) {
  auto j = runCli({"induct", "--perm", kFigure1, "--lambda", "1,2,2,3,3", "--steps", "0"}).report();
  EXPECT_EQ(j["path"]["length"], 0);
  EXPECT_EQ(j["path"]["product"], io::toJson(BigMatrix::identity(5)));
  EXPECT_EQ(j["lengths"], j["lambda"]);
}

TEST(Cli, InductMatchesTheLibrary) {
  auto j = runCli({"induct", "--perm", kFigure1, "--seed", "7", "--steps", "25"}).report();
  Rng rng(7);
  auto lambda = sampleAdmissibleRational(linvol::testing::figure1(), rng, 256);
  auto r = inductPath(linvol::testing::figure1(), lambda, 25);
  EXPECT_EQ(j["lambda"], io::toJson(lambda));
  EXPECT_EQ(j["lengths"], io::toJson(r.lengths));
  EXPECT_EQ(j["path"], io::toJson(r.path));

  auto z = runCli({"induct", "--perm", kFigure1, "--seed", "7", "--steps", "5", "--zorich"}).report();
  EXPECT_EQ(z["zorichRuns"].size(), 5u);
}

TEST(Cli, StratumThenCover) {
  auto s = runCli({"stratum", "--perm", "A A|B C B C D E D E"}).report();
  std::string kappa;
  for (const auto& n : s["kappa"]["orders"]) kappa += (kappa.empty() ? "" : ",") + std::to_string(n.get<int>());
  auto byOrders = runCli({"cover", "--kappa", kappa}).report();
  auto byPerm = runCli({"cover", "--perm", "A A|B C B C D E D E"}).report();
  EXPECT_EQ(byOrders["cover"], byPerm["cover"]);
  EXPECT_EQ(byPerm["cover"]["orders"], (json{6, 0}));
  EXPECT_EQ(byPerm["cover"]["genus"], 4);
}

TEST(Cli, SuspendPreservesArea) {
  auto a = runCli({"suspend", "--perm", kFigure1, "--seed", "4", "--steps", "0"}).report();
  auto b = runCli({"suspend", "--perm", kFigure1, "--seed", "4", "--steps", "6"}).report();
  EXPECT_EQ(b["heights"].size(), 5u);
  EXPECT_EQ(a["lambda"].size(), 5u);
  EXPECT_EQ(a["area"], b["area"]);
  EXPECT_NE(a["heights"], b["heights"]);
  // small integer lengths tie almost at once
  EXPECT_EQ(runCli({"suspend", "--perm", kFigure1, "--lambda", "1,2,2,3,3", "--steps", "3"}).code, 1);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(runCli({}).code, 2);
  EXPECT_EQ(runCli({"nonsense"}).code, 2);
  EXPECT_EQ(runCli({"induct", "--perm", kFigure1, "--steps", "abc"}).code, 2);
  EXPECT_EQ(runCli({"induct", "--perm", kFigure1, "--steps", "-3"}).code, 2);
  EXPECT_EQ(runCli({"validate"}).code, 2);  // missing permutation

  auto bad = runCli({"validate", "--perm", "A A B|B B A"});
  EXPECT_EQ(bad.code, 1);
  auto e = json::parse(bad.err);
  EXPECT_EQ(e["error"]["code"], "LabelCountError");
  EXPECT_EQ(e["error"]["command"], "validate");

  EXPECT_EQ(runCli({"induct", "--perm", kFigure1, "--lambda", "1,2,2,3,4"}).code, 1);  // SumMismatch
  EXPECT_EQ(runCli({"weakmix", "scan", "--perm", "A A B B|C C", "--samples", "1"}).code, 1);

  const auto cfg = tempPath("unknown.json");
  std::ofstream(cfg) << R"({"stepz": 3})";
  auto u = runCli({"induct", "--perm", kFigure1, "--config", cfg});
  EXPECT_EQ(u.code, 2);
  EXPECT_EQ(json::parse(u.err)["error"]["code"], "ConfigError");

  const auto typed = tempPath("typed.json");
  std::ofstream(typed) << R"({"steps": "three"})";
  EXPECT_EQ(runCli({"induct", "--perm", kFigure1, "--config", typed}).code, 2);
  EXPECT_EQ(runCli({"induct", "--perm", kFigure1, "--config", tempPath("missing.json")}).code, 2);
}

TEST(Cli, ReportsAreReproducible) {
  std::vector<std::string> args{"veech", "--perm", kFigure1, "--seed", "3", "--steps", "400", "--tgrid", "q6"};
  auto a = runCli(args), b = runCli(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  args[4] = "4";
  EXPECT_NE(runCli(args).out, a.out);

  std::vector<std::string> ly{"lyapunov", "--perm", "A A B B|C C", "--steps", "200", "--batches", "4", "--warmup", "10"};
  auto c = runCli(ly), d = runCli(ly);
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_EQ(c.out, d.out);
}

TEST(Cli, ConfigFileEqualsFlags) {
  const auto cfg = tempPath("veech.json");
  std::ofstream(cfg) << R"({"perm": "A B A C D C|D E B E", "seed": 3, "steps": 300, "tgrid": "q5", "decaying": 1e-6})";
  auto a = runCli({"veech", "--config", cfg});
  auto b = runCli({"veech", "--perm", kFigure1, "--seed", "3", "--steps", "300", "--tgrid", "q5"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.report()["meta"]["configHash"], b.report()["meta"]["configHash"]);
  EXPECT_EQ(a.out, b.out);
  // flags win over the file
  auto c = runCli({"veech", "--config", cfg, "--steps", "200"}).report();
  EXPECT_EQ(c["meta"]["config"]["steps"], 200);
  EXPECT_NE(c["meta"]["configHash"], a.report()["meta"]["configHash"]);
}

TEST(Cli, OutputFile) {
  const auto path = tempPath("stratum.json");
  auto r = runCli({"stratum", "--perm", kFigure1, "--out", path});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  auto j = json::parse(in);
  EXPECT_EQ(j["kappa"]["orders"], (json{2, 2}));
}

TEST(Cli, VeechSeriesForOneVector) {
  auto j = runCli({"veech", "--perm", kFigure1, "--steps", "100", "--v", "1,0,0,0,0"}).report();
  for (const auto& x : j["series"]["distances"]) EXPECT_EQ(x, "0");
  EXPECT_EQ(runCli({"veech", "--perm", kFigure1, "--v", "1/2,1/2"}).code, 1);
}

TEST(Cli, WeakmixScanSmall) {
  auto r = runCli({"weakmix", "scan", "--perm", kFigure1, "--samples", "2", "--tgrid", "q3", "--steps", "200", "--bits", "128", "--N", "8", "--orbit", "500"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = r.report();
  EXPECT_EQ(j["meta"]["command"], "weakmix scan");
  EXPECT_EQ(j["samples"].size(), 2u);
  EXPECT_EQ(j["nontrivialPairs"], 6);
}
