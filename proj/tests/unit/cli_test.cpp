#include <gtest/gtest.h>

#include <sstream>

#include "cli.hpp"
#include "datasets.hpp"
#include "json.hpp"
#include "reports.hpp"

using fixtures::TempDir;
using nlohmann::json;

namespace {

struct Outcome {
  int status;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = dyneval::cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

std::string str(const std::filesystem::path& p) { return p.string(); }

}  // namespace

TEST(Cli, EvaluateWritesReportAndSummary) {
  TempDir dir;
  const auto manifest = fixtures::write_dataset(dir.path(), fixtures::SmallDataset{});
  const auto config = fixtures::write_default_config(dir.path());
  const auto r = run({"evaluate", str(manifest), str(config), "-o", str(dir / "report.json"),
                      "--plot-data", str(dir / "plots")});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto summary = json::parse(r.out);
  EXPECT_EQ(summary["S"], 32);
  EXPECT_EQ(summary["label"], "excellent");
  EXPECT_TRUE(std::filesystem::exists(dir / "report.json"));
  EXPECT_TRUE(std::filesystem::exists(dir / "plots" / "elements.csv"));

  const auto stdout_report = run({"evaluate", str(manifest), str(config)});
  ASSERT_EQ(stdout_report.status, 0);
  EXPECT_EQ(stdout_report.out, fixtures::read_file(dir / "report.json"));
}

TEST(Cli, SelectModePrefersTheEvenMode) {
  TempDir dir;
  // Characteristic-level scores: mode 0 = (4, 4), mode 1 = (3, 5).
  const auto report = fixtures::make_report("sys", 0.0, {1, 2, 2, 1},
                                            [](std::size_t, std::size_t l, std::size_t m, std::size_t) {
                                              const double v = l == 0 ? 4.0 : (m == 0 ? 3.0 : 5.0);
                                              return std::pair{v, v};
                                            });
  dyneval::write_report(dir / "r.json", report);
  const auto r = run({"select-mode", str(dir / "r.json")});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto doc = json::parse(r.out);
  EXPECT_EQ(doc["tie_set"]["members"], json({"mode0", "mode1"}));
  EXPECT_EQ(doc["optimal"], json({"mode0"}));
  ASSERT_EQ(doc["candidates"].size(), 2u);
  EXPECT_NEAR(doc["candidates"][0]["product"].get<double>(), 16.0, 1e-9);
  EXPECT_NEAR(doc["candidates"][1]["product"].get<double>(), 15.0, 1e-9);
}

TEST(Cli, CompareSelectsEvenSystem) {
  TempDir dir;
  const auto per_mode = [](std::vector<double> v) {
    return [v](std::size_t, std::size_t l, std::size_t, std::size_t) { return std::pair{v[l], v[l]}; };
  };
  dyneval::write_report(dir / "a.json", fixtures::make_report("even", 0.0, {1, 3, 1, 1}, per_mode({4, 4, 4})));
  dyneval::write_report(dir / "b.json", fixtures::make_report("uneven", 0.0, {1, 3, 1, 1}, per_mode({5, 4, 3})));
  const auto r = run({"compare", str(dir / "b.json"), str(dir / "a.json")});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["optimal"], json({"even"}));
}

TEST(Cli, ForecastAffineArchive) {
  TempDir dir;
  const double values[] = {5.0, 4.5, 4.0};
  for (int j = 0; j < 3; ++j) {
    dyneval::write_report(dir / ("r" + std::to_string(j) + ".json"),
                          fixtures::constant_report("sys", static_cast<double>(j), values[j]));
  }
  const auto r = run({"forecast", str(dir.path()), "--v-star", "3.0", "--basis-size", "2"});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto doc = json::parse(r.out);
  EXPECT_EQ(doc["trend"], "degrading");
  EXPECT_NEAR(doc["next_forecast"]["value"].get<double>(), 3.5, 1e-9);
  EXPECT_EQ(doc["next_examination"]["status"], "crossing");
  EXPECT_NEAR(doc["next_examination"]["since_first"].get<double>(), 4.0, 1e-6);
  EXPECT_TRUE(doc["next_examination"]["extrapolated"].get<bool>());

  const auto a = run({"forecast", str(dir.path())});
  ASSERT_EQ(a.status, 0) << a.err;
  const auto auto_doc = json::parse(a.out);
  EXPECT_EQ(auto_doc["v_star"]["value"], 4.0);
  EXPECT_EQ(auto_doc["next_examination"]["status"], "crossing");
  EXPECT_NEAR(auto_doc["next_examination"]["time"].get<double>(), 2.0, 1e-9);
}

TEST(Cli, GenerateAndValidate) {
  TempDir dir;
  fixtures::write_file(dir / "spec.json", R"({"schema_version": "1.0", "seed": 4, "profile": "disturbed",
    "shape": {"elements": 2, "modes": 2, "characteristics": 1, "criteria": 2}, "random_injections": 1})");
  const auto g = run({"generate", str(dir / "spec.json"), "-o", str(dir / "out")});
  ASSERT_EQ(g.status, 0) << g.err;
  EXPECT_EQ(json::parse(g.out)["injected_cells"], 2);
  const auto v = run({"validate", str(dir / "out" / "manifest.json")});
  ASSERT_EQ(v.status, 0) << v.err;
  EXPECT_TRUE(json::parse(v.out)["valid"].get<bool>());

  ASSERT_EQ(run({"generate", str(dir / "spec.json"), "-o", str(dir / "again")}).status, 0);
  ASSERT_EQ(run({"generate", str(dir / "spec.json"), "-o", str(dir / "reseeded"), "--seed", "5"}).status, 0);
  const auto signal = "signals/n0_l0.csv";
  EXPECT_EQ(fixtures::read_file(dir / "out" / signal), fixtures::read_file(dir / "again" / signal));
  EXPECT_NE(fixtures::read_file(dir / "out" / signal), fixtures::read_file(dir / "reseeded" / signal));
}

TEST(Cli, FailuresAreMachineReadable) {
  TempDir dir;
  fixtures::SmallDataset spec;
  spec.count = 100;
  const auto manifest = fixtures::write_dataset(dir.path(), spec);
  fixtures::write_file(dir / "signals/n0_l1.csv", "t,c0,c1\n0,0,0\n");
  const auto r = run({"validate", str(manifest)});
  EXPECT_EQ(r.status, 1);
  const auto err = json::parse(r.err)["error"];
  EXPECT_EQ(err["kind"], "grid_mismatch");
  EXPECT_EQ(err["coordinates"]["n"], 0);
  EXPECT_EQ(err["coordinates"]["l"], 1);
  EXPECT_NE(err["message"].get<std::string>().find("n0_l1.csv"), std::string::npos);

  EXPECT_EQ(run({"evaluate"}).status, 2);
  EXPECT_EQ(run({"frobnicate"}).status, 2);
  const auto missing = run({"select-mode", str(dir / "nope.json")});
  EXPECT_EQ(missing.status, 1);
  EXPECT_EQ(json::parse(missing.err)["error"]["kind"], "io");
}
