#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "octoverify_cli/cli.hpp"

namespace cli = octoverify::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "octoverify");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

nlohmann::json read_json(const std::filesystem::path& p) {
  std::ifstream in(p);
  return nlohmann::json::parse(in);
}

}  // namespace

TEST(Usage, HelpAndVersionSucceed) {
  EXPECT_EQ(invoke({"--help"}).code, cli::kExitOk);
  EXPECT_EQ(invoke({"verify", "--help"}).code, cli::kExitOk);
  const Result v = invoke({"--version"});
  EXPECT_EQ(v.code, cli::kExitOk);
}

TEST(Usage, BadInvocationsExitTwo) {
  EXPECT_EQ(invoke({}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"verify"}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"verify", "--manifold", "great:3", "--bogus"}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"verify", "--manifold", "great:3", "--grid", "4"}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"verify", "--manifold", "great:3", "--fd-step", "1"}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"verify", "--manifold", "great:3", "--checks", "lemma,nope"}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"verify", "--manifold", "great:3", "--tolerance", "lemma"}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"verify", "--manifold", "great:3", "--tolerance", "nope=1"}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"verify", "--manifold", "great:3", "--tolerance", "lemma=abc"}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"verify", "--manifold", "great:3", "--format", "csv"}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"verify", "--manifold", "great:3", "--format", "xml"}).code, cli::kExitUsage);
}

TEST(Usage, SpecErrorsPointAtTheOffendingByte) {
  const Result r = invoke({"verify", "--manifold", "product:4,4"});
  EXPECT_EQ(r.code, cli::kExitUsage);
  EXPECT_NE(r.err.find("!= 8"), std::string::npos);
  EXPECT_NE(r.err.find("  product:4,4\n          ^"), std::string::npos);
}

TEST(Catalog, ListsEntries) {
  const auto path = temp("octoverify_cli_catalog.json");
  const Result r = invoke({"catalog", "--out", path.string()});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_NE(r.out.find("product:3,3"), std::string::npos);
  EXPECT_NE(r.out.find("compose:great:3/product:1,1"), std::string::npos);
  const auto j = read_json(path);
  ASSERT_TRUE(j.is_array());
  bool found = false;
  for (const auto& e : j) {
    if (e["name"] == "product:3,3") {
      found = true;
      EXPECT_EQ(e["dim"], 6);
      EXPECT_EQ(e["codim"], 1);
    }
  }
  EXPECT_TRUE(found);
  std::filesystem::remove(path);
}

TEST(Verify, PassingEntryWritesReport) {
  const auto path = temp("octoverify_cli_verify.json");
  const Result r = invoke({"verify", "--manifold", "great:2", "--grid", "8", "--out", path.string(), "--no-timings"});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("theorem2"), std::string::npos);
  const auto j = read_json(path);
  EXPECT_EQ(j["status"], "ok");
  EXPECT_FALSE(j.contains("timings"));
  EXPECT_EQ(j["config"]["grid_requested"], nlohmann::json::array({8}));
  std::filesystem::remove(path);
}

TEST(Verify, ToleranceOverrideCanFailARun) {
  const Result r =
      invoke({"verify", "--manifold", "great:2", "--grid", "8", "--checks", "theorem2", "--tolerance", "eigenmap=1e-12"});
  EXPECT_EQ(r.code, cli::kExitFail);
}

TEST(Verify, NonMinimalEntryExitsOne) {
  const Result r = invoke({"verify", "--manifold", "product:2,4@0.6,0.8", "--grid", "8", "--checks", "minimality,theorem1"});
  EXPECT_EQ(r.code, cli::kExitFail);
  EXPECT_NE(r.out.find("minimality precondition failed"), std::string::npos);
}

TEST(Verify, CsvSidecar) {
  const auto path = temp("octoverify_cli_residuals.csv");
  const Result r = invoke({"verify", "--manifold", "great:2", "--grid", "8", "--checks", "theorem2", "--format", "csv",
                           "--out", path.string()});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header.rfind("node,", 0), 0u);
  std::filesystem::remove(path);
}

TEST(GaussImage, CsvRowsAreUnitNorm) {
  const Result r = invoke({"gauss-image", "--manifold", "great:2", "--grid", "8"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  std::istringstream is(r.out);
  std::string line;
  std::getline(is, line);
  EXPECT_NE(line.find("gamma7"), std::string::npos);
  int rows = 0;
  while (std::getline(is, line)) {
    std::vector<double> cells;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cells.push_back(std::stod(c));
    ASSERT_EQ(cells.size(), 1u + 2u + 8u + 8u);
    double n = 0.0;
    for (std::size_t i = cells.size() - 8; i < cells.size(); ++i) n += cells[i] * cells[i];
    EXPECT_NEAR(n, 1.0, 1e-12);
    ++rows;
  }
  EXPECT_EQ(rows, 64);
}

TEST(GaussImage, EigenDirectionAsJson) {
  const Result r = invoke({"gauss-image", "--manifold", "product:1,1,3", "--grid", "8", "--eigen", "1", "--format", "json"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["normal"], "eta_2");
  EXPECT_EQ(j["samples"].size(), 8u * 8u * 8u * 8u * 8u);
  EXPECT_EQ(invoke({"gauss-image", "--manifold", "great:2", "--grid", "8", "--normal", "5"}).code, cli::kExitUsage);
}

TEST(Spectrum, CompositionSpectrum) {
  const Result r = invoke({"spectrum", "--manifold", "compose:great:3/product:1,1", "--grid", "8"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  const auto sigma = j["sigma"].get<std::vector<double>>();
  ASSERT_EQ(sigma.size(), 5u);
  EXPECT_NEAR(sigma[4], 2.0, 1e-8);
  EXPECT_EQ(j["normals"].size(), 5u);
  EXPECT_EQ(invoke({"spectrum", "--manifold", "great:2", "--grid", "8", "--node", "100000"}).code, cli::kExitUsage);
}

TEST(Hemisphere, CurveIsRefusedWithoutFailing) {
  const Result r = invoke({"hemisphere", "--manifold", "great:1", "--grid", "16"});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_NE(r.out.find("refused"), std::string::npos);
  const Result s = invoke({"hemisphere", "--manifold", "great:2", "--grid", "8", "--candidates", "64"});
  EXPECT_EQ(s.code, cli::kExitOk);
  EXPECT_NE(s.out.find("best_margin="), std::string::npos);
}
