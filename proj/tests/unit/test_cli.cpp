#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run cbd_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = cbd::cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::path(CBD_TEST_TMPDIR) / ::testing::UnitTest::GetInstance()->current_test_info()->name();
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& content) const {
    std::ofstream(path(name)) << content;
    return path(name);
  }

  std::string emit(const std::string& key, std::vector<std::string> extra = {}) const {
    std::vector<std::string> args{"examples", "emit", key, "-o", path(key + ".json")};
    args.insert(args.end(), extra.begin(), extra.end());
    const auto r = cbd_run(args);
    EXPECT_EQ(r.status, 0) << r.err;
    return path(key + ".json");
  }

  fs::path dir_;
};

const char* kBadSystem = R"({"format": "cbd-system/1", "name": "bad", "contexts": [
  {"id": "c9", "properties": ["a"], "table": {"+1": "1/2", "-1": "2/5"}}]})";

}  // namespace

TEST_F(Cli, ValidateNamesTheFailingContext) {
  const auto r = cbd_run({"validate", write("bad.json", kBadSystem)});
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.err.find("c9"), std::string::npos);
  const auto ok = cbd_run({"validate", emit("kcbs")});
  EXPECT_EQ(ok.status, 0);
  EXPECT_EQ(ok.out, "ok: kcbs (5 contexts, 10 cells)\n");
}

TEST_F(Cli, AnalyzeReportsVerdictsInJson) {
  const auto r = cbd_run({"analyze", emit("magic-boxes"), "--mode", "both", "--no-timing"});
  ASSERT_EQ(r.status, 0) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["format"], "cbd-report/1");
  EXPECT_FALSE(doc.contains("timing_ms"));
  ASSERT_EQ(doc["verdicts"].size(), 2u);
  for (const auto& v : doc["verdicts"]) {
    EXPECT_TRUE(v["contextual"].get<bool>());
    EXPECT_TRUE(v["agree"].get<bool>());
  }
  EXPECT_EQ(doc["cyclic"]["lhs"], "3");
  EXPECT_EQ(doc["cyclic"]["rhs"], "1");
}

TEST_F(Cli, AnalyzeTextFormat) {
  const auto r = cbd_run({"analyze", emit("kcbs", {"--product=-3/5"}), "--format", "text", "--no-timing"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("verdict[cbd]: noncontextual"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("lhs 3, rhs 3"), std::string::npos);
}

TEST_F(Cli, EmitsWitnessAndCertificate) {
  const auto w = cbd_run({"analyze", emit("kcbs", {"--product=-1/2"}), "--emit-witness", path("w.json"), "--no-timing"});
  ASSERT_EQ(w.status, 0) << w.err;
  EXPECT_EQ(json::parse(std::ifstream(path("w.json")))["format"], "cbd-coupling/1");
  const auto c = cbd_run({"analyze", emit("szlg"), "--emit-certificate", path("c.json"), "--mode", "both"});
  ASSERT_EQ(c.status, 0) << c.err;
  EXPECT_TRUE(fs::exists(path("c.cbd.json")));
  EXPECT_TRUE(fs::exists(path("c.traditional.json")));
  EXPECT_EQ(json::parse(std::ifstream(path("c.cbd.json")))["format"], "cbd-certificate/1");
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(cbd_run({"analyze", path("missing.json")}).status, 1);
  EXPECT_EQ(cbd_run({"analyze", write("bad.json", kBadSystem)}).status, 1);
  EXPECT_EQ(cbd_run({"analyze", emit("kcbs"), "--mode", "sideways"}).status, 1);
  EXPECT_EQ(cbd_run({"analyze", dir_.string()}).status, 1);
  EXPECT_EQ(cbd_run({"frobnicate"}).status, 1);
  EXPECT_EQ(cbd_run({"--help"}).status, 0);
  // A non-cyclic system above the cell limit.
  std::string big = R"({"format": "cbd-system/1", "name": "big", "contexts": [)";
  for (int c = 0; c < 7; ++c) {
    big += std::string(c ? "," : "") + R"({"id": "c)" + std::to_string(c) + R"(", "properties": ["a)" +
           std::to_string(c) + R"(", "b", "c"], "table": {"+1,+1,+1": "1"}})";
  }
  big += "]}";
  const auto r = cbd_run({"analyze", write("big.json", big)});
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.err.find("21"), std::string::npos) << r.err;
  EXPECT_EQ(cbd_run({"analyze", path("big.json"), "--max-cells", "21", "--no-timing"}).status, 0);
}

TEST_F(Cli, MaxCellsFromEnvironment) {
  const auto kcbs = emit("kcbs");
  setenv("CBD_MAX_CELLS", "4", 1);
  const auto r = cbd_run({"analyze", kcbs, "--no-timing"});
  unsetenv("CBD_MAX_CELLS");
  ASSERT_EQ(r.status, 0) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["max_cells"], 4);
  EXPECT_EQ(doc["verdicts"][0]["method"], "cyclic-formula");
  EXPECT_TRUE(doc["verdicts"][0]["lp_iterations"].is_null());
}

TEST_F(Cli, BatchIsOrderedByFilename) {
  fs::create_directories(dir_ / "batch");
  for (const char* key : {"szlg", "kcbs", "epr-bb"}) {
    cbd_run({"examples", "emit", key, "-o", (dir_ / "batch" / (std::string(key) + ".json")).string()});
  }
  std::ofstream(dir_ / "batch" / "notes.txt") << "ignored";
  const auto a = cbd_run({"analyze", (dir_ / "batch").string(), "--batch", "--no-timing"});
  ASSERT_EQ(a.status, 0) << a.err;
  const json doc = json::parse(a.out);
  ASSERT_EQ(doc["reports"].size(), 3u);
  EXPECT_EQ(doc["reports"][0]["file"], "epr-bb.json");
  EXPECT_EQ(doc["reports"][1]["file"], "kcbs.json");
  EXPECT_EQ(doc["reports"][2]["file"], "szlg.json");
  EXPECT_EQ(cbd_run({"analyze", (dir_ / "batch").string(), "--batch", "--no-timing"}).out, a.out);

  std::ofstream(dir_ / "batch" / "broken.json") << kBadSystem;
  const auto b = cbd_run({"analyze", (dir_ / "batch").string(), "--batch", "--no-timing"});
  EXPECT_EQ(b.status, 1);
  EXPECT_EQ(json::parse(b.out)["summary"][0]["cbd"], "error");
  EXPECT_EQ(cbd_run({"analyze", (dir_ / "batch").string(), "--batch", "--emit-witness", path("w.json")}).status, 1);
}

TEST_F(Cli, CouplingCommand) {
  std::string doc = R"({"format": "cbd-system/1", "name": "s", "contexts": [
    {"id": "c1", "properties": ["q"], "table": {"+1": "1/5", "-1": "4/5"}},
    {"id": "c2", "properties": ["q"], "table": {"+1": "1/2", "-1": "1/2"}},
    {"id": "c3", "properties": ["q"], "table": {"+1": "7/10", "-1": "3/10"}}]})";
  const auto r = cbd_run({"coupling", write("s.json", doc), "--property", "q"});
  ASSERT_EQ(r.status, 0) << r.err;
  const json c = json::parse(r.out);
  EXPECT_EQ(c["table"]["+1,+1,+1"], "1/5");
  EXPECT_EQ(c["table"]["-1,+1,+1"], "3/10");
  EXPECT_EQ(c["table"]["-1,-1,+1"], "1/5");
  EXPECT_EQ(c["table"]["-1,-1,-1"], "3/10");
  EXPECT_EQ(cbd_run({"coupling", path("s.json"), "--property", "nope"}).status, 1);
}

TEST_F(Cli, AssignCommand) {
  const auto r = cbd_run({"assign", emit("ks-4d"), "--count"});
  ASSERT_EQ(r.status, 0) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_FALSE(doc["satisfiable"].get<bool>());
  EXPECT_EQ(doc["count"], 0);
  EXPECT_EQ(doc["parity"]["status"], "contradiction");
}

TEST_F(Cli, ExamplesList) {
  const auto r = cbd_run({"examples", "list"});
  EXPECT_EQ(r.status, 0);
  for (const char* key : {"kcbs", "epr-bb", "szlg", "magic-boxes", "ks-4d", "ks-3d"}) {
    EXPECT_NE(r.out.find(key), std::string::npos);
  }
  EXPECT_EQ(cbd_run({"examples", "emit", "nope"}).status, 1);
  EXPECT_EQ(cbd_run({"examples", "emit", "kcbs", "--product=-3/2"}).status, 1);
}
