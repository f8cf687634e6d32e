#include <gtest/gtest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(PAVECOUNT_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), p)) r.out += buf.data();
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "pavecount-cli-test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(Cli, CountExamples) {
  auto r = run("count 4 2");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out)["count"], "10");
  r = run("count 6 3 --induced-vh 1");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out)["count"], "5");
  r = run("count 6 3 --d6");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out)["count"], "16");
  r = run("count 5 2 --induced-fiber 1");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out)["count"], "4");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("count 4 5").code, 2);
  EXPECT_EQ(run("count 6 1 --induced-vh 1").code, 2);
  EXPECT_EQ(run("count 4 2 --d6").code, 2);
  EXPECT_EQ(run("count").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("verify --suite nope").code, 2);
  const auto t = run("count 12 5 --budget-s 0.05");
  EXPECT_EQ(t.code, 3);
  EXPECT_EQ(json::parse(t.out)["error"], "timeout");
  EXPECT_EQ(t.out.find("\"count\""), std::string::npos);
}

TEST(Cli, BudgetFromEnvironment) {
  const std::string cmd = "env PAVECOUNT_BUDGET_S=0.05 " + std::string(PAVECOUNT_CLI) + " count 12 5 >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  EXPECT_EQ(WEXITSTATUS(status), 3);
}

TEST(Cli, CensusWritesRecordsAndManifest) {
  const auto out = scratch("nonsparse42.jsonl");
  auto r = run("census 4 2 --kind nonsparse --out " + out.string());
  ASSERT_EQ(r.code, 0);
  const auto body = slurp(out);
  EXPECT_EQ(count_lines(body), 4u);
  const json manifest = json::parse(slurp(out.string() + ".manifest.json"));
  EXPECT_EQ(manifest["command"], "census");
  EXPECT_EQ(manifest["parameters"]["kind"], "nonsparse");
  EXPECT_EQ(manifest["content_sha256"].get<std::string>().size(), 64u);
  EXPECT_TRUE(manifest.contains("started"));
  EXPECT_TRUE(manifest.contains("finished"));
  EXPECT_TRUE(manifest.contains("tool_version"));

  r = run("census 5 2 --kind sparse");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(count_lines(r.out), 26u);
}

TEST(Census, PavingIsSparsePlusNonsparse) {
  const auto p = run("census 6 3 --kind paving");
  const auto s = run("census 6 3 --kind sparse");
  const auto ns = run("census 6 3 --kind nonsparse");
  ASSERT_EQ(p.code, 0);
  EXPECT_EQ(count_lines(p.out), count_lines(s.out) + count_lines(ns.out));
  EXPECT_EQ(count_lines(s.out), 271u);
}

TEST(Cli, CensusTimeoutRemovesPartialFile) {
  const auto out = scratch("timeout.jsonl");
  fs::remove(out);
  const auto r = run("census 7 3 --kind paving --budget-s 0.05 --out " + out.string());
  EXPECT_EQ(r.code, 3);
  EXPECT_FALSE(fs::exists(out));
}

TEST(Cli, ManifestHashIsStable) {
  const auto a = scratch("a.jsonl"), b = scratch("b.jsonl");
  ASSERT_EQ(run("census 5 2 --kind paving --out " + a.string()).code, 0);
  ASSERT_EQ(run("census 5 2 --kind paving --threads 3 --out " + b.string()).code, 0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_EQ(json::parse(slurp(a.string() + ".manifest.json"))["content_sha256"],
            json::parse(slurp(b.string() + ".manifest.json"))["content_sha256"]);
}

TEST(Cli, VerifySuites) {
  auto r = run("verify --suite vh --nmax 8");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "name,n,r,t,lhs_log2,rhs_log2,verdict");
  EXPECT_EQ(r.out.find(",fails"), std::string::npos);
  r = run("verify --suite shearer --nmax 6");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.find(",fails"), std::string::npos);
  EXPECT_EQ(run("verify --suite all --nmax 5").code, 0);
}

TEST(Cli, TableRowsAndStability) {
  auto r = run("table --nmax 7");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(count_lines(r.out), 5u);
  EXPECT_EQ(r.out.find("verdict"), std::string::npos);
  EXPECT_EQ(run("table --nmax 7 --threads 2").out, r.out);
  r = run("table --nmax 3");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(count_lines(r.out), 1u);
}

TEST(Cli, GraphExportWithSidecar) {
  const auto out = scratch("j42.adj");
  ASSERT_EQ(run("graph 4 2 --out " + out.string()).code, 0);
  const auto adj = slurp(out);
  EXPECT_EQ(adj.substr(0, adj.find('\n')), "6 12");
  const json labels = json::parse(slurp(out.string() + ".labels.json"));
  EXPECT_EQ(labels["labels"].size(), 6u);
  EXPECT_TRUE(fs::exists(out.string() + ".manifest.json"));
}

TEST(Cli, ConstructStreams) {
  auto r = run("construct 6 3 --kind one-large");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(count_lines(r.out), 75u);
  EXPECT_EQ(json::parse(r.out.substr(0, r.out.find('\n')))["provenance"], "one-large-hyperplane");
  r = run("construct 6 3 --kind hybrid");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(count_lines(r.out), 75u);
  r = run("construct 8 3 --kind d6 --max-code 2");
  ASSERT_EQ(r.code, 0);
  EXPECT_GT(count_lines(r.out), 70u);
}
