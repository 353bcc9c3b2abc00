#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cache.hpp"
#include "ahlab/verifier.hpp"
#include "cli.hpp"

namespace fs = std::filesystem;
using ahlab::cli::run;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;

  nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Result ahlab_run(std::vector<std::string> args) {
  args.insert(args.begin(), "ahlab");
  std::ostringstream out, err;
  Result r;
  r.code = run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("ahlab-test-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "-" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string str() const { return path_.string(); }
  std::string file(const std::string& name, const std::string& content) const {
    const auto p = path_ / name;
    std::ofstream(p) << content;
    return p.string();
  }

 private:
  fs::path path_;
};

nlohmann::json without_timing(nlohmann::json j) {
  j.erase("timing");
  return j;
}

}  // namespace

TEST(Cli, VerifySpaceSextics) {
  const auto r = ahlab_run({"--format", "json", "verify-ah", "--n", "3", "--d", "6"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.json();
  EXPECT_EQ(j["command"], "verify-ah");
  EXPECT_TRUE(j["result"]["agrees"].get<bool>());
  bool saw = false;
  for (const auto& c : j["result"]["cases"]) {
    if (c["case"]["k"] == 21) {
      saw = true;
      EXPECT_EQ(c["hilbert"]["verdict"], "independent");
    }
  }
  EXPECT_TRUE(saw) << r.out;
}

TEST(Cli, SylvesterDecomposition) {
  const auto r = ahlab_run({"--format", "json", "sylvester", "--coeffs", "2,1,1,1,1,2", "--decompose"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.json();
  EXPECT_EQ(j["result"]["decomposition"]["terms"].size(), 3u) << r.out;
  const auto t = ahlab_run({"--format", "text", "sylvester", "--coeffs", "2,1,1,1,1,2", "--decompose"});
  EXPECT_NE(t.out.find("g = x^2*y + x*y^2"), std::string::npos) << t.out;
}

TEST(Cli, KnownExceptionExitsZero) {
  const auto r = ahlab_run({"--format", "json", "hilbert", "--n", "4", "--d", "3", "--points", "7"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.json()["result"];
  EXPECT_EQ(j["defect"], 1);
  EXPECT_EQ(j["computed"], 34);
  EXPECT_TRUE(j["known_exception"].get<bool>());
  EXPECT_EQ(j["verdict"], "defective-evidence");
}

TEST(Cli, SeedAndPrimeAreRecorded) {
  const auto j = ahlab_run({"--seed", "99", "--format", "json", "hilbert", "--n", "2", "--d", "3", "--points", "3"}).json();
  EXPECT_EQ(j["config"]["seed"], 99);
  EXPECT_EQ(j["config"]["field"]["prime"], 2147483647ULL);
  EXPECT_EQ(j["result"]["seed"], 99);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(ahlab_run({"hilbert", "--n", "2"}).code, 1);
  EXPECT_EQ(ahlab_run({"frobnicate"}).code, 1);
  EXPECT_EQ(ahlab_run({"hilbert", "--n", "2", "--d", "4", "--points", "5", "--bogus"}).code, 1);
  EXPECT_EQ(ahlab_run({"--prime", "65537", "hilbert", "--n", "2", "--d", "4", "--points", "5"}).code, 1);
  EXPECT_EQ(ahlab_run({"sylvester", "--coeffs", "1,2,x"}).code, 1);
}

TEST(Cli, MalformedSchemeFile) {
  TempDir dir;
  const auto bad = dir.file("bad.json", R"({"n": 2, "components": [{"type": "bogus"}]})");
  const auto r = ahlab_run({"hilbert", "--n", "2", "--d", "4", "--scheme", bad});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("bogus"), std::string::npos) << r.err;
  const auto broken = dir.file("broken.json", "{ not json");
  EXPECT_EQ(ahlab_run({"hilbert", "--d", "4", "--scheme", broken}).code, 1);
}

TEST(Cli, SchemeFileIsUsed) {
  TempDir dir;
  const auto s = dir.file("conics.json", R"({"n": 2, "components": [
    {"type": "double", "point": [1, 0, 0]},
    {"type": "double", "point": [0, 1, 0]}]})");
  const auto r = ahlab_run({"--format", "json", "hilbert", "--d", "2", "--scheme", s});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["result"]["computed"], 5);
}

TEST(Cli, TamperedCertificateExitsTwo) {
  TempDir dir;
  const auto built = ahlab_run({"--format", "json", "certificate", "--n", "3", "--d", "6", "--k", "21"});
  ASSERT_EQ(built.code, 0) << built.err;
  auto cert = built.json()["result"]["certificate"];
  for (auto& node : cert["nodes"]) {
    if (node["case"]["k"] == 21 && node["case"]["d"] == 6) node["u"] = 8;
  }
  const auto path = dir.file("cert.json", cert.dump());
  const auto r = ahlab_run({"--format", "json", "certificate", "--input", path});
  EXPECT_EQ(r.code, 2) << r.out << r.err;
  EXPECT_FALSE(r.json()["result"]["check"]["accepted"].get<bool>());
}

TEST(Cli, ExceptionalCertificateRequest) {
  const auto r = ahlab_run({"--format", "json", "certificate", "--n", "4", "--d", "4", "--k", "14"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.json()["result"]["exceptional"].get<bool>());
}

TEST(Cli, WitnessCommand) {
  const auto r = ahlab_run({"--format", "json", "witness", "--n", "2", "--d", "4", "--k", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["result"]["defect"], 1);
  EXPECT_EQ(ahlab_run({"witness", "--n", "3", "--d", "6", "--k", "21"}).code, 1);
}

TEST(Cli, CacheHitIsFlagged) {
  TempDir dir;
  const std::vector<std::string> args{"--cache-dir", dir.str(), "--format", "json",
                                      "hilbert",     "--n",     "3",      "--d",
                                      "4",           "--points", "9"};
  const auto first = ahlab_run(args);
  ASSERT_EQ(first.code, 0) << first.err;
  EXPECT_FALSE(first.json()["cached"].get<bool>());
  const auto second = ahlab_run(args);
  ASSERT_EQ(second.code, 0) << second.err;
  EXPECT_TRUE(second.json()["cached"].get<bool>());
  auto a = first.json()["result"], b = second.json()["result"];
  a.erase("cached");
  b.erase("cached");
  EXPECT_EQ(a, b);

  // a different seed is a different key
  auto other = args;
  other.insert(other.begin(), {"--seed", "5"});
  EXPECT_FALSE(ahlab_run(other).json()["cached"].get<bool>());
}

TEST(Cli, CacheDirFromEnvironment) {
  TempDir dir;
  ::setenv("AHLAB_CACHE_DIR", dir.str().c_str(), 1);
  const std::vector<std::string> args{"--format", "json", "hilbert", "--n", "2", "--d", "3", "--points", "3"};
  ahlab_run(args);
  const auto second = ahlab_run(args);
  ::unsetenv("AHLAB_CACHE_DIR");
  EXPECT_TRUE(second.json()["cached"].get<bool>());
  EXPECT_TRUE(fs::exists(fs::path(dir.str()) / "reports.jsonl"));
}

TEST(Cli, SweepUsesTheCachePerCase) {
  TempDir dir;
  const std::vector<std::string> args{"--cache-dir", dir.str(), "--format", "json", "sweep", "--n-lo", "1",
                                      "--n-hi",      "3",       "--d-lo",   "2",    "--d-hi", "4", "--threads", "3"};
  const auto first = ahlab_run(args);
  ASSERT_EQ(first.code, 0) << first.err;
  const auto second = ahlab_run(args);
  ASSERT_EQ(second.code, 0);
  std::ifstream in(fs::path(dir.str()) / "reports.jsonl");
  std::size_t lines = 0;
  for (std::string line; std::getline(in, line);) {
    ++lines;
    EXPECT_TRUE(nlohmann::json::accept(line)) << line;
  }
  EXPECT_EQ(lines, ahlab::sweep_cases(1, 3, 2, 4).size());
}

TEST(Cli, OutputIsReproducibleModuloTiming) {
  for (const auto& cmd : std::vector<std::vector<std::string>>{
           {"--format", "json", "hilbert", "--n", "3", "--d", "5", "--points", "14"},
           {"--format", "json", "certificate", "--n", "4", "--d", "5", "--k", "21", "--check"},
           {"--format", "json", "sylvester", "--coeffs", "1,-2,3,0,5,7", "--decompose"}}) {
    const auto a = ahlab_run(cmd), b = ahlab_run(cmd);
    EXPECT_EQ(without_timing(a.json()).dump(), without_timing(b.json()).dump()) << cmd[2];
  }
}

TEST(Cli, CsvOutput) {
  const auto r = ahlab_run({"--format", "csv", "sweep", "--n-lo", "2", "--n-hi", "2", "--d-lo", "3", "--d-hi", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "n,d,k,expected,computed,defect,verdict,seed,prime");
}

TEST(CliCache, KeysAndLastWins) {
  TempDir dir;
  const nlohmann::json fields = {{"n", 2}, {"d", 4}};
  EXPECT_EQ(ahlab::cli::cache_key(fields), ahlab::cli::cache_key(nlohmann::json::parse(fields.dump())));
  EXPECT_NE(ahlab::cli::cache_key(fields), ahlab::cli::cache_key({{"n", 2}, {"d", 5}}));
  {
    ahlab::cli::ReportCache cache(dir.str());
    cache.append("k1", "hilbert", fields, {{"v", 1}});
    cache.append("k1", "hilbert", fields, {{"v", 2}});
  }
  ahlab::cli::ReportCache reread(dir.str());
  const auto hit = reread.lookup("k1");
  ASSERT_TRUE(hit);
  EXPECT_EQ((*hit)["v"], 2);
  EXPECT_FALSE(reread.lookup("k2"));
}
