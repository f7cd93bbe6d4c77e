#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qbd/json_io.hpp"

using namespace qbd;

namespace {

struct Result {
  int status = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(QBD_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return {};
  Result r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) out.push_back(line);
  return out;
}

class Cli : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = std::filesystem::temp_directory_path() / ("qbd_cli_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir_);
    write("p2.json", R"({"edges":[[0,1]]})");
    write("p4.json", R"({"edges":[[0,1],[0,2],[2,3]]})");
    write("star.json", R"({"edges":[[0,1],[0,2],[0,3]]})");
    write("cycle.json", R"({"edges":[[0,1],[1,2],[2,0],[2,3]]})");
    write("bad.json", "not json");
  }
  static void TearDownTestSuite() { std::filesystem::remove_all(dir_); }
  static void write(const std::string& name, const std::string& text) { std::ofstream(dir_ / name) << text; }
  static std::string path(const std::string& name) { return (dir_ / name).string(); }

  static std::filesystem::path dir_;
};

std::filesystem::path Cli::dir_;

}  // namespace

TEST_F(Cli, ShowLaplacianJson) {
  const Result r = run("show --tree " + path("p4.json") + " --matrix qL --format json");
  ASSERT_EQ(r.status, 0);
  const Json j = parse_json(r.out);
  EXPECT_EQ(j["rows"], 2);
  EXPECT_EQ(j["row_kind"], "R");
  EXPECT_EQ(j["col_kind"], "L");
  EXPECT_EQ(poly_from_json(j["entries"][0][1]), Poly{-1});
  EXPECT_EQ(poly_from_json(j["entries"][1][0]), (Poly{0, 0, -1}));
}

TEST_F(Cli, ShowEvaluatedCsv) {
  const Result r = run("show --tree " + path("p4.json") + " --matrix E --at 1 --format csv");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(lines(r.out), (std::vector<std::string>{"1,1", "1,1"}));
}

TEST_F(Cli, RejectsTreesWithoutPerfectMatching) {
  const Result r = run("show --tree " + path("star.json") + " --matrix qL");
  EXPECT_EQ(r.status, 2);
  EXPECT_TRUE(r.out.empty());
}

TEST_F(Cli, RejectsMalformedInput) {
  EXPECT_EQ(run("show --tree " + path("bad.json") + " --matrix qL").status, 2);
  EXPECT_EQ(run("show --tree " + path("cycle.json") + " --matrix qL").status, 2);
  EXPECT_EQ(run("show --tree " + path("missing.json") + " --matrix qL").status, 2);
  EXPECT_EQ(run("show --tree " + path("p4.json")).status, 2);
  EXPECT_EQ(run("show --tree " + path("p4.json") + " --matrix nope").status, 2);
  EXPECT_EQ(run("show --tree " + path("p4.json") + " --p 3 --matrix qL").status, 2);
  EXPECT_EQ(run("frobnicate").status, 2);
}

TEST_F(Cli, InvertE) {
  const Result r = run("invert --tree " + path("p2.json") + " --matrix E");
  ASSERT_EQ(r.status, 0);
  const Json j = parse_json(r.out);
  EXPECT_EQ(ratfun_from_json(j["inverse"]["entries"][0][0]), RatFun(Poly{1}, Poly{0, 1}));
}

TEST_F(Cli, InvertRejectsPoles) {
  EXPECT_EQ(run("invert --tree " + path("p2.json") + " --matrix qB --at -1").status, 2);
  EXPECT_EQ(run("invert --tree " + path("p2.json") + " --matrix E --at 1").status, 2);
  EXPECT_EQ(run("invert --tree " + path("p2.json") + " --matrix E --at 0").status, 2);
  EXPECT_EQ(run("invert --tree " + path("p4.json") + " --matrix E --at 2").status, 0);
}

TEST_F(Cli, InvertWithOracle) {
  const Result r = run("invert --tree " + path("p4.json") + " --matrix qB --oracle");
  ASSERT_EQ(r.status, 0);
  const Json j = parse_json(r.out);
  EXPECT_TRUE(j["equal"].get<bool>());
  EXPECT_EQ(j["inverse"], j["oracle"]);
}

TEST_F(Cli, VerifyTree) {
  const Result r = run("verify --tree " + path("p4.json"));
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(lines(r.out).front(), "TREES 1 CHECKS 13 FAIL 0");
  const std::string report = path("report.json");
  ASSERT_EQ(run("verify --enumerate-upto 6 --out " + report).status, 0);
  std::ifstream in(report);
  const Json j = Json::parse(in);
  ASSERT_TRUE(j.is_array());
  EXPECT_EQ(j.size(), 1U + 1U + 2U);
}

TEST_F(Cli, VerifyRandomAtPoint) {
  const Result r = run("verify --random 8,2 --seed 4 --at 2/3");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(lines(r.out).front().rfind("TREES 2 ", 0), 0U);
}

TEST_F(Cli, EnumerateLineCounts) {
  EXPECT_EQ(lines(run("enum --p 1").out).size(), 1U);
  EXPECT_EQ(lines(run("enum --p 2").out).size(), 1U);
  const auto four = lines(run("enum --p 4").out);
  EXPECT_EQ(four.size(), 5U);
  for (const auto& line : four) {
    const Json j = parse_json(line);
    EXPECT_TRUE(j.contains("code"));
    EXPECT_EQ(matched_tree_from_json(j).p(), 4);
  }
  EXPECT_EQ(run("enum --p 0").status, 2);
}

TEST_F(Cli, GenerateIsDeterministic) {
  const Result a = run("gen --p 9 --seed 17");
  const Result b = run("gen --p 9 --seed 17");
  ASSERT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(matched_tree_from_json(parse_json(a.out)).size(), 18);
  EXPECT_NE(run("gen --p 9 --seed 18").out, a.out);
}

TEST_F(Cli, Conjecture) {
  const Result two = run("conjecture --upto 2");
  ASSERT_EQ(two.status, 0);
  EXPECT_EQ(lines(two.out).size(), 1U);
  const Result four = run("conjecture --upto 4");
  ASSERT_EQ(four.status, 0);
  const auto rows = lines(four.out);
  ASSERT_EQ(rows.size(), 2U);
  const Json j = parse_json(rows[1]);
  EXPECT_TRUE(j["diagonalizable"].get<bool>());
  EXPECT_TRUE(j["nonneg"].get<bool>());
  EXPECT_EQ(poly_from_json(j["charpoly"]), (Poly{0, -2, 1}));
}
