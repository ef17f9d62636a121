#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "ldt_app.hpp"

using namespace ldt;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string sample(const std::string& name) { return std::string(LDT_SOURCE_DIR) + "/samples/" + name; }

std::string temp_file(const std::string& name, const std::string& text) {
  auto p = std::filesystem::temp_directory_path() / ("ldt_test_" + name);
  std::ofstream(p) << text;
  return p.string();
}

Json without_timing(const std::string& s) {
  Json j = Json::parse(s);
  j.erase("wall_time_ms");
  return j;
}

}  // namespace

TEST(Cli, SolveKSumText) {
  auto r = invoke({"solve", "ksum", "--input", sample("ksum.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("answer: true"), std::string::npos);
  EXPECT_NE(r.out.find("witness: [1,2,3]"), std::string::npos);
}

TEST(Cli, SolveSortabText) {
  auto r = invoke({"solve", "sortab", "--input", sample("sortab.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("order: [(1,1)] [(2,1)] [(1,2)] [(2,2)]"), std::string::npos) << r.out;
}

TEST(Cli, SolveEveryProblemAsJson) {
  for (auto [problem, file] : std::vector<std::pair<std::string, std::string>>{
           {"ksum", "ksum.txt"}, {"subsetsum", "subsetsum.txt"}, {"sortab", "sortab.txt"}, {"kldt", "kldt.txt"},
           {"triangles", "triangles.txt"}}) {
    auto r = invoke({"solve", problem, "--input", sample(file), "--json"});
    ASSERT_EQ(r.code, 0) << problem << ": " << r.err;
    Json j = Json::parse(r.out);
    EXPECT_EQ(j["schema"], 1);
    EXPECT_EQ(j["problem"], problem);
    EXPECT_EQ(j["total_queries"].get<std::uint64_t>(),
              j["label_queries"].get<std::uint64_t>() + j["comparison_queries"].get<std::uint64_t>());
    if (problem != "sortab") {
      EXPECT_EQ(j["answer"]["decision"], true) << problem;
    }
    EXPECT_EQ(j.items().begin().key(), "schema");
    EXPECT_EQ((--j.end()).key(), "wall_time_ms");
  }
}

TEST(Cli, SubsetSumTarget) {
  auto f = temp_file("target.txt", "1 2 4\n");
  auto yes = invoke({"solve", "subsetsum", "--input", f, "--target", "6"});
  EXPECT_NE(yes.out.find("answer: true"), std::string::npos);
  auto no = invoke({"solve", "subsetsum", "--input", f, "--target", "8"});
  EXPECT_NE(no.out.find("answer: false"), std::string::npos);
  EXPECT_EQ(invoke({"solve", "ksum", "--input", f, "--target", "1"}).code, 2);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(invoke({"solve", "ksum", "--input", "/nonexistent/file"}).code, 2);
  EXPECT_EQ(invoke({"solve", "ksum", "--input", temp_file("bad.txt", "1 x 3\n")}).code, 2);
  EXPECT_EQ(invoke({"solve", "nosuch", "--input", sample("ksum.txt")}).code, 2);
  EXPECT_EQ(invoke({"solve", "ksum", "--input", sample("ksum.txt"), "--sample-constant", "-1"}).code, 2);
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"--help"}).code, 0);
  std::string twenty;
  for (int i = 1; i <= 20; ++i) twenty += std::to_string(i) + " ";
  auto cap = invoke({"solve", "subsetsum", "--input", temp_file("twenty.txt", twenty)});
  EXPECT_EQ(cap.code, 3);
  EXPECT_NE(cap.err.find("error:"), std::string::npos);
  LabRecord failing;
  failing.check = "x";
  std::ostringstream sink;
  EXPECT_EQ(cli::emit_lab(sink, {failing}), 1);
}

TEST(Cli, ReportsAreReproducible) {
  auto first = invoke({"solve", "ksum", "--input", sample("ksum.txt"), "--json", "--seed", "9"});
  ASSERT_EQ(first.code, 0);
  for (int i = 0; i < 5; ++i) {
    auto again = invoke({"solve", "ksum", "--input", sample("ksum.txt"), "--json", "--seed", "9"});
    EXPECT_EQ(without_timing(again.out).dump(), without_timing(first.out).dump());
  }
}

TEST(Cli, LogQueries) {
  auto r = invoke({"solve", "ksum", "--input", sample("ksum.txt"), "--json", "--log-queries"});
  ASSERT_EQ(r.code, 0);
  Json j = Json::parse(r.out);
  ASSERT_TRUE(j.contains("query_log"));
  EXPECT_EQ(j["query_log"].size(), j["total_queries"].get<std::size_t>());
  auto text = invoke({"solve", "ksum", "--input", sample("ksum.txt"), "--log-queries"});
  EXPECT_NE(text.out.find("\"kind\":\"label\""), std::string::npos);
}

TEST(Cli, StrictComparison) {
  auto r = invoke({"solve", "ksum", "--input", sample("ksum.txt"), "--json", "--strict-comparison"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(Json::parse(r.out)["strict_comparison"], true);
}

TEST(Cli, BenchRowsAreCorrect) {
  for (std::string problem : {"ksum", "subsetsum", "sortab", "kldt", "triangles"}) {
    auto r = invoke({"bench", "--problem", problem, "--sizes", "4,6", "--trials", "4", "--seed", "1"});
    ASSERT_EQ(r.code, 0) << problem << ": " << r.err;
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, cli::kBenchHeader);
    std::size_t rows = 0;
    while (std::getline(in, line)) {
      ++rows;
      EXPECT_EQ(line.substr(line.rfind(',') + 1), "true") << problem << ": " << line;
    }
    EXPECT_EQ(rows, 8u);
  }
}

TEST(Cli, BenchIsDeterministic) {
  auto a = invoke({"bench", "--sizes", "8", "--trials", "6", "--seed", "3"});
  auto b = invoke({"bench", "--sizes", "8", "--trials", "6", "--seed", "3"});
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, LabSubcommands) {
  EXPECT_EQ(invoke({"lab", "cells", "--dim", "2", "--families", "3"}).code, 0);
  EXPECT_EQ(invoke({"lab", "infdim", "--families", "4"}).code, 0);
  auto coll = invoke({"lab", "collision", "--w", "2", "--n", "3", "--trials", "5"});
  EXPECT_EQ(coll.code, 0);
  std::istringstream in(coll.out);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    EXPECT_EQ(Json::parse(line)["pass"], true);
    ++n;
  }
  EXPECT_EQ(n, 5u);
  EXPECT_EQ(invoke({"lab", "crosscheck-lp", "--trials", "20", "--cells", "5"}).code, 0);
  EXPECT_EQ(invoke({"lab"}).code, 2);
}
