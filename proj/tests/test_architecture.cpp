#include <filesystem>
#include <fstream>
#include <regex>
#include <set>

#include <gtest/gtest.h>

namespace fs = std::filesystem;

namespace {

const fs::path kInclude = fs::path(LDT_SOURCE_DIR) / "include";

// Project headers reachable from `root` through quoted includes.
std::set<std::string> reachable(const std::string& root) {
  std::set<std::string> seen;
  std::vector<std::string> todo{root};
  const std::regex inc(R"(^\s*#\s*include\s*"([^"]+)\")");
  while (!todo.empty()) {
    std::string h = todo.back();
    todo.pop_back();
    if (!seen.insert(h).second) continue;
    std::ifstream in(kInclude / h);
    EXPECT_TRUE(in) << h;
    std::string line;
    std::smatch m;
    while (std::getline(in, line))
      if (std::regex_search(line, m, inc)) todo.push_back(m[1]);
  }
  return seen;
}

}  // namespace

TEST(Architecture, SolverCannotSeeGroundTruth) {
  for (const char* root : {"ldt/solver.hpp", "ldt/inference.hpp", "ldt/lp.hpp", "ldt/oracle.hpp"}) {
    auto r = reachable(root);
    EXPECT_FALSE(r.contains("ldt/ground_truth.hpp")) << root;
    EXPECT_FALSE(r.contains("ldt/instances.hpp")) << root;
  }
}

TEST(Architecture, OracleIsTheOnlyChannelToTheSecret) {
  std::ifstream in(kInclude / "ldt/solver.hpp");
  std::string text((std::istreambuf_iterator<char>(in)), {});
  EXPECT_EQ(text.find(".secret"), std::string::npos);
  EXPECT_EQ(text.find("ground_truth"), std::string::npos);
}
