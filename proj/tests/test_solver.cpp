#include <cmath>

#include <gtest/gtest.h>

#include "ldt/ground_truth.hpp"
#include "ldt/instances.hpp"
#include "ldt/lab.hpp"
#include "ldt/problems.hpp"
#include "ldt/solver.hpp"

using namespace ldt;

namespace {

SolveReport run(const std::vector<Vector>& H, const Vector& x, std::uint64_t seed, Rational c = 2, bool strict = false) {
  HiddenPointOracle o(x);
  SolveConfig cfg;
  cfg.seed = seed;
  cfg.sample_constant = c;
  cfg.strict_comparison_mode = strict;
  return solve(H, o, cfg);
}

std::vector<Vector> weight_three(std::size_t n) { return encode_ksum(std::vector<Rational>(n, Rational(0)), 3).H; }

}  // namespace

TEST(Solve, SingleHyperplaneIsOneLabel) {
  auto r = run({Vector{1, -1}}, Vector{2, 5}, 1);
  EXPECT_EQ(r.pattern, (SignVector{Sign::Minus}));
  EXPECT_TRUE(r.rounds.empty());
  EXPECT_EQ(r.ledger.label_count, 1u);
  EXPECT_EQ(r.ledger.comparison_count, 0u);
}

TEST(Solve, WeightThreeFamilyExample) {
  auto H = weight_three(6);
  Vector x{1, 2, -3, 7, 11, 13};
  auto r = run(H, x, 3);
  EXPECT_EQ(r.pattern, ground_truth_pattern(H, x));
  std::size_t zeros = 0;
  for (std::size_t i = 0; i < H.size(); ++i)
    if (r.pattern[i] == Sign::Zero) {
      ++zeros;
      EXPECT_EQ(H[i], (Vector{1, 1, 1, 0, 0, 0}));
    }
  EXPECT_EQ(zeros, 1u);
  EXPECT_TRUE(decide(r));
}

TEST(Solve, PatternIndependentOfSeed) {
  auto H = weight_three(6);
  Vector x{1, 2, -3, 7, 11, 13};
  auto first = run(H, x, 0).pattern;
  for (std::uint64_t s = 1; s < 20; ++s) EXPECT_EQ(run(H, x, s).pattern, first);
}

TEST(Solve, DecideExamples) {
  auto H = weight_three(4);
  EXPECT_TRUE(decide(run(H, Vector{1, 2, -3, 5}, 0)));
  EXPECT_FALSE(decide(run(H, Vector{1, 2, 4, 8}, 0)));
}

TEST(Solve, UsageErrors) {
  HiddenPointOracle o(Vector{1, 2});
  EXPECT_THROW(solve({}, o, {}), UsageError);
  EXPECT_THROW(solve({Vector{1, 2, 3}}, o, {}), UsageError);
  EXPECT_THROW(solve({Vector{1, 2}, Vector{1}}, o, {}), UsageError);
  SolveConfig bad;
  bad.sample_constant = 0;
  EXPECT_THROW(solve({Vector{1, 2}}, o, bad), UsageError);
}

TEST(Solve, DuplicatesAliasOneValue) {
  std::vector<Vector> H{Vector{1, 0}, Vector{0, 1}, Vector{1, 0}, Vector{1, 0}};
  auto r = run(H, Vector{-1, 1}, 0);
  EXPECT_EQ(r.distinct, 2u);
  EXPECT_EQ(r.pattern, ground_truth_pattern(H, Vector{-1, 1}));
  EXPECT_EQ(r.ledger.label_count, 2u);
}

TEST(Solve, StrictComparisonModeStillCorrect) {
  Rng rng(2);
  for (int t = 0; t < 10; ++t) {
    auto inst = generate_ksum(rng, 12, 3, t % 2 == 0);
    auto e = encode_ksum(inst.values, 3);
    EXPECT_EQ(run(e.H, e.x, static_cast<std::uint64_t>(t), 2, true).pattern, ground_truth_pattern(e.H, e.x));
  }
}

TEST(SolveProperty, CorrectForAnySampleConstant) {
  Rng rng(9);
  for (Rational c : {Rational(1, 4), Rational(1), Rational(2), Rational(8)})
    for (int t = 0; t < 12; ++t) {
      auto inst = generate_ksum(rng, 8 + rng.below(12), 3, t % 2 == 0);
      auto e = encode_ksum(inst.values, 3);
      auto r = run(e.H, e.x, rng.next(), c);
      EXPECT_EQ(r.pattern, ground_truth_pattern(e.H, e.x)) << "c = " << c;
    }
}

TEST(SolveProperty, CorrectOnRandomFamilies) {
  Rng rng(10);
  for (int t = 0; t < 60; ++t) {
    const std::size_t dim = 1 + rng.below(4);
    std::vector<Vector> H;
    for (std::size_t i = 0; i < 20 + rng.below(200); ++i) H.push_back(lab::random_vector(rng, dim, -2, 2));
    Vector x = lab::random_vector(rng, dim, -3, 3);
    EXPECT_EQ(run(H, x, rng.next(), Rational(1, 2)).pattern, ground_truth_pattern(H, x));
  }
}

TEST(SolveProperty, QueryAccounting) {
  Rng rng(11);
  for (int t = 0; t < 20; ++t) {
    auto inst = generate_ksum(rng, 16, 3, t % 2 == 0);
    auto e = encode_ksum(inst.values, 3);
    auto r = run(e.H, e.x, rng.next());
    std::uint64_t labels = 0, comparisons = 0;
    std::size_t removed = 0;
    for (const auto& tr : r.rounds) {
      const auto s = static_cast<std::uint64_t>(tr.sample);
      const auto logs = static_cast<std::uint64_t>(std::ceil(std::log2(static_cast<double>(tr.sample))));
      EXPECT_EQ(tr.label_queries, s);
      EXPECT_LE(tr.comparison_queries, s * logs + s);
      EXPECT_GE(tr.inferred, tr.sample);
      EXPECT_EQ(tr.sample, 2 * r.d_estimate);
      labels += tr.label_queries;
      comparisons += tr.comparison_queries;
      removed += tr.inferred;
    }
    const std::uint64_t final_labels = r.ledger.label_count - labels;
    EXPECT_EQ(removed + final_labels, r.distinct);
    EXPECT_EQ(comparisons, r.ledger.comparison_count);
    if (!r.rounds.empty()) {
      EXPECT_LT(r.rounds.back().remaining - r.rounds.back().inferred, 2 * r.d_estimate);
    }
  }
}

TEST(SolveProperty, ProvenanceConsistent) {
  Rng rng(12);
  auto inst = generate_ksum(rng, 16, 3, true);
  auto e = encode_ksum(inst.values, 3);
  auto r = run(e.H, e.x, 5);
  std::size_t sampled = 0;
  for (auto p : r.provenance) sampled += p == Provenance::Sampled;
  std::size_t sample_total = 0;
  for (const auto& tr : r.rounds) sample_total += tr.sample;
  EXPECT_EQ(sampled, sample_total);
}

TEST(SolveProperty, ReplayIsDeterministic) {
  Rng rng(13);
  auto inst = generate_ksum(rng, 12, 3, false);
  auto e = encode_ksum(inst.values, 3);
  auto log_of = [&](std::uint64_t seed) {
    HiddenPointOracle o(e.x);
    o.enable_log();
    SolveConfig cfg;
    cfg.seed = seed;
    auto r = solve(e.H, o, cfg);
    return std::pair{*o.ledger().log, r.pattern};
  };
  auto [a, pa] = log_of(77);
  auto [b, pb] = log_of(77);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].kind, b[i].kind);
    EXPECT_EQ(a[i].ids, b[i].ids);
    EXPECT_EQ(a[i].operands, b[i].operands);
    EXPECT_EQ(a[i].answer, b[i].answer);
  }
  EXPECT_EQ(pa, pb);
}

TEST(SolveProperty, ThreadCountDoesNotChangeQueries) {
  Rng rng(14);
  auto inst = generate_ksum(rng, 16, 3, true);
  auto e = encode_ksum(inst.values, 3);
  auto with = [&](std::size_t threads) {
    HiddenPointOracle o(e.x);
    SolveConfig cfg;
    cfg.seed = 4;
    cfg.threads = threads;
    auto r = solve(e.H, o, cfg);
    return std::tuple{r.pattern, r.ledger.label_count, r.ledger.comparison_count, r.rounds.size()};
  };
  EXPECT_EQ(with(1), with(4));
}

TEST(DEstimate, Formula) {
  EXPECT_EQ(d_estimate(6, Rational(1), Rational(2)), static_cast<std::size_t>(std::ceil(2 * 6 * std::log2(8.0))));
  EXPECT_EQ(d_estimate(1, Rational(0), Rational(1, 4)), 1u);
  EXPECT_THROW(d_estimate(3, Rational(1), Rational(-1)), UsageError);
}
