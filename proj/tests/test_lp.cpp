#include <gtest/gtest.h>

#include "ldt/inference.hpp"
#include "ldt/lab.hpp"
#include "ldt/linalg.hpp"
#include "ldt/lp.hpp"
#include "ldt/random.hpp"

using namespace ldt;

namespace {

HomogeneousSystem make(std::size_t dim, std::vector<Vector> strict, std::vector<Vector> weak = {}, std::vector<Vector> eq = {}) {
  HomogeneousSystem s;
  s.dim = dim;
  s.strict = std::move(strict);
  s.weak = std::move(weak);
  s.equalities = std::move(eq);
  return s;
}

}  // namespace

TEST(Feasible, Examples) {
  EXPECT_FALSE(feasible(make(2, {Vector{1, 0}, Vector{-1, 0}})));
  EXPECT_TRUE(feasible(make(2, {Vector{1, 0}}, {}, {Vector{0, 1}})));
  EXPECT_TRUE(feasible(make(2, {Vector{1, -1}, Vector{-1, 2}}, {Vector{0, 1}})));
}

TEST(Feasible, GridSearchWitnessForThirdExample) {
  // (3, 2) is one witness for the third example; feasibility must match.
  auto sys = make(2, {Vector{1, -1}, Vector{-1, 2}}, {Vector{0, 1}});
  EXPECT_TRUE(sys.satisfied_by(Vector{3, 2}));
}

TEST(InteriorWitness, Examples) {
  auto w = interior_witness(make(1, {Vector{1}}));
  ASSERT_TRUE(w);
  EXPECT_GT((*w)[0], Rational(0));
  EXPECT_FALSE(interior_witness(make(2, {Vector{1, 0}, Vector{-1, 0}})));
}

TEST(InteriorWitness, NoStrictRowsGivesOrigin) {
  auto w = interior_witness(make(2, {}, {Vector{1, 1}}, {Vector{1, -1}}));
  ASSERT_TRUE(w);
  EXPECT_TRUE(w->is_zero());
}

TEST(Feasible, DegenerateRows) {
  EXPECT_FALSE(feasible(make(2, {Vector{0, 0}})));
  EXPECT_TRUE(feasible(make(2, {Vector{1, 0}}, {Vector{0, 0}}, {Vector{0, 0}})));
  EXPECT_TRUE(feasible(make(2, {Vector{1, 0}, Vector{1, 0}, Vector{2, 0}}, {Vector{1, 0}, Vector{1, 0}})));
  EXPECT_FALSE(feasible(make(2, {Vector{1, 0}}, {}, {Vector{1, 0}, Vector{1, 0}})));
}

TEST(Feasible, MalformedSystemThrows) {
  EXPECT_THROW(feasible(make(2, {Vector{1}})), UsageError);
  EXPECT_THROW(feasible(make(0, {})), UsageError);
}

TEST(Feasible, SortedSampleCellInDimSix) {
  Rng rng(17);
  Vector x(6);
  for (std::size_t j = 0; j < 6; ++j) x[j] = Rational(rng.between(-9, 9));
  HiddenPointOracle o(x);
  std::vector<Member> members;
  std::vector<Vector> S;
  for (int i = 0; i < 10; ++i) {
    Vector h = lab::random_vector(rng, 6, -3, 3);
    S.push_back(h);
    members.push_back({i, h});
  }
  CellDescription cell = cell_from_sample(build_sorted_sample(members, o));
  auto w = interior_witness(cell.constraints);
  ASSERT_TRUE(w);
  for (const auto& h : S) EXPECT_EQ(sign_of(inner_product(h, *w)), sign_of(inner_product(h, x)));
  for (const auto& a : S)
    for (const auto& b : S) EXPECT_EQ(sign_of(inner_product(a - b, *w)), sign_of(inner_product(a - b, x)));
}

TEST(FeasibleProperty, WitnessSoundAndAgreesWithFourierMotzkin) {
  Rng rng(2024);
  for (int t = 0; t < 3000; ++t) {
    auto sys = lab::random_system(rng, 3, 6);
    auto w = interior_witness(sys);
    EXPECT_EQ(w.has_value(), lab::fm_feasible(sys));
    if (w) {
      EXPECT_TRUE(sys.satisfied_by(*w));
    }
  }
}

// Every system of at most two rows over {-1, 0, 1}^2 and every row kind.
TEST(FeasibleProperty, ExhaustiveSmallGrid) {
  std::vector<Vector> vs;
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b) vs.push_back(Vector{a, b});
  for (const auto& u : vs)
    for (const auto& v : vs)
      for (int ku = 0; ku < 3; ++ku)
        for (int kv = 0; kv < 3; ++kv) {
          HomogeneousSystem s;
          s.dim = 2;
          for (auto [vec, kind] : {std::pair{&u, ku}, std::pair{&v, kv}})
            (kind == 0 ? s.strict : kind == 1 ? s.weak : s.equalities).push_back(*vec);
          EXPECT_EQ(feasible(s), lab::fm_feasible(s));
        }
}

TEST(FeasibleProperty, ScaleInvariance) {
  Rng rng(99);
  for (int t = 0; t < 1000; ++t) {
    auto sys = lab::random_system(rng, 3, 6);
    HomogeneousSystem scaled = sys;
    for (auto* group : {&scaled.strict, &scaled.weak, &scaled.equalities})
      for (auto& v : *group) v = Rational(rng.between(1, 50), rng.between(1, 50)) * v;
    EXPECT_EQ(feasible(sys), feasible(scaled));
  }
}

TEST(Linalg, EchelonRankAndSpan) {
  std::vector<Vector> rows{Vector{1, 1, 0}, Vector{2, 2, 0}, Vector{0, 1, 1}};
  auto e = linalg::Echelon::of(rows, 3);
  EXPECT_EQ(e.rank(), 2u);
  EXPECT_TRUE(e.in_span(Vector{1, 2, 1}));
  EXPECT_FALSE(e.in_span(Vector{0, 0, 1}));
}

TEST(Linalg, KernelProjectLift) {
  std::vector<Vector> eq{Vector{1, -1, 0}};
  linalg::Kernel k(eq, 3);
  EXPECT_EQ(k.dim(), 2u);
  Rng rng(4);
  for (int t = 0; t < 100; ++t) {
    linalg::Dense z{Rational(rng.between(-5, 5)), Rational(rng.between(-5, 5))};
    Vector x = k.lift(z);
    EXPECT_EQ(x[0], x[1]);
    Vector a = lab::random_vector(rng, 3, -3, 3);
    EXPECT_EQ(inner_product(a, x), linalg::dot(k.project(a), z));
  }
}

TEST(Linalg, ConeMembershipVerdicts) {
  auto sp = [](const Vector& v) { return linalg::to_sparse(v.coords()); };
  lp::ConeMembership cone({sp(Vector{1, 0}), sp(Vector{0, 1})}, 2);
  EXPECT_EQ(cone.test({Rational(2), Rational(1)}).verdict, lp::ConeMembership::Verdict::Member);
  EXPECT_EQ(cone.test({Rational(-1), Rational(1)}).verdict, lp::ConeMembership::Verdict::NotInCone);
  lp::ConeMembership line({sp(Vector{1, 0, 0})}, 3);
  EXPECT_EQ(line.test({Rational(0), Rational(1), Rational(0)}).verdict, lp::ConeMembership::Verdict::NotInSpan);
}
