#include <gtest/gtest.h>

#include "ldt/lab.hpp"
#include "ldt/lab_suite.hpp"

using namespace ldt;
using namespace ldt::lab;

namespace {

std::vector<Vector> dim1(std::initializer_list<std::int64_t> v) {
  std::vector<Vector> out;
  for (auto x : v) out.push_back(Vector{x});
  return out;
}

// Sign vectors realized on a fine integer grid: a lower bound on the cells.
std::size_t grid_cells(const std::vector<Vector>& H, std::size_t dim) {
  std::set<SignVector> seen;
  const std::int64_t r = 12;
  std::vector<std::int64_t> c(dim, -r);
  for (;;) {
    Vector x(dim);
    for (std::size_t j = 0; j < dim; ++j) x[j] = Rational(c[j]);
    SignVector s;
    for (const auto& h : H) s.push_back(sign_of(inner_product(h, x)));
    seen.insert(s);
    std::size_t j = 0;
    while (j < dim && c[j] == r) c[j++] = -r;
    if (j == dim) break;
    ++c[j];
  }
  return seen.size();
}

}  // namespace

TEST(Cells, Examples) {
  EXPECT_EQ(enumerate_cells({Vector{1}}).cells.size(), 3u);
  EXPECT_EQ(enumerate_cells({Vector{1, 0}, Vector{0, 1}}).cells.size(), 9u);
  auto arr = enumerate_cells({Vector{1, 0}, Vector{0, 1}, Vector{1, 1}});
  EXPECT_TRUE(arr.exact);
  EXPECT_EQ(arr.cells.size(), 13u);
  EXPECT_LE(static_cast<double>(arr.cells.size()), arrangement_bound(3, 2));
  EXPECT_NEAR(arrangement_bound(3, 2), std::pow(6 * std::numbers::e, 2), 1e-9);
  EXPECT_EQ(finer_bound(3, 2), 19.0);
}

TEST(Cells, WitnessesRealizeTheirSigns) {
  auto arr = enumerate_cells({Vector{1, 0, 1}, Vector{0, 1, -1}, Vector{1, 1, 0}}, true);
  EXPECT_TRUE(witnesses_verify(arr));
  std::set<SignVector> distinct;
  for (const auto& c : arr.cells) distinct.insert(c.signs);
  EXPECT_EQ(distinct.size(), arr.cells.size());
}

TEST(Cells, SampledModeIsFlagged) {
  std::vector<Vector> H;
  for (int i = 0; i < 9; ++i) H.push_back(Vector{1, i});
  auto arr = enumerate_cells(H, false, 1, 2000);
  EXPECT_FALSE(arr.exact);
  EXPECT_LE(arr.cells.size(), enumerate_cells_exact(H, 2).size());
  EXPECT_THROW(enumerate_cells({}), UsageError);
}

TEST(CellsProperty, BoundsHoldAndGridIsCovered) {
  Rng rng(3);
  for (int t = 0; t < 40; ++t) {
    const std::size_t dim = 1 + rng.below(3), m = 1 + rng.below(dim == 3 ? 4 : 6);
    std::vector<Vector> H;
    for (std::size_t i = 0; i < m; ++i) H.push_back(random_vector(rng, dim, -2, 2));
    auto arr = enumerate_cells(H);
    ASSERT_TRUE(arr.exact);
    EXPECT_LE(static_cast<double>(arr.cells.size()), arrangement_bound(m, dim));
    EXPECT_LE(static_cast<double>(arr.cells.size()), finer_bound(m, dim));
    EXPECT_TRUE(witnesses_verify(arr));
    EXPECT_GE(arr.cells.size(), grid_cells(H, dim));
  }
}

TEST(FourierMotzkin, CapRefusal) {
  HomogeneousSystem big;
  big.dim = 5;
  big.strict.push_back(Vector{1, 0, 0, 0, 0});
  EXPECT_THROW(fm_feasible(big), CapExceeded);
  HomogeneousSystem rows;
  rows.dim = 1;
  for (int i = 0; i < 11; ++i) rows.strict.push_back(Vector{1});
  EXPECT_THROW(fm_feasible(rows), CapExceeded);
  EXPECT_TRUE(fm_feasible_uncapped(rows));
}

TEST(InferenceDimension, Examples) {
  EXPECT_FALSE(inference_dimension_exact({Vector{1}}, 1));
  EXPECT_EQ(minimal_inference_dimension({Vector{1}}), 2u);
  EXPECT_TRUE(inference_dimension_exact({Vector{1}, Vector{-1}}, 2));
  std::size_t d = minimal_inference_dimension({Vector{1, 0}, Vector{0, 1}, Vector{1, 1}});
  EXPECT_GE(d, 1u);
  EXPECT_LE(d, 4u);
  EXPECT_TRUE(inference_dimension_exact({Vector{1, 0}, Vector{0, 1}, Vector{1, 1}}, d));
  if (d > 1) {
    EXPECT_FALSE(inference_dimension_exact({Vector{1, 0}, Vector{0, 1}, Vector{1, 1}}, d - 1));
  }
}

TEST(InferenceDimension, CapsAndErrors) {
  EXPECT_THROW(inference_dimension_exact({Vector{1}}, 0), UsageError);
  EXPECT_THROW(inference_dimension_exact(std::vector<Vector>(11, Vector{1}), 2), CapExceeded);
  EXPECT_THROW(inference_dimension_exact({Vector{1, 0, 0, 0}}, 1), CapExceeded);
}

TEST(InferenceDimensionProperty, MonotoneInD) {
  for (const auto& r : suite_infdim(20, 5)) EXPECT_TRUE(r.pass) << to_json(r).dump();
}

TEST(Collision, Examples) {
  auto a = find_signed_collision(dim1({1, 2, 3}), 3);
  ASSERT_TRUE(a);
  EXPECT_TRUE(*a == (SignedCombination{1, -1}) || *a == (SignedCombination{-1, 1}));
  EXPECT_FALSE(find_signed_collision(dim1({1, 2, 4}), 4));
  auto b = find_signed_collision(dim1({1, 2, 4, 5}), 5);
  ASSERT_TRUE(b);
  EXPECT_TRUE(*b == (SignedCombination{1, 0, -1}) || *b == (SignedCombination{-1, 0, 1}));
}

TEST(Collision, Preconditions) {
  EXPECT_THROW(find_signed_collision({Vector{Rational(1, 2)}, Vector{1}}, 3), UsageError);
  EXPECT_THROW(find_signed_collision(dim1({1, 9}), 3), UsageError);
  EXPECT_THROW(find_signed_collision(dim1({1, 2}), 0), UsageError);
  EXPECT_THROW(find_signed_collision(std::vector<Vector>(45, Vector{1}), 1), CapExceeded);
  EXPECT_FALSE(find_signed_collision(dim1({1}), 1));
}

TEST(Certificate, Examples) {
  auto c = cone_certificate(dim1({1, 2, 3}), {1, -1});
  EXPECT_EQ(c.p, 2u);
  EXPECT_EQ(c.coefficients, (std::vector<Rational>{Rational(2)}));
  auto d = cone_certificate(dim1({1, 2, 4, 5}), {1, 0, -1});
  EXPECT_EQ(d.p, 3u);
  EXPECT_EQ(d.coefficients, (std::vector<Rational>{Rational(2), Rational(1)}));
  auto e = cone_certificate(dim1({1, 2, 4, 5}), {-1, 0, 1});
  EXPECT_EQ(e.coefficients, d.coefficients);
}

TEST(Certificate, InvalidAlphaIsInternalError) {
  EXPECT_THROW(cone_certificate(dim1({1, 2, 4}), {1, -1}), InternalError);
  EXPECT_THROW(cone_certificate(dim1({1, 2, 3}), {0, 0}), InternalError);
  EXPECT_THROW(cone_certificate(dim1({1, 2, 3}), {2, -1}), InternalError);
  EXPECT_THROW(cone_certificate(dim1({1, 2, 3}), {1}), InternalError);
}

TEST(CollisionProperty, AboveThresholdAlwaysFoundAndCertified) {
  EXPECT_TRUE(collision_threshold_holds(*threshold_m(3, 2), 3, 2));
  EXPECT_FALSE(collision_threshold_holds(*threshold_m(3, 2) - 1, 3, 2));
  for (const auto& r : suite_collision(2, 3, 30, 8)) EXPECT_TRUE(r.pass) << to_json(r).dump();
  for (const auto& r : suite_collision(6, 3, 10, 8, true)) EXPECT_TRUE(r.pass) << to_json(r).dump();
  EXPECT_THROW(suite_collision(2, 3, 1, 8, true), UsageError);
}

// Whatever the search returns, by substitution, with nonnegative certificate.
TEST(CollisionProperty, RandomFamilies) {
  Rng rng(17);
  std::size_t found = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t dim = 1 + rng.below(2);
    const std::int64_t w = 1 + static_cast<std::int64_t>(rng.below(3));
    std::vector<Vector> hs;
    for (std::size_t i = 0; i < 2 + rng.below(10); ++i) hs.push_back(random_l1_vector(rng, dim, w));
    auto alpha = find_signed_collision(hs, w);
    if (!alpha) continue;
    ++found;
    EXPECT_TRUE(combine(gaps(hs), *alpha).is_zero());
    auto cert = cone_certificate(hs, *alpha);
    for (const auto& c : cert.coefficients) EXPECT_GE(c.sign(), 0);
    Vector rhs(dim);
    auto g = gaps(hs);
    for (std::size_t i = 0; i + 1 < cert.p; ++i) rhs = rhs + cert.coefficients[i] * g[i];
    EXPECT_EQ(hs[cert.p] - hs[0], rhs);
  }
  EXPECT_GT(found, 0u);
}

TEST(Orderings, Examples) {
  auto a = check_ordering_count({Vector{1, 0}, Vector{0, 1}}, 5000, 1);
  EXPECT_LE(a.distinct, 3u);
  EXPECT_NEAR(a.bound, std::pow(2 * std::numbers::e * 4, 2), 1e-9);
  auto b = check_ordering_count({Vector{1, 0}, Vector{0, 1}, Vector{1, 1}}, 10000, 2);
  EXPECT_LE(static_cast<double>(b.distinct), b.bound);
  EXPECT_EQ(check_ordering_count({Vector{1, 2}}, 100).distinct, 1u);
}

TEST(Suites, CellsAndCrosscheckPass) {
  for (std::size_t dim = 1; dim <= 3; ++dim)
    for (const auto& r : suite_cells(dim, 2, 6)) EXPECT_TRUE(r.pass) << to_json(r).dump();
  for (const auto& r : suite_crosscheck_lp(200, 30, 3)) EXPECT_TRUE(r.pass) << to_json(r).dump();
}
