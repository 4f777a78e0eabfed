#include <gtest/gtest.h>

#include <algorithm>

#include "ripkit/collisions.hpp"
#include "ripkit/errors.hpp"

namespace ripkit {
namespace {

const KerrSpectrum kReadout{5140, 0, 6971, -5.57, 0, 0};

struct Row {
  CollisionSpec spec;
  double intercept, slope;
};

// Kerr estimates of the qubit-resonator collision table
const std::vector<Row> kTable = {
    {{{5, 0, 0}, {0, 0, 3}}, -478.700, 2.785}, {{{6, 0, 0}, {0, 0, 4}}, -197.067, 2.228},
    {{{6, 0, 0}, {1, 0, 3}}, -320.247, 1.857}, {{{7, 0, 0}, {0, 0, 4}}, -385.524, 1.857},
    {{{7, 0, 0}, {1, 0, 4}}, -141.823, 1.591}, {{{8, 0, 0}, {0, 0, 5}}, -223.750, 1.591},
    {{{8, 0, 0}, {1, 0, 4}}, -289.939, 1.393}, {{{9, 0, 0}, {0, 0, 5}}, -316.806, 1.393},
    {{{9, 0, 0}, {1, 0, 5}}, -174.801, 1.238},
};

TEST(Kerr, CollisionTableToOneKilohertz) {
  for (const Row& r : kTable) {
    const CollisionRecord c = kerr_collision(r.spec, kReadout);
    EXPECT_NEAR(c.intercept, r.intercept, 1e-3) << r.spec.label();
    ASSERT_TRUE(c.slope.has_value());
    EXPECT_NEAR(*c.slope, r.slope, 1e-3) << r.spec.label();
  }
}

TEST(Kerr, ShiftingPhotonsMovesAlongTheSlope) {
  for (const Row& r : kTable) {
    const CollisionRecord base = kerr_collision(r.spec, kReadout);
    for (int k : {1, 3}) {
      const CollisionRecord s = kerr_collision(r.spec.shifted(k), kReadout);
      EXPECT_NEAR(s.intercept, base.intercept, 1e-9);
      EXPECT_NEAR(s.alpha, base.alpha + k * *base.slope, 1e-9);
    }
  }
}

TEST(Kerr, NoAnharmonicityDependenceIsAConfigError) {
  EXPECT_THROW(kerr_collision({{1, 0, 1}, {0, 0, 2}}, kReadout), ConfigError);
}

TEST(Kerr, Categories) {
  EXPECT_EQ((CollisionSpec{{6, 0, 0}, {0, 0, 4}}.category()), CollisionCategory::qubit_resonator);
  EXPECT_EQ((CollisionSpec{{0, 2, 0}, {1, 0, 1}}.category()), CollisionCategory::three_body);
  EXPECT_EQ((CollisionSpec{{0, 2, 0}, {1, 1, 0}}.category()), CollisionCategory::qubit_qubit);
}

TEST(Enumeration, FindsKnownCollisionsInRange) {
  EnumerationBounds b;
  b.alpha_range = std::pair{-350.0, -150.0};
  b.window = 0.0;
  const auto specs = enumerate_candidates(kReadout, b);
  for (const Row& r : kTable) {
    const CollisionRecord c = kerr_collision(r.spec, kReadout);
    const bool inside = c.alpha >= -350.0 && c.alpha <= -150.0;
    const bool found = std::find(specs.begin(), specs.end(), r.spec) != specs.end();
    EXPECT_EQ(inside, found) << r.spec.label();
  }
  EXPECT_TRUE(std::is_sorted(specs.begin(), specs.end(), [](const CollisionSpec& x, const CollisionSpec& y) {
    return std::tie(x.left, x.right) < std::tie(y.left, y.right);
  }));
}

TEST(Exact, SixthLevelCollisionNearTheTableValue) {
  InversionTargets t;
  t.qubits = {{5140, -200, -5.57}};
  t.omega_c = 6971;
  t.n_g = {0.0};
  const auto rec = exact_collision_scan(t, {{{6, 0, 0}, {0, 0, 4}}}, -185, -170, 1.0);
  ASSERT_EQ(rec.size(), 1u);
  EXPECT_NEAR(rec[0].alpha, -177.047, 0.05);  // frozen exact-scan root
  EXPECT_EQ(rec[0].multiplicity, 1);
}

TEST(Margin, NearestRootAndDistance) {
  CollisionRecord a, b;
  a.spec = {{6, 0, 0}, {0, 0, 4}};
  a.alpha = -177.0;
  b.spec = {{8, 0, 0}, {0, 0, 5}};
  b.alpha = -185.5;
  const auto m = collision_margin(-180.0, {a, b});
  ASSERT_EQ(m.size(), 2u);
  double best = 1e9;
  for (const auto& x : m) best = std::min(best, x.margin);
  EXPECT_NEAR(best, 3.0, 1e-12);
}

}  // namespace
}  // namespace ripkit
