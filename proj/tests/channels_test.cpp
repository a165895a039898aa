#include <gtest/gtest.h>

#include <cmath>

#include "oneshot/channels.hpp"
#include "oneshot/errors.hpp"
#include "support.hpp"

namespace oneshot {
namespace {

TEST(Channel, ValidatesRows) {
  EXPECT_THROW(make_channel("bad", {{0.5, 0.4}}), ValidationError);
  EXPECT_THROW(make_channel("bad", {{1.5, -0.5}}), ValidationError);
  EXPECT_THROW(make_channel("bad", {{0.5, 0.5}, {1.0}}), ValidationError);
  EXPECT_THROW(make_channel("bad", {}), ValidationError);
  EXPECT_NO_THROW(make_channel("ok", {{0.5, 0.5}, {1.0, 0.0}}));
  const Channel r("r", {"a"}, {"0", "1"}, {{0.6, 0.3}}, true);
  EXPECT_NEAR(r(0, 0), 2.0 / 3.0, 1e-15);
}

TEST(Channel, PrevedelShape) {
  const Channel m = make_prevedel();
  EXPECT_EQ(m.num_inputs(), 4);
  EXPECT_EQ(m.num_outputs(), 6);
  for (int x = 0; x < 4; ++x) {
    double s = 0.0;
    for (int y = 0; y < 6; ++y) s += m(x, y);
    EXPECT_NEAR(s, 1.0, 1e-15);
  }
}

TEST(Channel, HashingShape) {
  for (int m = 1; m <= 4; ++m) {
    const Channel t = make_hashing_channel(m);
    EXPECT_EQ(t.num_inputs(), 1 << m);
    EXPECT_EQ(t.num_outputs(), 2 * ((1 << m) - 1));
  }
  const Channel t3 = make_hashing_channel(3);
  EXPECT_EQ(t3.num_inputs(), 8);
  EXPECT_EQ(t3.num_outputs(), 14);
  EXPECT_THROW(make_hashing_channel(0), ValidationError);
}

TEST(Succ, PrevedelIsFiveSixths) {
  const Channel m = make_prevedel();
  EXPECT_NEAR(succ_unassisted(m), 5.0 / 6.0, 1e-12);
  EXPECT_NEAR(brute_force_succ(m).value, 5.0 / 6.0, 1e-12);
}

TEST(Succ, TrivialChannels) {
  EXPECT_NEAR(succ_unassisted(make_uniform_channel(3, 4)), 0.5, 1e-15);
  EXPECT_NEAR(succ_unassisted(make_noiseless_channel(2)), 1.0, 1e-15);
  const BruteForceSucc one = brute_force_succ(make_channel("one", {{0.3, 0.7}}));
  EXPECT_EQ(one.value, 0.5);
  EXPECT_EQ(one.x0, 0);
  EXPECT_EQ(one.x1, 0);
}

TEST(Succ, HashingClosedForm) {
  for (int m = 1; m <= 5; ++m) {
    const double p = std::ldexp(1.0, m);
    EXPECT_NEAR(succ_unassisted(make_hashing_channel(m)), (p + p / 2 - 1) / (2 * p - 2), 1e-12) << m;
  }
}

TEST(Succ, FormulaMatchesBruteForce) {
  Rng rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const Channel ch = testing::random_channel(rng, 1 + static_cast<int>(rng.below(6)), 1 + static_cast<int>(rng.below(6)));
    const BruteForceSucc b = brute_force_succ(ch);
    EXPECT_NEAR(succ_unassisted(ch), b.value, 1e-12);
    if (ch.num_inputs() > 1) EXPECT_NE(b.x0, b.x1);
  }
}

TEST(Distances, L1AndDiameter) {
  const std::vector<double> u{1.0, 0.0}, v{0.0, 1.0};
  EXPECT_EQ(l1_distance(u, v), 2.0);
  EXPECT_EQ(diam1({{1.0, 0.0, 0.0}, {0.5, 0.5, 0.0}, {0.0, 0.5, 0.5}}), 2.0);
}

}  // namespace
}  // namespace oneshot
