#include <gtest/gtest.h>

#include <cmath>

#include "oneshot/correlations.hpp"
#include "oneshot/errors.hpp"
#include "support.hpp"

namespace oneshot {
namespace {

Correlation isotropic(double v) {
  const Correlation pr = pr_box(1, 1);
  return make_binary_box([&](int p, int q, int r, int s) { return v * pr(p, q, r, s) + (1.0 - v) * 0.25; });
}

TEST(Correlation, ValidatesTable) {
  EXPECT_THROW(make_binary_box([](int, int, int, int) { return 0.3; }), ValidationError);
  EXPECT_THROW(make_binary_box([](int p, int q, int, int) { return p == 0 && q == 0 ? 1.1 : (p == 1 && q == 1 ? -0.1 : 0.0); }),
               ValidationError);
  const Correlation c = make_binary_box([](int p, int q, int, int) { return p == 0 && q == 0 ? 1.0 + 5e-13 : (p == 1 && q == 1 ? -5e-13 : 0.0); });
  EXPECT_EQ(c.clamped_entries(), 4);
}

TEST(Correlation, NonSignalingFamilies) {
  for (const auto& d : deterministic_boxes()) EXPECT_TRUE(is_nonsignaling(d));
  for (int j = 1; j <= 4; ++j)
    for (int sign : {1, -1}) EXPECT_TRUE(is_nonsignaling(pr_box(j, sign)));
  EXPECT_TRUE(is_nonsignaling(tsirelson_box()));
  for (int m = 1; m <= 4; ++m) EXPECT_TRUE(is_nonsignaling(device_E(m))) << m;
  const Correlation own_input = make_binary_box([](int p, int q, int r, int) { return p == r && q == 0 ? 1.0 : 0.0; });
  EXPECT_TRUE(is_nonsignaling(own_input));
  const Correlation bad = make_binary_box([](int p, int q, int, int s) { return p == s && q == 0 ? 1.0 : 0.0; });
  EXPECT_FALSE(is_nonsignaling(bad));
}

TEST(Correlation, DeviceShape) {
  const Correlation e2 = device_E(2);
  EXPECT_EQ(e2.num_r(), 2);
  EXPECT_EQ(e2.num_p(), 4);
  EXPECT_EQ(e2.num_s(), 6);
  EXPECT_EQ(e2.num_q(), 2);
  EXPECT_THROW(device_E(0), ValidationError);
  EXPECT_THROW(device_E(7), ValidationError);
}

TEST(Chsh, PrBoxesAreExtremal) {
  for (int j = 1; j <= 4; ++j)
    for (int sign : {1, -1}) {
      const auto f = chsh_values(pr_box(j, sign));
      for (int i = 0; i < 4; ++i) EXPECT_NEAR(f[i], i == j - 1 ? 4.0 * sign : 0.0, 1e-15);
    }
}

TEST(Chsh, LocalAndQuantumCeilings) {
  for (const auto& d : deterministic_boxes())
    for (double f : chsh_values(d)) EXPECT_LE(std::abs(f), 2.0 + 1e-15);
  EXPECT_NEAR(chsh_values(tsirelson_box())[0], 2.0 * std::sqrt(2.0), 1e-12);
  Rng rng(83);
  for (int trial = 0; trial < 100; ++trial)
    for (double f : chsh_values(testing::random_quantum_box(rng))) EXPECT_LE(std::abs(f), 2.0 * std::sqrt(2.0) + 1e-9);
}

TEST(LocalFraction, Extremes) {
  EXPECT_NEAR(local_fraction(pr_box(2, -1)).alpha, 0.0, 1e-12);
  for (const auto& d : deterministic_boxes()) {
    const LocalFraction lf = local_fraction(d);
    EXPECT_NEAR(lf.alpha, 1.0, 1e-12);
    EXPECT_FALSE(lf.residual.has_value());
  }
  EXPECT_NEAR(local_fraction(uniform_box(2, 2, 2, 2)).alpha, 1.0, 1e-12);
}

TEST(LocalFraction, IsotropicOracle) {
  for (double v : {0.1, 0.5, 0.6, 0.7, 1.0 / std::sqrt(2.0), 0.8, 0.9, 1.0})
    EXPECT_NEAR(local_fraction(isotropic(v)).alpha, std::min(1.0, 2.0 - 2.0 * v), 1e-9) << v;
  EXPECT_NEAR(local_fraction(tsirelson_box()).alpha, 2.0 - std::sqrt(2.0), 1e-9);
}

TEST(LocalFraction, DecompositionReconstructs) {
  Rng rng(89);
  const auto det = deterministic_boxes();
  for (int trial = 0; trial < 50; ++trial) {
    const Correlation d = testing::random_ns_box(rng);
    const LocalFraction lf = local_fraction(d);
    double wsum = 0.0;
    for (double w : lf.weights) {
      EXPECT_GE(w, -1e-12);
      wsum += w;
    }
    EXPECT_NEAR(wsum, lf.alpha, 1e-9);
    if (!lf.residual) continue;
    EXPECT_TRUE(is_nonsignaling(*lf.residual, 1e-6));
    for (std::size_t k = 0; k < 16; ++k) {
      double v = (1.0 - lf.alpha) * lf.residual->table()[k];
      for (int i = 0; i < 16; ++i) v += lf.weights[i] * det[i].table()[k];
      EXPECT_NEAR(v, d.table()[k], 1e-8);
    }
  }
}

TEST(LocalFraction, QuantumBoxesRespectLowerBound) {
  Rng rng(97);
  for (int trial = 0; trial < 100; ++trial)
    EXPECT_GE(local_fraction(testing::random_quantum_box(rng)).alpha, 2.0 - std::sqrt(2.0) - 1e-6);
}

TEST(LocalFraction, RejectsNonBinary) {
  EXPECT_THROW(local_fraction(device_E(2)), ValidationError);
}

TEST(QuantumCorrelation, RejectsBadPovm) {
  const HermitianOp state = HermitianOp::identity(4);
  const std::vector<std::vector<HermitianOp>> z{{pauli_z(), HermitianOp::zero(2)}};
  EXPECT_THROW(quantum_correlation(0.25 * state, z, z), ValidationError);
}

}  // namespace
}  // namespace oneshot
