#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "oneshot/errors.hpp"
#include "oneshot/radius.hpp"
#include "support.hpp"

namespace oneshot {
namespace {

// Minimizes a convex function over a box by nested ternary search.
double nested_ternary(const std::function<double(const std::vector<double>&)>& f, std::vector<double> lo,
                      std::vector<double> hi, int iters) {
  std::vector<double> x(lo.size());
  std::function<double(std::size_t)> inner = [&](std::size_t k) -> double {
    if (k == lo.size()) return f(x);
    double a = lo[k], b = hi[k];
    for (int i = 0; i < iters; ++i) {
      const double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
      x[k] = m1;
      const double f1 = inner(k + 1);
      x[k] = m2;
      const double f2 = inner(k + 1);
      if (f1 < f2)
        b = m2;
      else
        a = m1;
    }
    x[k] = 0.5 * (a + b);
    return inner(k + 1);
  };
  return inner(0);
}

double rad1_oracle(const std::vector<std::vector<double>>& rows) {
  const std::size_t k = rows.front().size();
  std::vector<double> lo(k, 1e9), hi(k, -1e9);
  for (const auto& r : rows)
    for (std::size_t j = 0; j < k; ++j) lo[j] = std::min(lo[j], r[j]), hi[j] = std::max(hi[j], r[j]);
  return nested_ternary(
      [&](const std::vector<double>& c) {
        double worst = 0.0;
        for (const auto& r : rows) worst = std::max(worst, l1_distance(r, c));
        return worst;
      },
      lo, hi, 60);
}

// Qubit radius through the Bloch form: min over (tau, w) of
// max_i |t_i - tau| / 2 + ||v_i - w||.
double rad_op_qubit_oracle(const std::vector<HermitianOp>& ops) {
  std::vector<BlochForm> b;
  for (const auto& h : ops) b.push_back(bloch_decompose(h));
  std::vector<double> lo(4, 1e9), hi(4, -1e9);
  for (const auto& f : b) {
    const double c[4] = {f.trace, f.vec[0], f.vec[1], f.vec[2]};
    for (int j = 0; j < 4; ++j) lo[j] = std::min(lo[j], c[j]), hi[j] = std::max(hi[j], c[j]);
  }
  return nested_ternary(
      [&](const std::vector<double>& z) {
        double worst = 0.0;
        for (const auto& f : b)
          worst = std::max(worst, std::abs(f.trace - z[0]) / 2.0 +
                                      std::hypot(f.vec[0] - z[1], f.vec[1] - z[2], f.vec[2] - z[3]));
        return worst;
      },
      lo, hi, 36);
}

std::vector<HermitianOp> explicit_set() {
  auto p = [](double t) { return projector_from_angle(t).op(); };
  const double q = std::numbers::pi / 4;
  const HermitianOp id = HermitianOp::identity(2);
  return {p(0) + p(q) + id, p(0) + p(3 * q), p(2 * q) + p(q), p(2 * q) + p(3 * q) + id};
}

TEST(Rad1, TwoPointsIsHalfDistance) {
  const std::vector<std::vector<double>> rows{{0.2, 0.8, 0.0}, {0.5, 0.1, 0.4}};
  EXPECT_NEAR(rad1(rows).radius, l1_distance(rows[0], rows[1]) / 2.0, 1e-12);
}

TEST(Rad1, PrevedelRowsHaveRadiusOne) {
  const Rad1Result r = rad1(make_prevedel().matrix());
  EXPECT_NEAR(r.radius, 1.0, 1e-12);
  EXPECT_NEAR(r.max_distance, r.radius, 1e-12);
}

TEST(Rad1, MatchesTernaryOracle) {
  Rng rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const int k = 2 + static_cast<int>(rng.below(2));
    const Channel ch = testing::random_channel(rng, 2 + static_cast<int>(rng.below(4)), k);
    const Rad1Result r = rad1(ch.matrix());
    EXPECT_NEAR(r.radius, rad1_oracle(ch.matrix()), 1e-7);
    EXPECT_NEAR(r.max_distance, r.radius, 1e-9);
    EXPECT_GE(r.radius + 1e-12, diam1(ch.matrix()) / 2.0);
  }
}

TEST(Rad1, RejectsOversizedInput) {
  EXPECT_THROW(rad1({}), ValidationError);
  EXPECT_THROW(rad1({{1.0}, {1.0, 0.0}}), ValidationError);
}

TEST(RadOp, ExplicitSetRadiusAndCenter) {
  const auto ops = explicit_set();
  const RadOpResult r = rad_op(ops);
  const double target = 0.5 + 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(r.radius, target, 1e-7);
  EXPECT_LE(r.gap(), 1e-7);
  EXPECT_NEAR(max_distance(ops, 1.5 * HermitianOp::identity(2)), target, 1e-12);
  EXPECT_LT(max_abs_entry(r.center.matrix() - (1.5 * HermitianOp::identity(2)).matrix()), 1e-4);
}

TEST(RadOp, SingleProjectorFormula) {
  // P_0 + P_t - (3/2 + (cos t - sin t)/2) I sits at distance 1/2 + (cos t + sin t)/2 from 0.
  const double t = std::numbers::pi / 4;
  const HermitianOp h = projector_from_angle(0).op() + projector_from_angle(t).op() -
                        (1.5 + (std::cos(t) - std::sin(t)) / 2.0) * HermitianOp::identity(2);
  EXPECT_NEAR(operator_norm(h), 0.5 + 1.0 / std::sqrt(2.0), 1e-12);
}

TEST(RadOp, MatchesBlochOracle) {
  Rng rng(23);
  for (int trial = 0; trial < 12; ++trial) {
    std::vector<HermitianOp> ops;
    const int k = 2 + static_cast<int>(rng.below(3));
    for (int i = 0; i < k; ++i) ops.push_back(testing::random_hermitian(rng, 2));
    EXPECT_NEAR(rad_op(ops).radius, rad_op_qubit_oracle(ops), 1e-6);
  }
}

TEST(RadOp, BarrierCertificateIsTight) {
  Rng rng(29);
  for (int n = 1; n <= 4; ++n)
    for (int trial = 0; trial < 25; ++trial) {
      std::vector<HermitianOp> ops;
      const int k = 2 + static_cast<int>(rng.below(5));
      for (int i = 0; i < k; ++i) ops.push_back(testing::random_hermitian(rng, n));
      const RadOpResult r = rad_op(ops);
      EXPECT_LE(r.gap(), default_radius_tolerance(n)) << "n=" << n;
      EXPECT_GE(r.gap(), -1e-9);
      EXPECT_NEAR(max_distance(ops, r.center), r.radius, 1e-12);
      if (!r.lambdas.empty()) EXPECT_LE(dual_value(ops, r.lambdas, r.lambdas_prime), r.radius + 1e-9);
    }
}

TEST(RadOp, SubgradientAgreesWithBarrier) {
  Rng rng(31);
  SolverOptions sub;
  sub.method = RadiusMethod::Subgradient;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<HermitianOp> ops;
    const int n = 2 + static_cast<int>(rng.below(2));
    for (int i = 0; i < 4; ++i) ops.push_back(testing::random_hermitian(rng, n));
    const RadOpResult b = rad_op(ops), s = rad_op(ops, sub);
    EXPECT_GE(s.radius, b.dual_lower_bound - 1e-9);
    EXPECT_NEAR(s.radius, b.radius, 2e-3);
  }
}

TEST(RadOp, TranslationInvariance) {
  Rng rng(37);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<HermitianOp> ops, shifted;
    const HermitianOp t = testing::random_hermitian(rng, 2, 3.0);
    for (int i = 0; i < 3; ++i) {
      ops.push_back(testing::random_hermitian(rng, 2));
      shifted.push_back(ops.back() + t);
    }
    EXPECT_NEAR(rad_op(ops).radius, rad_op(shifted).radius, 1e-7);
  }
}

TEST(RadOp, ConvexityCheck) {
  Rng rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<HermitianOp> j, k;
    for (int i = 0; i < 3; ++i) {
      j.push_back(testing::random_qubit_projector(rng).op());
      k.push_back(testing::random_qubit_projector(rng).op());
    }
    EXPECT_TRUE(rad_convexity_check(j, k, rng.uniform()));
  }
}

TEST(RadOp, WeakDualityOnRandomMultipliers) {
  Rng rng(43);
  const auto ops = explicit_set();
  const double ceiling = 0.5 + 1.0 / std::sqrt(2.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<HermitianOp> lam, lamp;
    HermitianOp sum = HermitianOp::zero(2);
    for (std::size_t i = 0; i < ops.size(); ++i) {
      const HermitianOp a = testing::random_hermitian(rng, 2);
      lam.push_back(HermitianOp::from_matrix(a.matrix() * a.matrix()));
      sum += lam.back();
    }
    std::vector<double> w(ops.size());
    double ws = 0.0;
    for (double& v : w) ws += (v = rng.uniform());
    const double scale = 0.5 / sum.trace();
    for (std::size_t i = 0; i < ops.size(); ++i) {
      lam[i] *= scale;
      lamp.push_back((scale * w[i] / ws) * sum);
    }
    EXPECT_LE(dual_value(ops, lam, lamp), ceiling + 1e-6);
  }
}

TEST(RadOp, DualValueRejectsInfeasibleMultipliers) {
  const auto ops = explicit_set();
  const HermitianOp q = 0.0625 * HermitianOp::identity(2);
  std::vector<HermitianOp> lam(4, q), lamp(4, q);
  EXPECT_NO_THROW(dual_value(ops, lam, lamp));
  lamp[0] = 0.125 * HermitianOp::identity(2);
  EXPECT_THROW(dual_value(ops, lam, lamp), ValidationError);
  lam[0] = -0.0625 * HermitianOp::identity(2);
  EXPECT_THROW(dual_value(ops, lam, lamp), ValidationError);
}

TEST(RadOp, RejectsMixedDimensions) {
  const std::vector<HermitianOp> ops{HermitianOp::zero(2), HermitianOp::zero(3)};
  EXPECT_THROW(rad_op(ops), ValidationError);
}

}  // namespace
}  // namespace oneshot
