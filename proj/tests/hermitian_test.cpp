#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oneshot/errors.hpp"
#include "oneshot/hermitian.hpp"
#include "support.hpp"

namespace oneshot {
namespace {

TEST(Hermitian, RejectsNonHermitianInput) {
  EXPECT_THROW(HermitianOp::from_rows({{1.0, 2.0}, {0.0, 1.0}}), ValidationError);
  EXPECT_THROW(HermitianOp::from_rows({{Complex(0.0, 1.0), 0.0}, {0.0, 0.0}}), ValidationError);
  EXPECT_NO_THROW(HermitianOp::from_rows({{1.0, Complex(0.0, 1.0)}, {Complex(0.0, -1.0), 2.0}}));
}

TEST(Hermitian, PauliSpectra) {
  for (const HermitianOp& p : {pauli_x(), pauli_y(), pauli_z()}) {
    const auto ev = eig_hermitian(p);
    EXPECT_NEAR(ev[0], -1.0, 1e-14);
    EXPECT_NEAR(ev[1], 1.0, 1e-14);
    EXPECT_NEAR(operator_norm(p), 1.0, 1e-14);
  }
}

TEST(Hermitian, EigenDecompositionReconstructs) {
  Rng rng(7);
  for (int n = 1; n <= 4; ++n)
    for (int trial = 0; trial < 50; ++trial) {
      const HermitianOp h = testing::random_hermitian(rng, n);
      const Eigensystem es = eigh(h);
      for (int k = 1; k < n; ++k) EXPECT_LE(es.values[k - 1], es.values[k]);
      ComplexMatrix d(n, n);
      for (int k = 0; k < n; ++k) d(k, k) = es.values[k];
      const ComplexMatrix back = es.vectors * d * es.vectors.adjoint();
      EXPECT_LT(max_abs_entry(back - h.matrix()), 1e-10);
      EXPECT_LT(max_abs_entry(es.vectors.adjoint() * es.vectors - ComplexMatrix::identity(n)), 1e-10);
    }
}

TEST(Hermitian, QubitNormMatchesBlochIdentity) {
  // ||H|| = |Tr H|/2 + ||traceless part|| for 2x2 Hermitian H.
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const HermitianOp h = testing::random_hermitian(rng, 2);
    const BlochForm b = bloch_decompose(h);
    const double v = std::hypot(b.vec[0], b.vec[1], b.vec[2]);
    EXPECT_NEAR(operator_norm(h), std::abs(b.trace) / 2.0 + v, 1e-12);
    EXPECT_LT(max_abs_entry(reconstruct(b).matrix() - h.matrix()), 1e-13);
  }
}

TEST(Hermitian, ProjectorAngles) {
  const Projector p0 = projector_from_angle(0.0);
  EXPECT_NEAR(p0.op()(0, 0).real(), 1.0, 1e-15);
  EXPECT_NEAR(p0.op()(1, 1).real(), 0.0, 1e-15);
  const Projector q = projector_from_angles(0.3, -1.2);
  EXPECT_EQ(q.rank(), 1);
  const auto a = angles_of_rank1(q);
  EXPECT_NEAR(a[0], 0.3, 1e-12);
  EXPECT_NEAR(a[1], -1.2, 1e-12);
  EXPECT_LT(max_abs_entry((q.op() + complement(q).op()).matrix() - ComplexMatrix::identity(2)), 1e-15);
  EXPECT_THROW(Projector::from_op(0.5 * HermitianOp::identity(2)), ValidationError);
}

TEST(Hermitian, PositivePartProjector) {
  const HermitianOp h = HermitianOp::diagonal(std::vector<double>{-1.0, 0.5, 2.0});
  const HermitianOp p = positive_part_projector(h);
  EXPECT_NEAR(p.trace(), 2.0, 1e-14);
  EXPECT_NEAR(trace_product(p, h), 2.5, 1e-14);
}

TEST(Hermitian, TensorProductTrace) {
  const ComplexMatrix k = kron(pauli_z().matrix(), pauli_x().matrix());
  EXPECT_EQ(k.rows(), 4);
  EXPECT_NEAR(std::abs(k.trace()), 0.0, 1e-15);
  EXPECT_NEAR(k(0, 1).real(), 1.0, 1e-15);
  EXPECT_NEAR(k(2, 3).real(), -1.0, 1e-15);
}

}  // namespace
}  // namespace oneshot
