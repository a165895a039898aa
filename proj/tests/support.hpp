#pragma once

#include <cmath>
#include <vector>

#include "oneshot/channels.hpp"
#include "oneshot/correlations.hpp"
#include "oneshot/hermitian.hpp"
#include "oneshot/random.hpp"

namespace oneshot::testing {

inline Channel random_channel(Rng& rng, int inputs, int outputs) {
  std::vector<std::vector<double>> m(inputs, std::vector<double>(outputs));
  for (auto& row : m) {
    double sum = 0.0;
    for (double& v : row) {
      v = -std::log(1.0 - rng.uniform());
      sum += v;
    }
    for (double& v : row) v /= sum;
  }
  return make_channel("random", std::move(m));
}

inline HermitianOp random_hermitian(Rng& rng, int n, double scale = 1.0) {
  std::vector<std::vector<Complex>> rows(n, std::vector<Complex>(n));
  for (int i = 0; i < n; ++i) {
    rows[i][i] = scale * rng.normal();
    for (int j = i + 1; j < n; ++j) {
      rows[i][j] = scale * Complex(rng.normal(), rng.normal());
      rows[j][i] = std::conj(rows[i][j]);
    }
  }
  return HermitianOp::from_rows(rows);
}

inline Projector random_qubit_projector(Rng& rng) {
  switch (rng.below(4)) {
    case 0: return Projector::from_op(HermitianOp::zero(2));
    case 1: return Projector::from_op(HermitianOp::identity(2));
    default: return projector_from_angles(std::acos(rng.uniform(-1.0, 1.0)) / 2.0, rng.uniform(0.0, 6.283185307179586));
  }
}

// Random pure two-qubit state measured in random projective bases.
inline Correlation random_quantum_box(Rng& rng) {
  ComplexMatrix psi(4, 1);
  double norm = 0.0;
  for (int i = 0; i < 4; ++i) {
    psi(i, 0) = Complex(rng.normal(), rng.normal());
    norm += std::norm(psi(i, 0));
  }
  for (int i = 0; i < 4; ++i) psi(i, 0) /= std::sqrt(norm);
  const HermitianOp state = HermitianOp::from_matrix(psi * psi.adjoint());
  auto side = [&rng] {
    std::vector<std::vector<HermitianOp>> povms;
    for (int k = 0; k < 2; ++k) {
      const Projector p = projector_from_angles(std::acos(rng.uniform(-1.0, 1.0)) / 2.0, rng.uniform(0.0, 6.283185307179586));
      povms.push_back({p.op(), complement(p).op()});
    }
    return povms;
  };
  const auto alice = side();
  return quantum_correlation(state, alice, side());
}

// Random point of the binary non-signaling polytope (mixture of its 24 vertices).
inline Correlation random_ns_box(Rng& rng) {
  std::vector<Correlation> vertices = deterministic_boxes();
  for (int j = 1; j <= 4; ++j)
    for (int sign : {1, -1}) vertices.push_back(pr_box(j, sign));
  std::vector<double> w(vertices.size());
  double sum = 0.0;
  for (double& v : w) {
    v = std::pow(rng.uniform(), 4.0);
    sum += v;
  }
  std::vector<double> t(16, 0.0);
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t k = 0; k < 16; ++k) t[k] += w[i] / sum * vertices[i].table()[k];
  return Correlation({"0", "1"}, {"0", "1"}, {"0", "1"}, {"0", "1"}, std::move(t));
}

}  // namespace oneshot::testing
