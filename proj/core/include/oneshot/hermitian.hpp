#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

namespace oneshot {

using Complex = std::complex<double>;

// Dense row-major complex matrix. Used for the intermediate products
// (unitaries, tensor products, partial traces) that are not Hermitian.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(int rows, int cols);

  static ComplexMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Complex& operator()(int i, int j) { return data_[static_cast<std::size_t>(i * cols_ + j)]; }
  const Complex& operator()(int i, int j) const {
    return data_[static_cast<std::size_t>(i * cols_ + j)];
  }

  std::span<const Complex> data() const { return data_; }

  ComplexMatrix adjoint() const;
  Complex trace() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex s);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, ComplexMatrix a);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
double max_abs_entry(const ComplexMatrix& m);

/// Immutable n x n Hermitian operator.
///
/// Construction from a general matrix rejects inputs whose deviation from
/// Hermiticity exceeds 1e-12 (scaled by the largest entry when that is above
/// one), and stores the symmetrized (h + h^dagger)/2 so that the invariant
/// holds exactly afterwards.
class HermitianOp {
 public:
  static constexpr double kHermitianTol = 1e-12;

  HermitianOp() : HermitianOp(zero(1)) {}

  static HermitianOp from_matrix(const ComplexMatrix& m);
  static HermitianOp from_rows(const std::vector<std::vector<Complex>>& rows);
  static HermitianOp identity(int n);
  static HermitianOp zero(int n);
  static HermitianOp diagonal(std::span<const double> d);

  int dim() const { return m_.rows(); }
  Complex operator()(int i, int j) const { return m_(i, j); }
  const ComplexMatrix& matrix() const { return m_; }
  double trace() const { return m_.trace().real(); }

  HermitianOp operator-() const;
  HermitianOp& operator+=(const HermitianOp& other);
  HermitianOp& operator-=(const HermitianOp& other);
  HermitianOp& operator*=(double s);

 private:
  explicit HermitianOp(ComplexMatrix m) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

HermitianOp operator+(HermitianOp a, const HermitianOp& b);
HermitianOp operator-(HermitianOp a, const HermitianOp& b);
HermitianOp operator*(double s, HermitianOp a);

// Real part of Tr(a b); exact for Hermitian a, b up to rounding.
double trace_product(const HermitianOp& a, const HermitianOp& b);

// u h u^dagger
HermitianOp conjugate(const HermitianOp& h, const ComplexMatrix& u);

struct Eigensystem {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column k belongs to values[k]
};

// Cyclic complex Jacobi. Sweeps until the off-diagonal Frobenius mass drops
// below 1e-12 * max(1, ||h||_F); throws InternalError after 100 sweeps.
Eigensystem eigh(const HermitianOp& h);
std::vector<double> eig_hermitian(const HermitianOp& h);

double operator_norm(const HermitianOp& h);
double min_eigenvalue(const HermitianOp& h);

// Projection onto the span of eigenvectors with eigenvalue > threshold.
HermitianOp positive_part_projector(const HermitianOp& h, double threshold = 0.0);

// Pauli matrices. The Bloch convention used everywhere in this library is
// the ordered basis (X, Y, Z) with
//   X = [[0, 1], [1, 0]],  Y = [[0, -i], [i, 0]],  Z = [[1, 0], [0, -1]],
// and h = (t/2) I + v_x X + v_y Y + v_z Z.
HermitianOp pauli_x();
HermitianOp pauli_y();
HermitianOp pauli_z();

struct BlochForm {
  double trace = 0.0;
  std::array<double, 3> vec{};
};

BlochForm bloch_decompose(const HermitianOp& h);
HermitianOp reconstruct(const BlochForm& b);

class Projector {
 public:
  static constexpr double kIdempotenceTol = 1e-10;

  // Validates op*op == op entrywise and that the spectrum lies in {0, 1}.
  static Projector from_op(const HermitianOp& op);
  // Rank-k projector onto the span of the given orthonormal columns.
  static Projector onto_columns(const ComplexMatrix& columns);

  const HermitianOp& op() const { return op_; }
  int dim() const { return op_.dim(); }
  int rank() const;

 private:
  explicit Projector(HermitianOp op) : op_(std::move(op)) {}
  friend Projector projector_from_angles(double theta, double phi);
  friend Projector complement(const Projector& p);
  HermitianOp op_;
};

// Projection onto cos(theta)|0> + e^{i phi} sin(theta)|1>. With phi = 0 this
// is the real-plane family P_theta; theta and theta + pi give the same
// operator.
Projector projector_from_angles(double theta, double phi);
Projector projector_from_angle(double theta);

// Recovers (theta, phi) of a rank-1 qubit projector, theta in [0, pi/2],
// phi in (-pi, pi].
std::array<double, 2> angles_of_rank1(const Projector& p);

Projector complement(const Projector& p);

}  // namespace oneshot
