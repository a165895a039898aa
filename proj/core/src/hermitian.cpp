#include "oneshot/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "oneshot/errors.hpp"

namespace oneshot {

ComplexMatrix::ComplexMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
  if (rows < 0 || cols < 0) throw DimensionError("negative matrix dimension");
}

ComplexMatrix ComplexMatrix::identity(int n) {
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionError("matrix shape mismatch in +");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionError("matrix shape mismatch in -");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (auto& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix shape mismatch in *");
  ComplexMatrix out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex(0.0)) continue;
      for (int j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

double max_abs_entry(const ComplexMatrix& m) {
  double best = 0.0;
  for (const auto& z : m.data()) best = std::max(best, std::abs(z));
  return best;
}

// --- HermitianOp -----------------------------------------------------------

HermitianOp HermitianOp::from_matrix(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("Hermitian operator must be square");
  if (m.rows() < 1) throw DimensionError("Hermitian operator must have dim >= 1");
  const double scale = std::max(1.0, max_abs_entry(m));
  const int n = m.rows();
  ComplexMatrix sym(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const Complex a = m(i, j);
      const Complex b = std::conj(m(j, i));
      if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
        throw ValidationError("non-finite matrix entry");
      if (std::abs(a - b) > kHermitianTol * scale)
        throw ValidationError("matrix is not Hermitian at (" + std::to_string(i) + "," +
                              std::to_string(j) + ")");
      const Complex avg = 0.5 * (a + b);
      sym(i, j) = avg;
      sym(j, i) = std::conj(avg);
    }
    sym(i, i) = sym(i, i).real();
  }
  return HermitianOp(std::move(sym));
}

HermitianOp HermitianOp::from_rows(const std::vector<std::vector<Complex>>& rows) {
  const int n = static_cast<int>(rows.size());
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n)
      throw DimensionError("ragged rows for Hermitian operator");
    for (int j = 0; j < n; ++j) m(i, j) = rows[i][j];
  }
  return from_matrix(m);
}

HermitianOp HermitianOp::identity(int n) {
  if (n < 1) throw DimensionError("Hermitian operator must have dim >= 1");
  return HermitianOp(ComplexMatrix::identity(n));
}

HermitianOp HermitianOp::zero(int n) {
  if (n < 1) throw DimensionError("Hermitian operator must have dim >= 1");
  return HermitianOp(ComplexMatrix(n, n));
}

HermitianOp HermitianOp::diagonal(std::span<const double> d) {
  const int n = static_cast<int>(d.size());
  if (n < 1) throw DimensionError("Hermitian operator must have dim >= 1");
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = d[i];
  return HermitianOp(std::move(m));
}

HermitianOp HermitianOp::operator-() const {
  ComplexMatrix m = m_;
  m *= -1.0;
  return HermitianOp(std::move(m));
}

HermitianOp& HermitianOp::operator+=(const HermitianOp& other) {
  m_ += other.m_;
  return *this;
}

HermitianOp& HermitianOp::operator-=(const HermitianOp& other) {
  m_ -= other.m_;
  return *this;
}

HermitianOp& HermitianOp::operator*=(double s) {
  m_ *= s;
  return *this;
}

HermitianOp operator+(HermitianOp a, const HermitianOp& b) { return a += b; }
HermitianOp operator-(HermitianOp a, const HermitianOp& b) { return a -= b; }
HermitianOp operator*(double s, HermitianOp a) { return a *= s; }

double trace_product(const HermitianOp& a, const HermitianOp& b) {
  if (a.dim() != b.dim()) throw DimensionError("dimension mismatch in trace_product");
  double t = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) t += (a(i, j) * b(j, i)).real();
  return t;
}

HermitianOp conjugate(const HermitianOp& h, const ComplexMatrix& u) {
  return HermitianOp::from_matrix(u * h.matrix() * u.adjoint());
}

// --- Eigensolver -------------------------------------------------------------

namespace {

double off_diagonal_mass(const ComplexMatrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

double frobenius(const ComplexMatrix& a) {
  double s = 0.0;
  for (const auto& z : a.data()) s += std::norm(z);
  return std::sqrt(s);
}

}  // namespace

Eigensystem eigh(const HermitianOp& h) {
  const int n = h.dim();
  ComplexMatrix a = h.matrix();
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double threshold = 1e-12 * std::max(1.0, frobenius(a));

  int sweep = 0;
  while (off_diagonal_mass(a) > threshold) {
    if (++sweep > 100) throw InternalError("Jacobi eigensolver did not converge in 100 sweeps");
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq_abs = std::abs(a(p, q));
        if (apq_abs == 0.0) continue;
        // Phase-rotate column q so that a(p, q) becomes real positive, then
        // apply the real symmetric Jacobi rotation. Combined 2x2 block:
        //   U = [[c, s], [-s e^{i phi}, c e^{i phi}]],  phi = -arg a(p, q).
        const Complex phase = std::conj(a(p, q)) / apq_abs;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * apq_abs);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex upp = c, upq = s, uqp = -s * phase, uqq = c * phase;

        for (int k = 0; k < n; ++k) {  // a <- a U, v <- v U
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * upp + akq * uqp;
          a(k, q) = akp * upq + akq * uqq;
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * upp + vkq * uqp;
          v(k, q) = vkp * upq + vkq * uqq;
        }
        for (int k = 0; k < n; ++k) {  // a <- U^dagger a
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
          a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return a(x, x).real() < a(y, y).real(); });
  Eigensystem out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (int k = 0; k < n; ++k) {
    const int src = order[k];
    out.values[k] = a(src, src).real();
    for (int i = 0; i < n; ++i) out.vectors(i, k) = v(i, src);
  }
  return out;
}

std::vector<double> eig_hermitian(const HermitianOp& h) { return eigh(h).values; }

double operator_norm(const HermitianOp& h) {
  if (h.dim() == 2) {
    const BlochForm b = bloch_decompose(h);
    return std::abs(b.trace) / 2.0 + std::hypot(b.vec[0], b.vec[1], b.vec[2]);
  }
  const auto ev = eig_hermitian(h);
  return std::max(std::abs(ev.front()), std::abs(ev.back()));
}

double min_eigenvalue(const HermitianOp& h) { return eig_hermitian(h).front(); }

HermitianOp positive_part_projector(const HermitianOp& h, double threshold) {
  const Eigensystem es = eigh(h);
  const int n = h.dim();
  ComplexMatrix p(n, n);
  for (int k = 0; k < n; ++k) {
    if (es.values[k] <= threshold) continue;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) p(i, j) += es.vectors(i, k) * std::conj(es.vectors(j, k));
  }
  return HermitianOp::from_matrix(p);
}

// --- Bloch form ----------------------------------------------------------------

HermitianOp pauli_x() { return HermitianOp::from_rows({{0.0, 1.0}, {1.0, 0.0}}); }
HermitianOp pauli_y() {
  return HermitianOp::from_rows({{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}});
}
HermitianOp pauli_z() { return HermitianOp::from_rows({{1.0, 0.0}, {0.0, -1.0}}); }

BlochForm bloch_decompose(const HermitianOp& h) {
  if (h.dim() != 2) throw DimensionError("bloch_decompose requires dim 2, got " + std::to_string(h.dim()));
  BlochForm b;
  b.trace = h(0, 0).real() + h(1, 1).real();
  b.vec = {h(0, 1).real(), -h(0, 1).imag(), (h(0, 0).real() - h(1, 1).real()) / 2.0};
  return b;
}

HermitianOp reconstruct(const BlochForm& b) {
  const double half = b.trace / 2.0;
  return HermitianOp::from_rows({{half + b.vec[2], Complex(b.vec[0], -b.vec[1])},
                                 {Complex(b.vec[0], b.vec[1]), half - b.vec[2]}});
}

// --- Projectors ------------------------------------------------------------------

Projector Projector::from_op(const HermitianOp& op) {
  const ComplexMatrix sq = op.matrix() * op.matrix();
  if (max_abs_entry(sq - op.matrix()) > kIdempotenceTol)
    throw ValidationError("operator is not idempotent");
  for (double ev : eig_hermitian(op)) {
    if (std::abs(ev) > 1e-9 && std::abs(ev - 1.0) > 1e-9)
      throw ValidationError("projector eigenvalue outside {0, 1}");
  }
  return Projector(op);
}

Projector Projector::onto_columns(const ComplexMatrix& columns) {
  const ComplexMatrix gram = columns.adjoint() * columns;
  if (max_abs_entry(gram - ComplexMatrix::identity(columns.cols())) > 1e-10)
    throw ValidationError("projector columns are not orthonormal");
  return from_op(HermitianOp::from_matrix(columns * columns.adjoint()));
}

int Projector::rank() const { return static_cast<int>(std::lround(op_.trace())); }

Projector projector_from_angles(double theta, double phi) {
  const double c = std::cos(theta), s = std::sin(theta);
  const Complex off = c * s * std::polar(1.0, -phi);
  return Projector(HermitianOp::from_rows({{c * c, off}, {std::conj(off), s * s}}));
}

Projector projector_from_angle(double theta) { return projector_from_angles(theta, 0.0); }

std::array<double, 2> angles_of_rank1(const Projector& p) {
  if (p.dim() != 2 || p.rank() != 1) throw ValidationError("angles_of_rank1 needs a rank-1 qubit projector");
  // p = |v><v| with v = (cos t, e^{i phi} sin t): p00 = cos^2 t, p10 = e^{i phi} cos t sin t.
  const double c2 = std::clamp(p.op()(0, 0).real(), 0.0, 1.0);
  const double theta = std::acos(std::sqrt(c2));
  const Complex p10 = p.op()(1, 0);
  const double phi = std::abs(p10) > 1e-14 ? std::arg(p10) : 0.0;
  return {theta, phi};
}

Projector complement(const Projector& p) {
  return Projector(HermitianOp::identity(p.dim()) - p.op());
}

}  // namespace oneshot
