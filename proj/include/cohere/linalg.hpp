#pragma once

#include <complex>

#include <Eigen/Dense>

#include "cohere/errors.hpp"

namespace cohere {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

// Dense complex Hermitian matrix. Construction checks hermiticity against the
// active tolerance profile and stores the exactly-Hermitian part (A + A^dag)/2.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const Matrix& m);

  // Symmetrizes without the tolerance check. For operators that are Hermitian
  // by construction (sums of Hermitian terms, V diag V^dag, ...).
  static HermitianMatrix symmetrized(const Matrix& m);

  static HermitianMatrix identity(int dim);
  static HermitianMatrix zero(int dim);
  static HermitianMatrix diagonal(const RealVector& diag);
  static HermitianMatrix projector(const Vector& v);  // |v><v| / <v|v>

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }
  double trace() const { return m_.trace().real(); }
  RealVector diagonal_entries() const { return m_.diagonal().real(); }

  HermitianMatrix operator+(const HermitianMatrix& o) const;
  HermitianMatrix operator-(const HermitianMatrix& o) const;
  HermitianMatrix operator-() const;
  HermitianMatrix operator*(double s) const;
  friend HermitianMatrix operator*(double s, const HermitianMatrix& a) { return a * s; }

 private:
  struct Unchecked {};
  HermitianMatrix(Matrix m, Unchecked) : m_(std::move(m)) {}

  Matrix m_;
};

// Eigenvalues sorted non-increasing (ties keep the solver's order); the
// columns of `eigenvectors` follow the same order.
struct EigenDecomposition {
  RealVector eigenvalues;
  Matrix eigenvectors;

  Matrix reconstruct() const;
};

EigenDecomposition eig(const HermitianMatrix& a);

// Relative eigen-truncation threshold tau = rank_relative * max(1, max|lambda|).
double truncation_threshold(const RealVector& eigenvalues);

HermitianMatrix positive_part(const HermitianMatrix& a);

// Projector onto the eigenvectors with lambda > tau. Throws ValidationError
// when `a` has an eigenvalue below -psd tolerance.
HermitianMatrix support_projector(const HermitianMatrix& a);

// V diag(lambda^s) V^dag over the support (lambda > tau). Negative and zero
// exponents act on the support only, so s = 0 yields the support projector
// and s = -1 the pseudo-inverse. Rejects non-PSD input.
HermitianMatrix matrix_power(const HermitianMatrix& a, double s);

double trace_norm(const HermitianMatrix& a);

// F = ||sqrt(a) sqrt(b)||_1^2 for PSD arguments of equal dimension.
double fidelity(const HermitianMatrix& a, const HermitianMatrix& b);

// Rank counted with the relative truncation threshold.
int numerical_rank(const HermitianMatrix& a);

double min_eigenvalue(const HermitianMatrix& a);
double max_eigenvalue(const HermitianMatrix& a);

// Throws ValidationError("... not positive semidefinite") when
// min eigenvalue < -tolerance.
void require_psd(const HermitianMatrix& a, const char* what);

// Hilbert-Schmidt inner product Tr(A^dag B), real part (exact for Hermitian pairs).
double hs_inner(const HermitianMatrix& a, const HermitianMatrix& b);

HermitianMatrix kron(const HermitianMatrix& a, const HermitianMatrix& b);
Matrix kron(const Matrix& a, const Matrix& b);

double max_asymmetry(const Matrix& m);

}  // namespace cohere
