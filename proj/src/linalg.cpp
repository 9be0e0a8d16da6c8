#include "cohere/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "cohere/tolerance.hpp"

namespace cohere {

NotHermitianError::NotHermitianError(double max_asymmetry)
    : ValidationError("matrix is not Hermitian: max |A_ij - conj(A_ji)| = " +
                          std::to_string(max_asymmetry),
                      max_asymmetry) {}

double max_asymmetry(const Matrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

HermitianMatrix::HermitianMatrix(const Matrix& m) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw DimensionError("Hermitian matrix must be square with dim >= 1");
  }
  const double asym = max_asymmetry(m);
  if (!(asym <= tolerances().hermiticity)) throw NotHermitianError(asym);
  m_ = 0.5 * (m + m.adjoint());
}

HermitianMatrix HermitianMatrix::symmetrized(const Matrix& m) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw DimensionError("Hermitian matrix must be square with dim >= 1");
  }
  return HermitianMatrix(Matrix(0.5 * (m + m.adjoint())), Unchecked{});
}

HermitianMatrix HermitianMatrix::identity(int dim) {
  return HermitianMatrix(Matrix::Identity(dim, dim), Unchecked{});
}

HermitianMatrix HermitianMatrix::zero(int dim) {
  return HermitianMatrix(Matrix::Zero(dim, dim), Unchecked{});
}

HermitianMatrix HermitianMatrix::diagonal(const RealVector& diag) {
  return HermitianMatrix(Matrix(diag.cast<Complex>().asDiagonal()), Unchecked{});
}

HermitianMatrix HermitianMatrix::projector(const Vector& v) {
  const double n2 = v.squaredNorm();
  if (n2 <= 0.0) throw ValidationError("cannot project onto the zero vector");
  return symmetrized(v * v.adjoint() / n2);
}

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& o) const {
  return HermitianMatrix(Matrix(m_ + o.m_), Unchecked{});
}
HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix& o) const {
  return HermitianMatrix(Matrix(m_ - o.m_), Unchecked{});
}
HermitianMatrix HermitianMatrix::operator-() const { return HermitianMatrix(Matrix(-m_), Unchecked{}); }
HermitianMatrix HermitianMatrix::operator*(double s) const {
  return HermitianMatrix(Matrix(m_ * s), Unchecked{});
}

Matrix EigenDecomposition::reconstruct() const {
  return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
}

EigenDecomposition eig(const HermitianMatrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.matrix());
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("Hermitian eigensolver did not converge");
  }
  const RealVector& ascending = solver.eigenvalues();
  const int n = static_cast<int>(ascending.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return ascending(i) > ascending(j); });
  EigenDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (int k = 0; k < n; ++k) {
    out.eigenvalues(k) = ascending(order[k]);
    out.eigenvectors.col(k) = solver.eigenvectors().col(order[k]);
  }
  return out;
}

double truncation_threshold(const RealVector& eigenvalues) {
  const double scale = eigenvalues.size() ? eigenvalues.cwiseAbs().maxCoeff() : 0.0;
  return tolerances().rank_relative * std::max(1.0, scale);
}

namespace {

// V diag(f(lambda)) V^dag restricted to lambda > tau.
template <class F>
HermitianMatrix spectral_map_on_support(const EigenDecomposition& e, F f) {
  const double tau = truncation_threshold(e.eigenvalues);
  const int n = static_cast<int>(e.eigenvalues.size());
  Matrix out = Matrix::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    const double lambda = e.eigenvalues(k);
    if (lambda > tau) {
      out += f(lambda) * e.eigenvectors.col(k) * e.eigenvectors.col(k).adjoint();
    }
  }
  return HermitianMatrix::symmetrized(out);
}

// Square root with negative eigenvalues clamped to zero and no truncation:
// truncating eigenvalues near tau would move the root by sqrt(tau).
// Square root with eigenvalues at solver-noise level set to zero; a noise
// eigenvalue of 1e-16 would otherwise contribute 1e-8 to the root.
Matrix clamped_sqrt(const HermitianMatrix& a) {
  const EigenDecomposition e = eig(a);
  const double noise = 1e-14 * std::max(1.0, e.eigenvalues.cwiseAbs().maxCoeff());
  const RealVector roots = e.eigenvalues.unaryExpr([noise](double l) { return l > noise ? std::sqrt(l) : 0.0; });
  return e.eigenvectors * roots.cast<Complex>().asDiagonal() * e.eigenvectors.adjoint();
}

}  // namespace

HermitianMatrix positive_part(const HermitianMatrix& a) {
  return spectral_map_on_support(eig(a), [](double l) { return l; });
}

void require_psd(const HermitianMatrix& a, const char* what) {
  const double lo = min_eigenvalue(a);
  if (lo < -tolerances().psd) {
    throw ValidationError(std::string(what) + " is not positive semidefinite: min eigenvalue " +
                              std::to_string(lo),
                          -lo);
  }
}

HermitianMatrix support_projector(const HermitianMatrix& a) {
  const EigenDecomposition e = eig(a);
  if (e.eigenvalues(e.eigenvalues.size() - 1) < -tolerances().psd) {
    throw ValidationError("support projector requires a PSD operator: min eigenvalue " +
                              std::to_string(e.eigenvalues(e.eigenvalues.size() - 1)),
                          -e.eigenvalues(e.eigenvalues.size() - 1));
  }
  return spectral_map_on_support(e, [](double) { return 1.0; });
}

HermitianMatrix matrix_power(const HermitianMatrix& a, double s) {
  const EigenDecomposition e = eig(a);
  const double lo = e.eigenvalues(e.eigenvalues.size() - 1);
  if (lo < -tolerances().psd) {
    throw ValidationError("matrix power requires a PSD operator: min eigenvalue " +
                              std::to_string(lo),
                          -lo);
  }
  return spectral_map_on_support(e, [s](double l) { return std::pow(l, s); });
}

double trace_norm(const HermitianMatrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.matrix(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().sum();
}

double fidelity(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError("fidelity: dimension mismatch " + std::to_string(a.dim()) + " vs " +
                         std::to_string(b.dim()));
  }
  require_psd(a, "fidelity argument");
  require_psd(b, "fidelity argument");
  const Matrix product = clamped_sqrt(a) * clamped_sqrt(b);
  Eigen::JacobiSVD<Matrix> svd(product);
  const double root = svd.singularValues().sum();
  return std::clamp(root * root, 0.0, 1.0);
}

int numerical_rank(const HermitianMatrix& a) {
  const EigenDecomposition e = eig(a);
  const double tau = truncation_threshold(e.eigenvalues);
  return static_cast<int>((e.eigenvalues.array() > tau).count());
}

double min_eigenvalue(const HermitianMatrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.matrix(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

double max_eigenvalue(const HermitianMatrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.matrix(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(solver.eigenvalues().size() - 1);
}

double hs_inner(const HermitianMatrix& a, const HermitianMatrix& b) {
  return (a.matrix().adjoint() * b.matrix()).trace().real();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

HermitianMatrix kron(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix::symmetrized(kron(a.matrix(), b.matrix()));
}

}  // namespace cohere
