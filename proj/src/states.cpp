#include "cohere/states.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "cohere/tolerance.hpp"

namespace cohere {

ProbVector::ProbVector(std::vector<double> values) : values_(std::move(values)) {
  const Tolerances& tol = tolerances();
  if (values_.empty()) throw ValidationError("probability vector must be non-empty");
  for (double& v : values_) {
    if (!std::isfinite(v)) throw ValidationError("probability vector has a non-finite entry");
    if (v < -tol.prob_clamp) {
      throw ValidationError("probability vector has a negative entry " + std::to_string(v), -v);
    }
    if (v < 0.0) v = 0.0;
  }
  const double total = std::accumulate(values_.begin(), values_.end(), 0.0);
  if (std::abs(total - 1.0) > tol.trace) {
    throw ValidationError("probability vector sums to " + std::to_string(total),
                          std::abs(total - 1.0));
  }
}

std::vector<double> ProbVector::sorted() const {
  std::vector<double> out = values_;
  std::stable_sort(out.begin(), out.end(), std::greater<>());
  return out;
}

PureState::PureState(Vector amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() == 0) throw ValidationError("pure state must have dim >= 1");
  const double n2 = amps_.squaredNorm();
  if (!(std::abs(n2 - 1.0) <= tolerances().trace)) {
    throw ValidationError("pure state is not normalized: squared norm " + std::to_string(n2),
                          std::abs(n2 - 1.0));
  }
}

ProbVector PureState::probabilities() const {
  std::vector<double> p(amps_.size());
  for (Eigen::Index i = 0; i < amps_.size(); ++i) p[i] = std::norm(amps_(i));
  return ProbVector(std::move(p));
}

PureState PureState::padded(int dim) const {
  if (dim < this->dim()) throw DimensionError("cannot pad a pure state to a smaller dimension");
  Vector out = Vector::Zero(dim);
  out.head(amps_.size()) = amps_;
  return PureState(std::move(out));
}

DensityMatrix::DensityMatrix(const HermitianMatrix& h) : rho_(h) {
  const Tolerances& tol = tolerances();
  const double tr = rho_.trace();
  if (!(std::abs(tr - 1.0) <= tol.trace)) {
    throw ValidationError("density matrix trace is " + std::to_string(tr), std::abs(tr - 1.0));
  }
  require_psd(rho_, "density matrix");
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  return DensityMatrix(HermitianMatrix::symmetrized(psi.amplitudes() * psi.amplitudes().adjoint()));
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  return DensityMatrix(HermitianMatrix::identity(dim) * (1.0 / dim));
}

DensityMatrix DensityMatrix::diagonal(const std::vector<double>& probabilities) {
  const ProbVector p(probabilities);
  return DensityMatrix(HermitianMatrix::diagonal(
      Eigen::Map<const RealVector>(p.values().data(), static_cast<Eigen::Index>(p.size()))));
}

DensityMatrix dephase(const DensityMatrix& rho) {
  return DensityMatrix(HermitianMatrix::diagonal(rho.diagonal_entries()));
}

PureState max_coherent(int m, int dim) {
  if (m < 1) throw ValidationError("maximally coherent state needs m >= 1");
  if (m > dim) {
    throw DimensionError("maximally coherent state Psi_" + std::to_string(m) +
                         " does not fit in dimension " + std::to_string(dim));
  }
  Vector amps = Vector::Zero(dim);
  amps.head(m).setConstant(Complex(1.0 / std::sqrt(static_cast<double>(m)), 0.0));
  return PureState(std::move(amps));
}

double l1_norm(const DensityMatrix& rho) { return rho.matrix().cwiseAbs().sum(); }

bool is_incoherent(const DensityMatrix& rho) {
  Matrix off = rho.matrix();
  off.diagonal().setZero();
  return off.norm() <= tolerances().incoherence;
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return fidelity(rho.hermitian(), sigma.hermitian());
}

DensityMatrix kron(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(kron(a.hermitian(), b.hermitian()));
}

PureState kron(const PureState& a, const PureState& b) {
  Vector out(a.dim() * b.dim());
  for (int i = 0; i < a.dim(); ++i) out.segment(i * b.dim(), b.dim()) = a.amplitudes()(i) * b.amplitudes();
  return PureState(std::move(out));
}

namespace {
double entropy_bits(const RealVector& spectrum) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
    const double p = spectrum(i);
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}
}  // namespace

double von_neumann_entropy(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho.matrix(), Eigen::EigenvaluesOnly);
  return entropy_bits(solver.eigenvalues().cwiseMax(0.0));
}

double shannon_entropy(const ProbVector& p) {
  return entropy_bits(Eigen::Map<const RealVector>(p.values().data(), static_cast<Eigen::Index>(p.size())));
}

PureState random_pure_state(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Complex(gauss(rng), gauss(rng));
  v /= v.norm();
  return PureState(std::move(v));
}

DensityMatrix random_density(int dim, int rank, std::mt19937_64& rng) {
  if (rank < 1 || rank > dim) throw ValidationError("random_density: rank must be in [1, dim]");
  std::normal_distribution<double> gauss;
  Matrix g(dim, rank);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < rank; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(HermitianMatrix::symmetrized(rho));
}

}  // namespace cohere
