#pragma once

#include <random>
#include <vector>

#include "cohere/linalg.hpp"

namespace cohere {

// Probability vector: non-negative entries summing to one. Entries in
// (-prob_clamp, 0) are clamped to zero on construction.
class ProbVector {
 public:
  ProbVector() = default;
  explicit ProbVector(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }

  // Sorted non-increasing copy.
  std::vector<double> sorted() const;

 private:
  std::vector<double> values_;
};

// Pure state stored by its amplitudes in the incoherent basis.
class PureState {
 public:
  PureState() = default;
  explicit PureState(Vector amplitudes);

  int dim() const { return static_cast<int>(amps_.size()); }
  const Vector& amplitudes() const { return amps_; }
  ProbVector probabilities() const;

  // Zero-padded to `dim` amplitudes.
  PureState padded(int dim) const;

 private:
  Vector amps_;
};

// Density operator on C^d with the computational basis as the incoherent basis.
class DensityMatrix {
 public:
  DensityMatrix() = default;
  explicit DensityMatrix(const HermitianMatrix& h);
  explicit DensityMatrix(const Matrix& m) : DensityMatrix(HermitianMatrix(m)) {}

  static DensityMatrix from_pure(const PureState& psi);
  static DensityMatrix maximally_mixed(int dim);
  static DensityMatrix diagonal(const std::vector<double>& probabilities);

  int dim() const { return rho_.dim(); }
  const HermitianMatrix& hermitian() const { return rho_; }
  const Matrix& matrix() const { return rho_.matrix(); }
  RealVector diagonal_entries() const { return rho_.diagonal_entries(); }

 private:
  HermitianMatrix rho_;
};

// Completely dephasing channel in the incoherent basis.
DensityMatrix dephase(const DensityMatrix& rho);

// |Psi_m> = sum_{i<m} |i>/sqrt(m), embedded in C^dim.
PureState max_coherent(int m, int dim);
inline PureState max_coherent(int m) { return max_coherent(m, m); }

// Sum of moduli of all entries.
double l1_norm(const DensityMatrix& rho);

bool is_incoherent(const DensityMatrix& rho);

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

DensityMatrix kron(const DensityMatrix& a, const DensityMatrix& b);
PureState kron(const PureState& a, const PureState& b);

// Von Neumann entropy in bits.
double von_neumann_entropy(const DensityMatrix& rho);

// Shannon entropy in bits.
double shannon_entropy(const ProbVector& p);

// Sampling helpers for randomized checks.
PureState random_pure_state(int dim, std::mt19937_64& rng);
// Haar-induced mixed state of the given rank (rank == dim gives the
// Hilbert-Schmidt ensemble).
DensityMatrix random_density(int dim, int rank, std::mt19937_64& rng);

}  // namespace cohere
