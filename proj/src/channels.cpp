#include "cohere/channels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cohere/monotones.hpp"
#include "cohere/tolerance.hpp"

namespace cohere {

namespace {

Matrix dephase_matrix(const Matrix& m) {
  Matrix out = Matrix::Zero(m.rows(), m.cols());
  out.diagonal() = m.diagonal();
  return out;
}

// Replaces tiny negative eigenvalues of a state-like operator by zero and
// restores unit trace.
Matrix clip_to_state(const Matrix& m) {
  const HermitianMatrix h = HermitianMatrix::symmetrized(m);
  if (min_eigenvalue(h) >= 0.0) return h.matrix();
  const EigenDecomposition e = eig(h);
  const RealVector clipped = e.eigenvalues.cwiseMax(0.0);
  Matrix out = e.eigenvectors * clipped.cast<Complex>().asDiagonal() * e.eigenvectors.adjoint();
  return out / out.trace().real();
}

}  // namespace

QuantumChannel::QuantumChannel(int din, int dout, HermitianMatrix choi,
                               std::optional<std::vector<Matrix>> kraus)
    : din_(din), dout_(dout), choi_(std::move(choi)), kraus_(std::move(kraus)) {}

CptpCheck check_cptp(int input_dim, int output_dim, const Matrix& choi) {
  CptpCheck c;
  const HermitianMatrix j = HermitianMatrix::symmetrized(choi);
  c.psd_violation = std::max(0.0, -min_eigenvalue(j));
  double worst = 0.0;
  for (int x1 = 0; x1 < input_dim; ++x1) {
    for (int x2 = 0; x2 < input_dim; ++x2) {
      const Complex tr = choi.block(x1 * output_dim, x2 * output_dim, output_dim, output_dim).trace();
      worst = std::max(worst, std::abs(tr - Complex(x1 == x2 ? 1.0 : 0.0, 0.0)));
    }
  }
  c.trace_violation = worst;
  const double tol = tolerances().cptp;
  c.holds = c.psd_violation <= tol && c.trace_violation <= tol;
  return c;
}

QuantumChannel QuantumChannel::from_choi(int input_dim, int output_dim, const Matrix& choi) {
  if (input_dim < 1 || output_dim < 1 || choi.rows() != input_dim * output_dim ||
      choi.cols() != choi.rows()) {
    throw DimensionError("Choi operator must be (din*dout) x (din*dout)");
  }
  HermitianMatrix j(choi);
  const CptpCheck c = check_cptp(input_dim, output_dim, j.matrix());
  if (c.psd_violation > tolerances().cptp) {
    throw ValidationError("channel is not completely positive: Choi min eigenvalue " +
                              std::to_string(-c.psd_violation),
                          c.psd_violation);
  }
  if (c.trace_violation > tolerances().cptp) {
    throw ValidationError("channel is not trace preserving: max |Tr_out J - 1| = " +
                              std::to_string(c.trace_violation),
                          c.trace_violation);
  }
  return QuantumChannel(input_dim, output_dim, std::move(j), std::nullopt);
}

QuantumChannel QuantumChannel::from_blocks(int input_dim, int output_dim, const std::vector<Matrix>& blocks) {
  Matrix j(input_dim * output_dim, input_dim * output_dim);
  for (int x1 = 0; x1 < input_dim; ++x1) {
    for (int x2 = 0; x2 < input_dim; ++x2) {
      j.block(x1 * output_dim, x2 * output_dim, output_dim, output_dim) = blocks[x1 * input_dim + x2];
    }
  }
  return from_choi(input_dim, output_dim, Matrix(0.5 * (j + j.adjoint())));
}

QuantumChannel QuantumChannel::from_kraus(std::vector<Matrix> kraus) {
  if (kraus.empty()) throw ValidationError("Kraus list must be non-empty");
  const auto dout = kraus.front().rows();
  const auto din = kraus.front().cols();
  for (const Matrix& k : kraus) {
    if (k.rows() != dout || k.cols() != din) throw DimensionError("Kraus operators must share one shape");
  }
  QuantumChannel c = from_choi(static_cast<int>(din), static_cast<int>(dout), choi_from_kraus(kraus));
  c.kraus_ = std::move(kraus);
  return c;
}

Matrix QuantumChannel::block(int x1, int x2) const {
  return choi_.matrix().block(x1 * dout_, x2 * dout_, dout_, dout_);
}

Matrix QuantumChannel::apply_matrix(const Matrix& q) const {
  if (q.rows() != din_ || q.cols() != din_) {
    throw DimensionError("channel input is " + std::to_string(din_) + "-dimensional, got " +
                         std::to_string(q.rows()));
  }
  Matrix out = Matrix::Zero(dout_, dout_);
  if (kraus_) {
    for (const Matrix& k : *kraus_) out += k * q * k.adjoint();
    return out;
  }
  for (int x1 = 0; x1 < din_; ++x1) {
    for (int x2 = 0; x2 < din_; ++x2) {
      if (q(x1, x2) != Complex(0.0, 0.0)) out += q(x1, x2) * block(x1, x2);
    }
  }
  return out;
}

DensityMatrix apply(const QuantumChannel& channel, const DensityMatrix& rho) {
  return DensityMatrix(HermitianMatrix::symmetrized(channel.apply_matrix(rho.matrix())));
}

Matrix choi_from_kraus(const std::vector<Matrix>& kraus) {
  const auto dout = kraus.front().rows();
  const auto din = kraus.front().cols();
  Matrix j = Matrix::Zero(din * dout, din * dout);
  for (const Matrix& k : kraus) {
    Vector v(din * dout);
    for (Eigen::Index x = 0; x < din; ++x) v.segment(x * dout, dout) = k.col(x);
    j += v * v.adjoint();
  }
  return j;
}

std::vector<Matrix> kraus_from_choi(const QuantumChannel& channel) {
  const int din = channel.input_dim();
  const int dout = channel.output_dim();
  const EigenDecomposition e = eig(channel.choi());
  const double cutoff = 1e-10 * std::max(0.0, e.eigenvalues(0));
  std::vector<Matrix> out;
  for (Eigen::Index k = 0; k < e.eigenvalues.size(); ++k) {
    if (e.eigenvalues(k) <= cutoff) break;
    Matrix op(dout, din);
    const Vector v = std::sqrt(e.eigenvalues(k)) * e.eigenvectors.col(k);
    for (int x = 0; x < din; ++x) op.col(x) = v.segment(x * dout, dout);
    out.push_back(std::move(op));
  }
  return out;
}

KrausDioDiagnostics kraus_dio_conditions(const std::vector<Matrix>& kraus) {
  if (kraus.empty()) throw ValidationError("Kraus list must be non-empty");
  const auto dout = kraus.front().rows();
  const auto din = kraus.front().cols();
  const auto n = static_cast<Eigen::Index>(kraus.size());
  auto vec = [&](Eigen::Index y, Eigen::Index x) {
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = kraus[i](y, x);
    return v;
  };
  KrausDioDiagnostics d;
  d.s.s = RealMatrix::Zero(dout, din);
  for (Eigen::Index x = 0; x < din; ++x) {
    for (Eigen::Index y = 0; y < dout; ++y) {
      const Vector kyx = vec(y, x);
      d.s.s(y, x) = kyx.squaredNorm();
      for (Eigen::Index y1 = 0; y1 < dout; ++y1) {
        if (y1 != y) d.condition1 = std::max(d.condition1, std::abs(kyx.dot(vec(y1, x))));
      }
      for (Eigen::Index x1 = 0; x1 < din; ++x1) {
        if (x1 != x) d.condition2 = std::max(d.condition2, std::abs(kyx.dot(vec(y, x1))));
      }
    }
    d.condition3 = std::max(d.condition3, std::abs(d.s.s.col(x).sum() - 1.0));
  }
  return d;
}

MembershipCheck is_dio(const QuantumChannel& channel) {
  const int din = channel.input_dim();
  const int dout = channel.output_dim();
  // Choi(Delta ∘ E) has blocks Delta(E(|x1><x2|)); Choi(E ∘ Delta) keeps only
  // the diagonal blocks E(|x><x|).
  double sq = 0.0;
  for (int x1 = 0; x1 < din; ++x1) {
    for (int x2 = 0; x2 < din; ++x2) {
      const Matrix b = channel.block(x1, x2);
      const Matrix lhs = dephase_matrix(b);
      const Matrix rhs = x1 == x2 ? b : Matrix::Zero(dout, dout);
      sq += (lhs - rhs).squaredNorm();
    }
  }
  MembershipCheck c;
  c.violation = std::sqrt(sq);
  c.holds = c.violation <= tolerances().channel;
  if (channel.kraus()) {
    const KrausDioDiagnostics d = kraus_dio_conditions(*channel.kraus());
    c.kraus_violation = std::max(d.condition1, d.condition2);
  }
  return c;
}

MembershipCheck is_rho_dio(const QuantumChannel& channel, const DensityMatrix& rho) {
  const Matrix out = channel.apply_matrix(rho.matrix());
  const Matrix out_of_dephased = channel.apply_matrix(dephase_matrix(rho.matrix()));
  MembershipCheck c;
  c.violation = (dephase_matrix(out) - out_of_dephased).norm();
  c.holds = c.violation <= tolerances().channel;
  return c;
}

QuantumChannel identity_channel(int dim) { return QuantumChannel::from_kraus({Matrix::Identity(dim, dim)}); }

QuantumChannel dephasing_channel(int dim) {
  std::vector<Matrix> kraus;
  for (int i = 0; i < dim; ++i) {
    Matrix k = Matrix::Zero(dim, dim);
    k(i, i) = 1.0;
    kraus.push_back(std::move(k));
  }
  return QuantumChannel::from_kraus(std::move(kraus));
}

QuantumChannel unitary_channel(const Matrix& u) { return QuantumChannel::from_kraus({u}); }

QuantumChannel twirl_channel(int dim) {
  if (dim < 1) throw ValidationError("twirl needs dim >= 1");
  // Averaging U_pi Q U_pi^dag over all permutations sends every diagonal entry
  // to Tr Q / d and every off-diagonal entry to (sum_{i != j} Q_ij) / (d(d-1)).
  std::vector<Matrix> blocks(dim * dim);
  const Matrix ones = Matrix::Ones(dim, dim);
  const Matrix id = Matrix::Identity(dim, dim);
  for (int x1 = 0; x1 < dim; ++x1) {
    for (int x2 = 0; x2 < dim; ++x2) {
      blocks[x1 * dim + x2] = x1 == x2 ? Matrix(id / static_cast<double>(dim))
                                       : Matrix((ones - id) / static_cast<double>(dim * (dim - 1)));
    }
  }
  return QuantumChannel::from_blocks(dim, dim, blocks);
}

QuantumChannel construct_distill(const DensityMatrix& rho, int m, const TestOperator& x) {
  if (m < 2) throw ValidationError("distillation channel needs m >= 2");
  const int d = rho.dim();
  if (x.dim() != d) throw DimensionError("test operator dimension differs from the state");
  const double weight = hs_inner(x.hermitian(), dephase(rho).hermitian());
  if (std::abs(weight - 1.0 / m) > tolerances().channel) {
    throw ValidationError("constraint <X, Delta(rho)> = 1/m violated: <X, Delta(rho)> = " +
                              std::to_string(weight) + ", 1/m = " + std::to_string(1.0 / m),
                          std::abs(weight - 1.0 / m));
  }
  const Matrix psi = DensityMatrix::from_pure(max_coherent(m)).matrix();
  const Matrix rest = (Matrix::Identity(m, m) - psi) / static_cast<double>(m - 1);
  std::vector<Matrix> blocks(d * d);
  for (int x1 = 0; x1 < d; ++x1) {
    for (int x2 = 0; x2 < d; ++x2) {
      // <X, |x1><x2|> = X_{x2 x1}
      const Complex c = x.matrix()(x2, x1);
      blocks[x1 * d + x2] = c * psi + (Complex(x1 == x2 ? 1.0 : 0.0, 0.0) - c) * rest;
    }
  }
  return QuantumChannel::from_blocks(d, m, blocks);
}

QuantumChannel construct_dilute(int m, const DensityMatrix& omega) {
  if (m < 1) throw ValidationError("dilution channel needs m >= 1");
  const int d = omega.dim();
  if (m == 1) {
    if (!is_incoherent(omega)) {
      throw ValidationError("Psi_1 is incoherent and reaches only incoherent states",
                            r_delta(omega));
    }
    return QuantumChannel::from_blocks(1, d, {omega.matrix()});
  }
  const double r = r_delta(omega);
  if (r > m - 1 + tolerances().channel) {
    throw ValidationError("R_Delta(omega) = " + std::to_string(r) + " exceeds m - 1 = " +
                              std::to_string(m - 1) + ": omega is unreachable from Psi_m",
                          r - (m - 1));
  }
  const Matrix z = clip_to_state((m * dephase(omega).matrix() - omega.matrix()) / static_cast<double>(m - 1));
  std::vector<Matrix> blocks(m * m);
  const double overlap = 1.0 / m;  // <Psi_m, |x1><x2|>
  for (int x1 = 0; x1 < m; ++x1) {
    for (int x2 = 0; x2 < m; ++x2) {
      blocks[x1 * m + x2] = overlap * omega.matrix() + ((x1 == x2 ? 1.0 : 0.0) - overlap) * z;
    }
  }
  return QuantumChannel::from_blocks(m, d, blocks);
}

QuantumChannel construct_prop5(const DensityMatrix& rho, const DensityMatrix& omega) {
  const int din = rho.dim();
  const int dout = omega.dim();
  const HermitianMatrix support = support_projector(rho.hermitian());
  const double overlap = hs_inner(support, dephase(rho).hermitian());
  const double lambda = 1.0 / overlap;
  const double r = r_delta(omega);
  if (r + 1.0 > lambda + tolerances().trace) {
    throw ValidationError("sufficient condition R_Delta(omega) + 1 <= 1/Tr(Pi_rho Delta(rho)) fails: " +
                              std::to_string(r + 1.0) + " > " + std::to_string(lambda),
                          r + 1.0 - lambda);
  }
  Matrix sigma;
  if (lambda - 1.0 <= tolerances().trace) {
    if (!is_incoherent(omega)) {
      throw ValidationError("Tr(Pi_rho Delta(rho)) = 1 admits only incoherent targets", r);
    }
    sigma = omega.matrix();  // constant channel
  } else {
    sigma = clip_to_state((lambda * dephase(omega).matrix() - omega.matrix()) / (lambda - 1.0));
  }
  std::vector<Matrix> blocks(din * din);
  for (int x1 = 0; x1 < din; ++x1) {
    for (int x2 = 0; x2 < din; ++x2) {
      const Complex c = support.matrix()(x2, x1);
      blocks[x1 * din + x2] = c * omega.matrix() + (Complex(x1 == x2 ? 1.0 : 0.0, 0.0) - c) * sigma;
    }
  }
  return QuantumChannel::from_blocks(din, dout, blocks);
}

bool qubit_decide(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != 2 || sigma.dim() != 2) throw DimensionError("qubit decision needs two qubit states");
  const double slack = tolerances().majorization_slack;
  return r_delta(rho) >= r_delta(sigma) - slack && l1_norm(rho) >= l1_norm(sigma) - slack;
}

}  // namespace cohere
