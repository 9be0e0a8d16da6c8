#include "cohere/feasibility.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include <Eigen/SVD>

#include "cohere/monotones.hpp"
#include "cohere/tolerance.hpp"

namespace cohere {

std::string to_string(FeasibilityStatus s) {
  switch (s) {
    case FeasibilityStatus::kFeasible:
      return "feasible";
    case FeasibilityStatus::kInfeasibleCertified:
      return "infeasible-certified";
    case FeasibilityStatus::kUndetermined:
      return "undetermined";
  }
  return "undetermined";
}

namespace {

constexpr int kRefineAfter = 300;
constexpr int kRefineSteps = 40;
constexpr int kMaxFactorRank = 4;

// Orthonormal basis of the subspace the Choi operator of any feasible channel
// must live in. A PSD J with Tr[(rho^T ⊗ |w><w|) J] = <w|sigma|w> = 0 vanishes
// on supp(rho^T) ⊗ ker(sigma); likewise for the dephased pair.
Matrix reduced_face(const DensityMatrix& rho, const DensityMatrix& sigma) {
  const int din = rho.dim();
  const int dout = sigma.dim();
  const int n = din * dout;
  std::vector<Vector> excluded;

  const EigenDecomposition er = eig(rho.hermitian());
  const EigenDecomposition es = eig(sigma.hermitian());
  const double tr = truncation_threshold(er.eigenvalues);
  const double ts = truncation_threshold(es.eigenvalues);
  for (int i = 0; i < din; ++i) {
    if (er.eigenvalues(i) <= tr) continue;
    const Vector u = er.eigenvectors.col(i).conjugate();
    for (int j = 0; j < dout; ++j) {
      if (es.eigenvalues(j) > ts) continue;
      excluded.push_back(kron(Matrix(u), Matrix(es.eigenvectors.col(j))));
    }
  }
  const RealVector pin = rho.diagonal_entries();
  const RealVector pout = sigma.diagonal_entries();
  const double tin = truncation_threshold(pin);
  const double tout = truncation_threshold(pout);
  for (int x = 0; x < din; ++x) {
    if (pin(x) <= tin) continue;
    for (int y = 0; y < dout; ++y) {
      if (pout(y) > tout) continue;
      Vector v = Vector::Zero(n);
      v(x * dout + y) = 1.0;
      excluded.push_back(std::move(v));
    }
  }
  if (excluded.empty()) return Matrix::Identity(n, n);

  Matrix s(n, static_cast<Eigen::Index>(excluded.size()));
  for (std::size_t i = 0; i < excluded.size(); ++i) s.col(static_cast<Eigen::Index>(i)) = excluded[i];
  Eigen::JacobiSVD<Matrix> svd(s, Eigen::ComputeFullU);
  const RealVector sv = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > 1e-9 * std::max(1.0, sv(0))) ++rank;
  }
  return svd.matrixU().rightCols(n - rank);
}

// Affine constraints A vec(J_hat) = b for J = V J_hat V^dag, with the
// least-squares projector precomputed.
class AffineSet {
 public:
  AffineSet(const DensityMatrix& rho, const DensityMatrix& sigma, const Matrix& v)
      : v_(v), k_(static_cast<int>(v.cols())) {
    const int din = rho.dim();
    const int dout = sigma.dim();
    const int n = din * dout;
    const int rows = din * din + 2 * dout * dout;
    a_ = Matrix::Zero(rows, static_cast<Eigen::Index>(k_) * k_);
    b_ = Vector::Zero(rows);
    const Matrix vt = v_.transpose();
    const Matrix vbar = v_.conjugate();
    int row = 0;
    // sum_{r,c} coeff(r,c) J(r,c) in terms of J_hat has coefficients V^T coeff conj(V).
    auto add = [&](const Matrix& coeff, Complex rhs) {
      const Matrix r = vt * coeff * vbar;
      a_.row(row) = Eigen::Map<const Vector>(r.data(), r.size()).transpose();
      b_(row) = rhs;
      ++row;
    };
    for (int x1 = 0; x1 < din; ++x1) {
      for (int x2 = 0; x2 < din; ++x2) {
        Matrix c = Matrix::Zero(n, n);
        for (int y = 0; y < dout; ++y) c(x1 * dout + y, x2 * dout + y) = 1.0;
        add(c, Complex(x1 == x2 ? 1.0 : 0.0, 0.0));
      }
    }
    for (int y1 = 0; y1 < dout; ++y1) {
      for (int y2 = 0; y2 < dout; ++y2) {
        Matrix c = Matrix::Zero(n, n);
        for (int x1 = 0; x1 < din; ++x1) {
          for (int x2 = 0; x2 < din; ++x2) c(x1 * dout + y1, x2 * dout + y2) = rho.matrix()(x1, x2);
        }
        add(c, sigma.matrix()(y1, y2));
      }
    }
    for (int y1 = 0; y1 < dout; ++y1) {
      for (int y2 = 0; y2 < dout; ++y2) {
        Matrix c = Matrix::Zero(n, n);
        for (int x = 0; x < din; ++x) c(x * dout + y1, x * dout + y2) = rho.matrix()(x, x);
        add(c, y1 == y2 ? sigma.matrix()(y1, y1) : Complex(0.0, 0.0));
      }
    }
    const Matrix gram = a_ * a_.adjoint();
    Eigen::SelfAdjointEigenSolver<Matrix> es(gram);
    const RealVector lam = es.eigenvalues();
    const double cut = 1e-12 * std::max(1.0, lam.cwiseAbs().maxCoeff());
    RealVector inv = RealVector::Zero(lam.size());
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
      if (lam(i) > cut) inv(i) = 1.0 / lam(i);
    }
    gram_pinv_ = es.eigenvectors() * inv.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
  }

  int size() const { return k_; }

  Matrix project(const Matrix& j) const {
    const Vector x = Eigen::Map<const Vector>(j.data(), j.size());
    const Vector y = x - a_.adjoint() * (gram_pinv_ * (a_ * x - b_));
    Matrix out = Eigen::Map<const Matrix>(y.data(), k_, k_);
    return 0.5 * (out + out.adjoint());
  }

  double residual(const Matrix& j) const {
    const Vector x = Eigen::Map<const Vector>(j.data(), j.size());
    return (a_ * x - b_).norm();
  }

  Matrix lift(const Matrix& j_hat) const { return v_ * j_hat * v_.adjoint(); }

  // Row q of A reshaped to a k x k matrix M_q, so that (A vec J)_q = Tr(M_q^T J).
  Matrix row_matrix(int q) const {
    const Vector r = a_.row(q).transpose();
    return Eigen::Map<const Matrix>(r.data(), k_, k_);
  }
  int rows() const { return static_cast<int>(a_.rows()); }
  Vector defect(const Matrix& j) const { return a_ * Eigen::Map<const Vector>(j.data(), j.size()) - b_; }

 private:
  Matrix v_;
  int k_;
  Matrix a_;
  Vector b_;
  Matrix gram_pinv_;
};

RealVector split(const Vector& c) {
  RealVector out(2 * c.size());
  out << c.real(), c.imag();
  return out;
}

// Damped Gauss-Newton on J_hat = W W^dag with W of k x r, which stays PSD by
// construction. Converges where the feasible set lies on a thin face of the
// cone and the plain projections crawl.
Matrix gauss_newton(const AffineSet& affine, const std::vector<Matrix>& mt, Matrix w, int max_steps) {
  const int m = affine.rows();
  const Eigen::Index n = w.size();
  RealVector r = split(affine.defect(w * w.adjoint()));
  double mu = r.squaredNorm();
  RealMatrix jac(2 * m, 2 * n);
  for (int step = 0; step < max_steps && r.norm() > 1e-14; ++step) {
    for (int q = 0; q < m; ++q) {
      const Matrix p = w.adjoint() * mt[q];
      const Matrix s = mt[q] * w;
      const Matrix dre = p.transpose() + s;
      const Matrix dim = Complex(0.0, 1.0) * (p.transpose() - s);
      const Eigen::Map<const Vector> re(dre.data(), n);
      const Eigen::Map<const Vector> im(dim.data(), n);
      jac.row(q) << re.real().transpose(), im.real().transpose();
      jac.row(m + q) << re.imag().transpose(), im.imag().transpose();
    }
    const RealMatrix gram = jac * jac.transpose();
    bool accepted = false;
    for (int tries = 0; tries < 30 && !accepted; ++tries) {
      const RealMatrix damped = gram + mu * RealMatrix::Identity(gram.rows(), gram.cols());
      const RealVector delta = -jac.transpose() * damped.ldlt().solve(r);
      Matrix w_next = w;
      for (Eigen::Index i = 0; i < n; ++i) w_next(i) += Complex(delta(i), delta(n + i));
      const RealVector r_next = split(affine.defect(w_next * w_next.adjoint()));
      if (r_next.norm() < r.norm()) {
        w = std::move(w_next);
        r = r_next;
        mu = std::max(r.squaredNorm(), 1e-30);
        accepted = true;
      } else {
        mu = std::max(10.0 * mu, 1e-12);
      }
    }
    if (!accepted) break;
  }
  return w * w.adjoint();
}

// Tries factors of increasing rank seeded by the leading eigenvectors of
// `start`; isolated low-rank solutions make the full-rank factor singular.
Matrix refine_low_rank(const AffineSet& affine, const Matrix& start, int max_steps, double tol) {
  const int k = affine.size();
  std::vector<Matrix> mt;
  for (int q = 0; q < affine.rows(); ++q) mt.push_back(affine.row_matrix(q).transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(start);
  const RealVector lam = es.eigenvalues().cwiseMax(0.0);
  Matrix best = start;
  double best_res = affine.residual(start);
  for (int r = 1; r <= k; r = (r < kMaxFactorRank || r == k) ? r + 1 : k) {
    const Matrix w = es.eigenvectors().rightCols(r) * lam.tail(r).cwiseSqrt().cast<Complex>().asDiagonal();
    const Matrix j = gauss_newton(affine, mt, w, max_steps);
    const double res = affine.residual(j);
    if (res < best_res) {
      best = j;
      best_res = res;
    }
    if (best_res <= tol) break;
  }
  return best;
}

Matrix project_psd(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  const RealVector lam = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * lam.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

// Turns an approximately trace-preserving PSD Choi operator into an exact
// channel: E'(X) = E(B X B) with B = (E^dag(1))^{-1/2}.
std::optional<QuantumChannel> normalize_witness(const Matrix& j, int din, int dout) {
  Matrix t = Matrix::Zero(din, din);
  for (int x1 = 0; x1 < din; ++x1) {
    for (int x2 = 0; x2 < din; ++x2) t(x1, x2) = j.block(x1 * dout, x2 * dout, dout, dout).trace();
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix(t.transpose()));
  if (es.eigenvalues().minCoeff() <= 0.5) return std::nullopt;
  const Matrix b = es.eigenvectors() * es.eigenvalues().cwiseInverse().cwiseSqrt().cast<Complex>().asDiagonal() *
                   es.eigenvectors().adjoint();
  const Matrix w = kron(Matrix(b.transpose()), Matrix(Matrix::Identity(dout, dout)));
  Matrix jn = w * j * w.adjoint();
  jn = 0.5 * (jn + jn.adjoint());
  try {
    return QuantumChannel::from_choi(din, dout, jn);
  } catch (const ValidationError&) {
    return std::nullopt;
  }
}

bool witness_verifies(const QuantumChannel& c, const DensityMatrix& rho, const DensityMatrix& sigma) {
  const Matrix out = c.apply_matrix(rho.matrix());
  return (out - sigma.matrix()).norm() <= 1e-6 && is_rho_dio(c, rho).holds;
}

}  // namespace

std::optional<MonotoneCertificate> find_monotone_certificate(const DensityMatrix& rho,
                                                             const DensityMatrix& sigma,
                                                             double margin) {
  auto check = [&](const std::string& name, double in, double out) -> std::optional<MonotoneCertificate> {
    if (out > in + margin) return MonotoneCertificate{name, in, out};
    return std::nullopt;
  };
  if (auto c = check("r_delta", r_delta(rho), r_delta(sigma))) return c;
  for (double alpha : default_renyi_orders()) {
    std::ostringstream name;
    name << "renyi_" << alpha;
    if (auto c = check(name.str(), renyi_relative(rho, alpha), renyi_relative(sigma, alpha))) return c;
  }
  if (rho.dim() == 2 && sigma.dim() == 2) {
    if (auto c = check("l1", l1_norm(rho), l1_norm(sigma))) return c;
  }
  return std::nullopt;
}

FeasibilityVerdict rho_dio_feasible(const DensityMatrix& rho, const DensityMatrix& sigma,
                                    const FeasibilityOptions& options) {
  const int din = rho.dim();
  const int dout = sigma.dim();
  const AffineSet affine(rho, sigma, reduced_face(rho, sigma));
  const int k = affine.size();

  FeasibilityVerdict verdict;
  verdict.residual = std::numeric_limits<double>::infinity();
  if (k > 0) {
    auto accept = [&](const Matrix& j_hat) {
      auto w = normalize_witness(affine.lift(j_hat), din, dout);
      if (!w || !witness_verifies(*w, rho, sigma)) return false;
      verdict.status = FeasibilityStatus::kFeasible;
      verdict.witness = std::move(w);
      return true;
    };
    Matrix x = affine.project(Matrix::Identity(k, k) / static_cast<double>(dout));
    Matrix y = x;
    int next_attempt = 0;
    const int refine_at = std::min(options.max_iters, kRefineAfter);
    for (int it = 1; it <= options.max_iters; ++it) {
      y = project_psd(x);
      x += options.relaxation * (affine.project(y) - x);
      verdict.residual = affine.residual(y);
      verdict.iterations = it;
      if (it == refine_at && verdict.residual > options.residual_tol) {
        const Matrix refined = refine_low_rank(affine, y, kRefineSteps, options.residual_tol);
        if (affine.residual(refined) <= options.residual_tol && accept(refined)) {
          verdict.residual = affine.residual(refined);
          return verdict;
        }
      }
      if (verdict.residual > options.residual_tol || it < next_attempt) continue;
      if (accept(y)) return verdict;
      next_attempt = it + 10;
    }
    if (options.max_iters > refine_at) {
      const Matrix refined = refine_low_rank(affine, y, kRefineSteps, options.residual_tol);
      if (affine.residual(refined) <= options.residual_tol && accept(refined)) {
        verdict.residual = affine.residual(refined);
        return verdict;
      }
    }
  }
  if (auto c = find_monotone_certificate(rho, sigma, options.certificate_margin)) {
    verdict.status = FeasibilityStatus::kInfeasibleCertified;
    verdict.certificate = std::move(c);
  }
  return verdict;
}

}  // namespace cohere
