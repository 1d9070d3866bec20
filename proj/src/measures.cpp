#include "qdet/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qdet {

double negativity(const DensityMatrix& rho) {
  const CMat pt = partial_transpose(rho.matrix, rho.dim_a(), rho.dim_b());
  const Spectrum s = herm_eig(pt);
  double neg = 0.0;
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i)
    neg += std::max(0.0, -s.eigenvalues[i]);
  return 2.0 * neg;
}

double concurrence(const DensityMatrix& rho) {
  if (!rho.is_two_qubit()) {
    throw std::invalid_argument("concurrence: two-qubit states only");
  }
  // mu_i are the singular values of tau = W^T (sy x sy) W with rho = W W^dag;
  // this stays accurate on rank-deficient states where the sqrt of an
  // eigenvalue of rho rho~ would amplify noise.
  const Spectrum s = herm_eig(rho.matrix);
  const double floor = 1e-13 * std::max(s.eigenvalues.maxCoeff(), 1.0);
  CMat w = CMat::Zero(4, 4);
  for (int i = 0; i < 4; ++i) {
    if (s.eigenvalues[i] > floor) {
      w.col(i) = std::sqrt(s.eigenvalues[i]) * s.eigenvectors.col(i);
    }
  }
  const CMat tau = w.transpose() * kron(pauli_y(), pauli_y()) * w;
  Eigen::JacobiSVD<CMat> svd(tau);
  const auto& mu = svd.singularValues();
  return std::max(0.0, mu[0] - mu[1] - mu[2] - mu[3]);
}

double pi_d(const DensityMatrix& rho, int d) {
  if (rho.dims != std::vector<int>{d, d}) {
    throw std::invalid_argument("pi_d: state must live on d (x) d with the given d");
  }
  const CMat pt = partial_transpose(rho.matrix, d, d);
  const double det = det_hermitian(pt);
  // Determinants in [-1e-12, 0) are numerical noise, not entanglement.
  if (det >= -1e-12) return 0.0;
  return d * std::pow(std::abs(det), 1.0 / (2.0 * d));
}

double pi2(const DensityMatrix& rho) { return pi_d(rho, 2); }

double g_concurrence_pure(const PureState& psi) {
  if (psi.dims[0] != psi.dims[1]) {
    throw std::invalid_argument("g_concurrence_pure: state must live on d (x) d");
  }
  const int d = psi.dims[0];
  const double abs_det = std::abs(psi.coefficient_matrix().determinant());
  return d * std::pow(abs_det, 2.0 / d);
}

MeasureReport bound_report(const DensityMatrix& rho) {
  if (!rho.is_two_qubit()) {
    throw std::invalid_argument("bound_report: two-qubit states only");
  }
  MeasureReport r{};
  r.negativity = negativity(rho);
  r.concurrence = concurrence(rho);
  r.pi2 = pi2(rho);
  const double n = r.negativity;
  r.lower_bound_eq6 = std::pow(n * std::pow((n + 2.0) / 3.0, 3.0), 0.25);
  r.upper_bound_fig1 = 0.5 * (n + 1.0);
  return r;
}

}  // namespace qdet
