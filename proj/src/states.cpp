#include "qdet/states.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qdet {

namespace {

constexpr double kProbFloor = 1e-14;

long dims_product(const std::vector<int>& dims) {
  long p = 1;
  for (int d : dims) p *= d;
  return p;
}

std::string join(const std::vector<std::string>& parts) {
  std::ostringstream os;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) os << "; ";
    os << parts[i];
  }
  return os.str();
}

CVec bell_vector(int which) {
  CVec v = CVec::Zero(4);
  const double s = 1.0 / std::sqrt(2.0);
  switch (which) {
    case 0: v[0] = s; v[3] = s; break;   // (|00> + |11>)/sqrt2
    case 1: v[0] = s; v[3] = -s; break;  // (|00> - |11>)/sqrt2
    case 2: v[1] = s; v[2] = s; break;   // (|01> + |10>)/sqrt2
    default: v[1] = s; v[2] = -s; break; // (|01> - |10>)/sqrt2
  }
  return v;
}

CMat ginibre(int rows, int cols, Rng& rng) {
  CMat g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      g(i, j) = Complex(rng.gaussian(), rng.gaussian());
  return g;
}

// PSD square root via eigendecomposition, negative noise clamped to zero.
CMat sqrt_psd(const CMat& m) {
  const Spectrum s = herm_eig(m);
  CMat out = CMat::Zero(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
    const double lam = s.eigenvalues[i];
    if (lam <= 0.0) continue;
    out += std::sqrt(lam) * s.eigenvectors.col(i) * s.eigenvectors.col(i).adjoint();
  }
  return out;
}

}  // namespace

std::vector<std::string> check_density_invariants(const CMat& m,
                                                  const std::vector<int>& dims) {
  std::vector<std::string> violations;
  if (dims.size() != 2 || dims[0] < 1 || dims[1] < 1) {
    violations.push_back("dims must list two positive subsystem dimensions");
    return violations;
  }
  if (m.rows() != m.cols()) {
    violations.push_back("matrix is not square");
    return violations;
  }
  if (m.rows() != dims_product(dims)) {
    violations.push_back("matrix dimension does not equal the product of dims");
    return violations;
  }
  const double herm = hermiticity_defect(m);
  if (herm > kHermTol) {
    violations.push_back("not Hermitian: max |M[i][j] - conj(M[j][i])| = " +
                         std::to_string(herm));
  }
  const Complex tr = m.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > 1e-12) {
    violations.push_back("trace differs from 1 by " +
                         std::to_string(std::abs(tr - Complex(1.0, 0.0))));
  }
  if (violations.empty()) {
    const Spectrum s = herm_eig(m);
    const double min_eig = s.eigenvalues.minCoeff();
    if (min_eig < -1e-10) {
      violations.push_back("not positive semidefinite: minimum eigenvalue = " +
                           std::to_string(min_eig));
    }
  }
  return violations;
}

DensityMatrix::DensityMatrix(CMat m, std::vector<int> d)
    : matrix(std::move(m)), dims(std::move(d)) {
  const auto violations = check_density_invariants(matrix, dims);
  if (!violations.empty()) {
    throw std::invalid_argument("invalid density matrix: " + join(violations));
  }
}

PureState::PureState(CVec a, std::vector<int> d)
    : amplitudes(std::move(a)), dims(std::move(d)) {
  if (dims.size() != 2 || amplitudes.size() != dims_product(dims)) {
    throw std::invalid_argument("pure state dimension mismatch");
  }
  if (std::abs(amplitudes.norm() - 1.0) > 1e-12) {
    throw std::invalid_argument("pure state is not normalized");
  }
}

CMat PureState::coefficient_matrix() const {
  CMat a(dims[0], dims[1]);
  for (int i = 0; i < dims[0]; ++i)
    for (int j = 0; j < dims[1]; ++j)
      a(i, j) = amplitudes[i * dims[1] + j];
  return a;
}

DensityMatrix PureState::to_density() const {
  return DensityMatrix(amplitudes * amplitudes.adjoint(), dims);
}

LocalInstrument::LocalInstrument(std::vector<CMat> kraus)
    : kraus_b(std::move(kraus)) {
  if (kraus_b.empty()) throw std::invalid_argument("instrument needs at least one Kraus operator");
  const Eigen::Index d = kraus_b.front().rows();
  CMat sum = CMat::Zero(d, d);
  for (const CMat& m : kraus_b) {
    if (m.rows() != m.cols() || m.rows() != d) {
      throw std::invalid_argument("instrument Kraus operators must be square with equal dimension");
    }
    sum += m.adjoint() * m;
  }
  const Spectrum s = herm_eig(sum);
  if (s.eigenvalues.maxCoeff() > 1.0 + 1e-10) {
    throw std::invalid_argument("instrument is not trace-nonincreasing: max eig(sum M^dag M) = " +
                                std::to_string(s.eigenvalues.maxCoeff()));
  }
}

DensityMatrix bell_state() {
  const CVec v = bell_vector(0);
  return DensityMatrix(v * v.adjoint(), {2, 2});
}

DensityMatrix bell_diagonal(double p1, double p2, double p3, double p4) {
  const double probs[4] = {p1, p2, p3, p4};
  double sum = 0.0;
  for (double p : probs) {
    if (p < -1e-12) throw std::invalid_argument("bell_diagonal: negative probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("bell_diagonal: probabilities sum to " + std::to_string(sum));
  }
  CMat m = CMat::Zero(4, 4);
  for (int i = 0; i < 4; ++i) {
    const CVec v = bell_vector(i);
    m += std::max(probs[i], 0.0) * (v * v.adjoint()).eval();
  }
  return DensityMatrix(m, {2, 2});
}

DensityMatrix werner(double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("werner: p outside [0,1]");
  const double q = (1.0 - p) / 4.0;
  return bell_diagonal(q, q, q, p + q);
}

DensityMatrix random_density(const std::vector<int>& dims, int rank, Rng& rng) {
  const int d = static_cast<int>(dims_product(dims));
  if (rank == 0) rank = d;
  if (rank < 1 || rank > d) throw std::invalid_argument("random_density: invalid rank");
  const CMat g = ginibre(d, rank, rng);
  CMat m = g * g.adjoint();
  m /= m.trace();
  return DensityMatrix(m, dims);
}

CMat random_unitary(int d, Rng& rng) {
  const CMat g = ginibre(d, d, rng);
  Eigen::HouseholderQR<CMat> qr(g);
  CMat q = qr.householderQ();
  const CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const Complex rjj = r(j, j);
    q.col(j) *= rjj / std::abs(rjj);
  }
  return q;
}

PureState random_pure(const std::vector<int>& dims, Rng& rng) {
  const int d = static_cast<int>(dims_product(dims));
  const CMat u = random_unitary(d, rng);
  return PureState(u.col(0), dims);
}

DensityMatrix random_separable(int dim_a, int dim_b, int terms, Rng& rng) {
  if (terms < 1) throw std::invalid_argument("random_separable: terms must be >= 1");
  std::vector<double> w(terms);
  double wsum = 0.0;
  for (int t = 0; t < terms; ++t) {
    w[t] = -std::log(1.0 - rng.uniform());  // Dirichlet(1,...,1)
    wsum += w[t];
  }
  CMat m = CMat::Zero(dim_a * dim_b, dim_a * dim_b);
  for (int t = 0; t < terms; ++t) {
    const DensityMatrix a = random_density({dim_a, 1}, 0, rng);
    const DensityMatrix b = random_density({dim_b, 1}, 0, rng);
    m += (w[t] / wsum) * kron(a.matrix, b.matrix);
  }
  return DensityMatrix(m, {dim_a, dim_b});
}

std::pair<DensityMatrix, double> apply_filter(const DensityMatrix& rho,
                                              const CMat& f_a, const CMat& f_b) {
  if (f_a.rows() != f_a.cols() || f_a.rows() != rho.dim_a() ||
      f_b.rows() != f_b.cols() || f_b.rows() != rho.dim_b()) {
    throw std::invalid_argument("apply_filter: filter dimensions must match the local dims");
  }
  const CMat f = kron(f_a, f_b);
  const CMat m = f * rho.matrix * f.adjoint();
  const double p = real_checked(m.trace(), 1e-10, "apply_filter probability");
  if (p <= kProbFloor) {
    throw std::runtime_error("apply_filter: zero-probability outcome (p = " +
                             std::to_string(p) + ")");
  }
  return {DensityMatrix(m / p, rho.dims), p};
}

std::vector<std::pair<double, DensityMatrix>> apply_instrument(
    const DensityMatrix& rho, const LocalInstrument& inst) {
  if (inst.kraus_b.front().rows() != rho.dim_b()) {
    throw std::invalid_argument("apply_instrument: Kraus dimension must match dim_b");
  }
  const CMat eye_a = identity(rho.dim_a());
  std::vector<std::pair<double, DensityMatrix>> outcomes;
  double total = 0.0;
  for (const CMat& mk : inst.kraus_b) {
    const CMat k = kron(eye_a, mk);
    const CMat m = k * rho.matrix * k.adjoint();
    const double p = real_checked(m.trace(), 1e-10, "apply_instrument probability");
    total += p;
    if (p <= kProbFloor) continue;
    outcomes.emplace_back(p, DensityMatrix(m / p, rho.dims));
  }
  if (total > 1.0 + 1e-10) {
    throw std::runtime_error("apply_instrument: outcome probabilities sum to " +
                             std::to_string(total));
  }
  return outcomes;
}

LocalInstrument random_two_outcome_instrument(int d, Rng& rng) {
  CMat m = ginibre(d, d, rng);
  // Scale to a strict contraction with operator norm drawn from (0, 1).
  Eigen::JacobiSVD<CMat> svd(m);
  const double target = 0.1 + 0.8 * rng.uniform();
  m *= target / svd.singularValues()[0];
  const CMat rest = identity(d) - (m.adjoint() * m).eval();
  const CMat second = random_unitary(d, rng) * sqrt_psd(rest);
  return LocalInstrument({m, second});
}

DensityMatrix embed(const DensityMatrix& rho, const std::vector<int>& new_dims) {
  if (new_dims.size() != rho.dims.size()) {
    throw std::invalid_argument("embed: dims count mismatch");
  }
  for (size_t i = 0; i < new_dims.size(); ++i) {
    if (new_dims[i] < rho.dims[i]) {
      throw std::invalid_argument("embed: cannot shrink a subsystem dimension");
    }
  }
  const int da = rho.dim_a(), db = rho.dim_b();
  const int na = new_dims[0], nb = new_dims[1];
  CMat m = CMat::Zero(static_cast<long>(na) * nb, static_cast<long>(na) * nb);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j)
      for (int k = 0; k < da; ++k)
        for (int l = 0; l < db; ++l)
          m(i * nb + j, k * nb + l) = rho.matrix(i * db + j, k * db + l);
  return DensityMatrix(m, new_dims);
}

DensityMatrix werner_twirl(const DensityMatrix& rho) {
  if (!rho.is_two_qubit()) {
    throw std::invalid_argument("werner_twirl: two-qubit states only");
  }
  const CVec singlet = bell_vector(3);
  const CMat proj = singlet * singlet.adjoint();
  const double overlap =
      real_checked((proj * rho.matrix).trace(), 1e-10, "werner_twirl overlap");
  const double w = (4.0 * overlap - 1.0) / 3.0;
  const CMat m = w * proj + (1.0 - w) * 0.25 * identity(4);
  return DensityMatrix(m, {2, 2});
}

}  // namespace qdet
