#include "qdet/linalg.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qdet {

CMat identity(int n) { return CMat::Identity(n, n); }

CMat pauli_x() {
  CMat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

CMat pauli_y() {
  CMat m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

CMat pauli_z() {
  CMat m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

double hermiticity_defect(const CMat& m) {
  if (m.rows() != m.cols()) return HUGE_VAL;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const CMat& m, double tol) {
  return m.rows() == m.cols() && hermiticity_defect(m) <= tol;
}

double real_checked(Complex z, double hard_tol, const char* context) {
  const double im = std::abs(z.imag());
  if (im > hard_tol) {
    throw std::runtime_error(std::string("imaginary residue ") +
                             std::to_string(im) + " exceeds " +
                             std::to_string(hard_tol) + " in " + context);
  }
  if (im > 1e-12) {
    std::fprintf(stderr, "qdet: warning: truncating imaginary residue %.3e in %s\n",
                 im, context);
  }
  return z.real();
}

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

namespace {

void require_bipartite(const CMat& m, int dim_a, int dim_b) {
  if (dim_a < 1 || dim_b < 1 || m.rows() != m.cols() ||
      m.rows() != static_cast<Eigen::Index>(dim_a) * dim_b) {
    throw std::invalid_argument("matrix dimension does not equal dim_a*dim_b");
  }
}

}  // namespace

CMat partial_transpose(const CMat& m, int dim_a, int dim_b, Subsystem which) {
  require_bipartite(m, dim_a, dim_b);
  CMat out(m.rows(), m.cols());
  for (int i = 0; i < dim_a; ++i)
    for (int j = 0; j < dim_b; ++j)
      for (int k = 0; k < dim_a; ++k)
        for (int l = 0; l < dim_b; ++l) {
          if (which == Subsystem::B)
            out(i * dim_b + l, k * dim_b + j) = m(i * dim_b + j, k * dim_b + l);
          else
            out(k * dim_b + j, i * dim_b + l) = m(i * dim_b + j, k * dim_b + l);
        }
  return out;
}

CMat partial_trace(const CMat& m, int dim_a, int dim_b, Subsystem keep) {
  require_bipartite(m, dim_a, dim_b);
  if (keep == Subsystem::A) {
    CMat out = CMat::Zero(dim_a, dim_a);
    for (int i = 0; i < dim_a; ++i)
      for (int k = 0; k < dim_a; ++k)
        for (int j = 0; j < dim_b; ++j)
          out(i, k) += m(i * dim_b + j, k * dim_b + j);
    return out;
  }
  CMat out = CMat::Zero(dim_b, dim_b);
  for (int j = 0; j < dim_b; ++j)
    for (int l = 0; l < dim_b; ++l)
      for (int i = 0; i < dim_a; ++i)
        out(j, l) += m(i * dim_b + j, i * dim_b + l);
  return out;
}

Spectrum herm_eig(const CMat& m) {
  if (!is_hermitian(m)) {
    throw std::invalid_argument("herm_eig: input is not Hermitian within 1e-12");
  }
  // Symmetrize before solving so the 1e-12 input slack cannot leak into
  // complex eigenvalues.
  CMat h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat> solver(h);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("herm_eig: eigensolver failed to converge");
  }
  return Spectrum{solver.eigenvalues(), solver.eigenvectors()};
}

double det_hermitian(const CMat& m) {
  const Spectrum s = herm_eig(m);
  double det = 1.0;
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i)
    det *= s.eigenvalues[i];
  return det + 0.0;  // collapse -0 to 0
}

Complex det_lu(const CMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det_lu: not square");
  const Eigen::Index n = m.rows();
  CMat a = m;
  Complex det = 1.0;
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = col;
    double best = std::abs(a(col, col));
    for (Eigen::Index r = col + 1; r < n; ++r) {
      if (std::abs(a(r, col)) > best) {
        best = std::abs(a(r, col));
        pivot = r;
      }
    }
    if (best == 0.0) return 0.0;
    if (pivot != col) {
      a.row(pivot).swap(a.row(col));
      det = -det;
    }
    det *= a(col, col);
    for (Eigen::Index r = col + 1; r < n; ++r) {
      const Complex f = a(r, col) / a(col, col);
      a.row(r).tail(n - col) -= f * a.row(col).tail(n - col);
    }
  }
  return det;
}

CMat slot_permutation(const std::vector<int>& slot_dims,
                      const std::vector<int>& dest) {
  const int n = static_cast<int>(slot_dims.size());
  if (dest.size() != slot_dims.size()) {
    throw std::invalid_argument("slot_permutation: size mismatch");
  }
  std::vector<bool> seen(n, false);
  for (int j = 0; j < n; ++j) {
    if (dest[j] < 0 || dest[j] >= n || slot_dims[j] != slot_dims[dest[j]] ||
        seen[dest[j]]) {
      throw std::invalid_argument("slot_permutation: dest is not a dimension-preserving permutation");
    }
    seen[dest[j]] = true;
  }
  long total = 1;
  for (int d : slot_dims) total *= d;

  CMat out = CMat::Zero(total, total);
  std::vector<int> digits(n), moved(n);
  for (long idx = 0; idx < total; ++idx) {
    long rem = idx;
    for (int j = n - 1; j >= 0; --j) {
      digits[j] = static_cast<int>(rem % slot_dims[j]);
      rem /= slot_dims[j];
    }
    for (int j = 0; j < n; ++j) moved[dest[j]] = digits[j];
    long tgt = 0;
    for (int j = 0; j < n; ++j) tgt = tgt * slot_dims[j] + moved[j];
    out(tgt, idx) = 1.0;
  }
  return out;
}

CMat cyclic_shift(int copies, int local_dim) {
  if (copies < 1 || local_dim < 2) {
    throw std::invalid_argument("cyclic_shift: need copies >= 1 and local_dim >= 2");
  }
  std::vector<int> dims(copies, local_dim), dest(copies);
  for (int j = 0; j < copies; ++j) dest[j] = (j + 1) % copies;
  return slot_permutation(dims, dest);
}

CMat embed_on_copies(const CMat& op, Side side, const std::vector<int>& copies,
                     int total_copies) {
  const int n_qubits = 2 * total_copies;
  // Qubit slots covered by op, in op's tensor-factor order.
  std::vector<int> qubits;
  std::vector<bool> used(n_qubits, false);
  for (int c : copies) {
    if (c < 1 || c > total_copies) {
      throw std::invalid_argument("embed_on_copies: copy index out of range");
    }
    const int a_slot = 2 * (c - 1), b_slot = a_slot + 1;
    switch (side) {
      case Side::A: qubits.push_back(a_slot); break;
      case Side::B: qubits.push_back(b_slot); break;
      case Side::Both:
        qubits.push_back(a_slot);
        qubits.push_back(b_slot);
        break;
    }
  }
  for (int q : qubits) {
    if (used[q]) throw std::invalid_argument("embed_on_copies: duplicate copy index");
    used[q] = true;
  }
  const int m = static_cast<int>(qubits.size());
  const long sub_dim = 1L << m;
  if (op.rows() != sub_dim || op.cols() != sub_dim) {
    throw std::invalid_argument("embed_on_copies: operator dimension mismatch");
  }

  const long dim = 1L << n_qubits;
  CMat out = CMat::Zero(dim, dim);
  // Qubit q occupies bit (n_qubits-1-q); op factor f occupies bit (m-1-f).
  std::vector<long> bit_of(m);
  for (int f = 0; f < m; ++f) bit_of[f] = 1L << (n_qubits - 1 - qubits[f]);

  for (long base = 0; base < dim; ++base) {
    bool is_base = true;
    for (int f = 0; f < m && is_base; ++f) is_base = (base & bit_of[f]) == 0;
    if (!is_base) continue;
    for (long s_out = 0; s_out < sub_dim; ++s_out) {
      long row = base;
      for (int f = 0; f < m; ++f)
        if (s_out & (1L << (m - 1 - f))) row |= bit_of[f];
      for (long s_in = 0; s_in < sub_dim; ++s_in) {
        const Complex v = op(s_out, s_in);
        if (v == Complex(0, 0)) continue;
        long col = base;
        for (int f = 0; f < m; ++f)
          if (s_in & (1L << (m - 1 - f))) col |= bit_of[f];
        out(row, col) = v;
      }
    }
  }
  return out;
}

}  // namespace qdet
