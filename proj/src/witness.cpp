#include "qdet/witness.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace qdet {

static_assert(std::endian::native == std::endian::little,
              "w4 dump assumes a little-endian host");

MomentVector hermitian_moments(const CMat& m) {
  const Spectrum s = herm_eig(m);
  MomentVector mv{0, 0, 0, 0};
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
    const double lam = s.eigenvalues[i];
    mv.pi1 += lam;
    mv.pi2 += lam * lam;
    mv.pi3 += lam * lam * lam;
    mv.pi4 += lam * lam * lam * lam;
  }
  return mv;
}

MomentVector pt_moments(const DensityMatrix& rho) {
  if (!rho.is_two_qubit()) {
    throw std::invalid_argument("pt_moments: two-qubit states only");
  }
  const CMat pt = partial_transpose(rho.matrix, 2, 2);
  const MomentVector mv = hermitian_moments(pt);

  // Cross-check the spectral route against direct matrix powers.
  CMat power = pt;
  const double direct[4] = {
      real_checked(power.trace(), 1e-10, "pt_moments"),
      real_checked((power *= pt, power.trace()), 1e-10, "pt_moments"),
      real_checked((power *= pt, power.trace()), 1e-10, "pt_moments"),
      real_checked((power *= pt, power.trace()), 1e-10, "pt_moments")};
  const double spectral[4] = {mv.pi1, mv.pi2, mv.pi3, mv.pi4};
  for (int k = 0; k < 4; ++k) {
    if (std::abs(direct[k] - spectral[k]) > 1e-10) {
      throw std::runtime_error("pt_moments: spectral and matrix-power routes disagree");
    }
  }
  return mv;
}

double newton_girard_det(const MomentVector& m) {
  if (std::abs(m.pi1 - 1.0) > 1e-10) {
    throw std::invalid_argument("newton_girard_det: pi1 must equal 1");
  }
  return (1.0 - 6.0 * m.pi4 + 8.0 * m.pi3 + 3.0 * m.pi2 * m.pi2 - 6.0 * m.pi2) / 24.0;
}

namespace {

// Slot permutation on k interleaved two-qubit copies: A slots cycle forward,
// B slots cycle backward (the entrywise transpose of a permutation matrix is
// its inverse). Copies beyond k stay put.
CMat interleaved_cycle_pair(int k, int total_copies) {
  std::vector<int> dims(2 * total_copies, 2), dest(2 * total_copies);
  for (int j = 0; j < 2 * total_copies; ++j) dest[j] = j;
  for (int c = 0; c < k; ++c) {
    dest[2 * c] = 2 * ((c + 1) % k);
    dest[2 * c + 1] = 2 * ((c - 1 + k) % k) + 1;
  }
  return slot_permutation(dims, dest);
}

}  // namespace

CMat moment_operator_pt(int k) {
  if (k < 2 || k > 4) {
    throw std::invalid_argument("moment_operator_pt: k must be 2, 3 or 4");
  }
  return interleaved_cycle_pair(k, k);
}

CMat moment_observable(int k, int d) {
  if (k < 1) throw std::invalid_argument("moment_observable: k must be >= 1");
  const CMat v = cyclic_shift(k, d);
  return 0.5 * (v + v.adjoint());
}

WitnessOperator build_w4() {
  const CMat eye256 = identity(256);
  const CMat p4 = interleaved_cycle_pair(4, 4);
  const CMat p3 = embed_on_copies(moment_operator_pt(3), Side::Both, {1, 2, 3});
  const CMat copy_swap = cyclic_shift(2, 4);  // full swap of two 2x2 copies
  const CMat s12 = embed_on_copies(copy_swap, Side::Both, {1, 2});
  const CMat s34 = embed_on_copies(copy_swap, Side::Both, {3, 4});

  WitnessOperator w;
  w.matrix = eye256 / 24.0
           - (p4 + p4.transpose()) / 8.0
           + (p3 + p3.transpose()) / 6.0
           + (s12 * s34) / 8.0
           - s34 / 4.0;
  return w;
}

double witness_expectation(const WitnessOperator& w, const DensityMatrix& rho) {
  if (!rho.is_two_qubit()) {
    throw std::invalid_argument("witness_expectation: two-qubit states only");
  }
  const CMat rho2 = kron(rho.matrix, rho.matrix);
  const CMat rho4 = kron(rho2, rho2);
  return real_checked((w.matrix * rho4).trace(), 1e-10, "witness_expectation");
}

double witness_expectation_moments(const DensityMatrix& rho) {
  return newton_girard_det(pt_moments(rho));
}

void write_w4_dump(const WitnessOperator& w, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out.write("W4UNIV01", 8);
  for (int i = 0; i < 256; ++i)
    for (int j = 0; j < 256; ++j) {
      const double re = w.matrix(i, j).real(), im = w.matrix(i, j).imag();
      out.write(reinterpret_cast<const char*>(&re), sizeof(double));
      out.write(reinterpret_cast<const char*>(&im), sizeof(double));
    }
  if (!out) throw std::runtime_error("short write: " + path);
}

CMat read_w4_dump(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, "W4UNIV01", 8) != 0) {
    throw std::runtime_error("bad magic in w4 dump: " + path);
  }
  CMat m(256, 256);
  for (int i = 0; i < 256; ++i)
    for (int j = 0; j < 256; ++j) {
      double re = 0, im = 0;
      in.read(reinterpret_cast<char*>(&re), sizeof(double));
      in.read(reinterpret_cast<char*>(&im), sizeof(double));
      m(i, j) = Complex(re, im);
    }
  if (!in) throw std::runtime_error("truncated w4 dump: " + path);
  return m;
}

}  // namespace qdet
