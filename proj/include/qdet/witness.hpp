#pragma once

#include <string>

#include "qdet/states.hpp"

namespace qdet {

// Power sums pi_k = sum_i lambda_i^k, k = 1..4, of a Hermitian matrix's
// eigenvalues.
struct MomentVector {
  double pi1;
  double pi2;
  double pi3;
  double pi4;
};

MomentVector hermitian_moments(const CMat& m);

// Moments of the partial transpose of a two-qubit state, computed from the
// spectrum and cross-checked against direct matrix powers.
MomentVector pt_moments(const DensityMatrix& rho);

// Determinant of a 4x4 Hermitian matrix with unit trace from its first four
// moments: (1 - 6 pi4 + 8 pi3 + 3 pi2^2 - 6 pi2) / 24.
double newton_girard_det(const MomentVector& m);

// The 4^k-dimensional operator (cyclic shift on the k A-copies) (x)
// (transposed cyclic shift on the k B-copies) in the interleaved ordering
// (A1,B1,...,Ak,Bk); its mean on rho^(x)k is Tr[(rho^Gamma)^k]. k in {2,3,4}.
CMat moment_operator_pt(int k);

// Hermitian observable (V + V^dag)/2 whose mean on k copies of a Hermitian
// sigma is Tr sigma^k.
CMat moment_observable(int k, int d);

// The four-copy universal collective witness: a 256x256 Hermitian operator
// whose mean on rho^(x)4 equals det of the partial transpose of rho. Copy
// ordering is frozen as (A1,B1,A2,B2,A3,B3,A4,B4); the three-copy block sits
// on copies 1-3 with identity on copy 4.
struct WitnessOperator {
  CMat matrix;
  static constexpr const char* kCopyOrdering = "A1B1A2B2A3B3A4B4";
};

WitnessOperator build_w4();

// Tr[W rho^(x)4] via the dense 256x256 operator.
double witness_expectation(const WitnessOperator& w, const DensityMatrix& rho);

// Same value through the moment route (no 256x256 product).
double witness_expectation_moments(const DensityMatrix& rho);

// Binary dump: 8-byte magic "W4UNIV01", then 256x256 row-major little-endian
// float64 pairs (re, im).
void write_w4_dump(const WitnessOperator& w, const std::string& path);
CMat read_w4_dump(const std::string& path);

}  // namespace qdet
