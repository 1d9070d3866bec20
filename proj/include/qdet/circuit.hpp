#pragma once

#include <array>
#include <utility>
#include <vector>

#include "qdet/criteria.hpp"
#include "qdet/states.hpp"

namespace qdet {

// States above this threshold on the control qubit are declared entangled.
inline constexpr double kCircuitThreshold = -1.0 / 23.0;

// Statevector over qubits labeled, in order,
// (control, sel1, sel2, A1, B1, A2, B2, A3, B3, A4, B4);
// qubit q holds bit (n_qubits-1-q) of the amplitude index.
struct RegisterState {
  CVec amplitudes;
  int n_qubits;
};

RegisterState make_register(int n_qubits);  // |0...0>

// Applies a 2^m x 2^m unitary to the listed target qubits. Throws on a
// non-unitary gate or repeated targets.
void apply_gate(RegisterState& s, const CMat& gate, const std::vector<int>& targets);

// Same, restricted to basis states whose (qubit, bit) pairs all match.
void controlled_apply(RegisterState& s, const CMat& gate,
                      const std::vector<std::pair<int, int>>& controls,
                      const std::vector<int>& targets);

// Multiplies matching amplitudes by a unit-modulus phase.
void controlled_phase(RegisterState& s,
                      const std::vector<std::pair<int, int>>& controls,
                      Complex phase);

double sigma_z_expectation(const RegisterState& s, int qubit);

// Turns a slot permutation (dest[j] = where slot j's content goes) into the
// transposition sequence that realizes it when applied in list order.
std::vector<std::pair<int, int>> perm_to_swaps(const std::vector<int>& dest);

// The single-measurement network: control in |+>, two-qubit selector in
// (sqrt3, sqrt6, sqrt8, sqrt6)/sqrt23, and per selector value a signed
// controlled combination of swaps on the four-copy register whose means are
// the partial-transpose moments (pi2^2, pi2, pi3, pi4 with signs +,-,+,-).
struct NetworkSpec {
  std::array<double, 4> selector_amplitudes;
  std::array<int, 4> branch_signs;
  // Transposition sequences on the copy-register qubit slots 0..7
  // (A1,B1,A2,B2,A3,B3,A4,B4), applied as controlled swaps.
  std::array<std::vector<std::pair<int, int>>, 4> branch_swaps;

  static NetworkSpec standard();
};

// Dense 256x256 unitary of one branch, for verification.
CMat branch_unitary_matrix(const NetworkSpec& spec, int branch);

// Exact <sigma_z> on the control qubit: ensemble average over the eigenvector
// product terms of rho^(x)4, each run as a pure 11-qubit statevector.
double run_exact(const DensityMatrix& rho, const NetworkSpec& spec);

// Slow cross-check: evolves the full 2048x2048 density matrix instead.
double run_exact_density(const DensityMatrix& rho, const NetworkSpec& spec);

struct ShotResult {
  double estimate;
  double stderr_value;
  long shots;
};

// Draws +-1 outcomes with p(+1) = (1 + <sigma_z>)/2; optional transcript
// receives every outcome in order.
ShotResult run_shots(const DensityMatrix& rho, const NetworkSpec& spec,
                     long shots, Rng& rng,
                     std::vector<int>* transcript = nullptr);

// Exact-mode decision: entangled iff the implied determinant
// (23 <sigma_z> + 1)/24 is below -1e-12, equivalently <sigma_z> < -1/23.
Verdict verdict_from_circuit(const DensityMatrix& rho, const NetworkSpec& spec);

struct ShotVerdict {
  Decision decision;
  double exact_sigma_z;
  double estimate;
  double stderr_value;
  double margin_sigmas;  // (threshold - estimate)/stderr; positive = entangled side
  long shots;
};

ShotVerdict verdict_from_shots(const DensityMatrix& rho, const NetworkSpec& spec,
                               long shots, Rng& rng,
                               std::vector<int>* transcript = nullptr);

}  // namespace qdet
