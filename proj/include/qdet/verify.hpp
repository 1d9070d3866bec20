#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qdet/states.hpp"

namespace qdet {

struct SuiteResult {
  std::string name;
  bool passed = true;
  double max_violation = 0.0;
  std::vector<std::string> lines;
};

// Witness identity Tr[W rho^4] = det of the partial transpose, moment-route
// agreement, nonnegativity on separable inputs.
SuiteResult run_witness_suite(long samples, std::uint64_t seed);

// Determinant-sign decision versus minimum-eigenvalue decision, plus the
// single-negative-eigenvalue structure of filtered violating states.
SuiteResult run_prop1_suite(long samples, std::uint64_t seed);

// Monotonicity of pi2 under two-outcome local instruments.
SuiteResult run_prop2_suite(long samples, std::uint64_t seed);

// Network fixtures, the (24 det - 1)/23 identity sweep, threshold agreement
// and per-branch moment decomposition.
SuiteResult run_circuit_suite(long samples, std::uint64_t seed);

// Measure bound chain, pi2 decomposition identity, local-unitary invariance,
// filter covariance, and the twirl counterexample.
SuiteResult run_bounds_suite(long samples, std::uint64_t seed);

// which: one of witness|prop1|prop2|circuit|bounds|all. samples = 0 picks
// each suite's default count.
std::vector<SuiteResult> run_suites(const std::string& which, long samples,
                                    std::uint64_t seed);

// A Bell-diagonal entangled state whose Werner twirl strictly increases pi2,
// found by a deterministic grid search over the probability simplex.
struct TwirlInstance {
  bool found = false;
  std::array<double, 4> probs{};
  double pi2_before = 0.0;
  double pi2_after = 0.0;
};
TwirlInstance find_twirl_increase();

// Draws a two-qubit state with rank cycling through 1..4; used by every
// Monte-Carlo suite so low-rank edge cases stay covered.
DensityMatrix sample_two_qubit(long index, Rng& stream);

}  // namespace qdet
