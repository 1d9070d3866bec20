#pragma once

#include "qdet/states.hpp"

namespace qdet {

enum class Decision { Separable, Entangled };
enum class Criterion { PptDet, ReductionDet, MapDet };

// |det| <= kDetTol classifies as boundary/separable; the separable set is
// closed, so the non-strict inequality wins.
inline constexpr double kDetTol = 1e-12;

struct Verdict {
  Decision decision;
  double det_value;
  Criterion criterion;
  // Minimum eigenvalue of the mapped matrix, kept as a diagnostic.
  double witness_eigenvalue;
  // Set when a singular rho_A short-circuited the reduction test.
  bool product_shortcut = false;
};

const char* to_string(Decision d);
const char* to_string(Criterion c);

// Two-qubit separability by the sign of det of the partial transpose.
Verdict det_ppt_test(const DensityMatrix& rho);

// rho_A (x) 1_d - rho, the reduction map applied to the B side of a
// 2 (x) d state.
CMat reduction_apply(const DensityMatrix& rho);

// Reduction criterion on the B side of a 2 (x) d state, decided by the
// determinant sign. A singular rho_A marks the state as product and
// short-circuits to separable.
Verdict reduction_det_test(const DensityMatrix& rho);

// Action matrices on the column-stacked operator space, vec(Y)[i + d*j] =
// Y(i, j): building blocks for map_det.
CMat transpose_map_action(int d);
CMat reduction_map_action(int d);

// det of [I (x) Lambda](rho) for a positive map Lambda given by its action
// matrix on the B operator space. Throws unless the map sends Hermitian to
// Hermitian (checked on the matrix-unit basis).
double map_det(const DensityMatrix& rho, const CMat& map_on_b);

// The 3 (x) 3 embedding of a Bell state: transpose-map determinant 0 yet
// negativity 1, so nonnegative determinant does not imply separability.
struct CounterexampleReport {
  DensityMatrix state;
  double det_value;
  double negativity_value;
};
CounterexampleReport converse_counterexample();

}  // namespace qdet
