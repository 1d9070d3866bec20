#pragma once

#include "qdet/states.hpp"

namespace qdet {

// Entanglement quantities of a two-qubit state together with the bound chain
//   negativity <= concurrence <= pi2 <= lower_bound_eq6 and
//   pi2 <= upper_bound_fig1
// where lower_bound_eq6 = (N (N+2)^3 / 27)^{1/4} and
// upper_bound_fig1 = (N+1)/2.
struct MeasureReport {
  double negativity;
  double concurrence;
  double pi2;
  double lower_bound_eq6;
  double upper_bound_fig1;
};

// Negativity normalized so a Bell state gives 1; for 2 (x) d inputs this is
// twice the absolute sum of the negative partial-transpose eigenvalues.
double negativity(const DensityMatrix& rho);

// Wootters concurrence of a two-qubit state.
double concurrence(const DensityMatrix& rho);

// Determinant-based quantity on d (x) d states: 0 when det of the partial
// transpose is nonnegative, else d |det|^{1/(2d)}. Determinants within
// 1e-12 of zero count as nonnegative.
double pi_d(const DensityMatrix& rho, int d);
double pi2(const DensityMatrix& rho);

// G-concurrence of a pure d (x) d state: d |det A|^{2/d} with A the
// reshaped amplitude matrix.
double g_concurrence_pure(const PureState& psi);

MeasureReport bound_report(const DensityMatrix& rho);

}  // namespace qdet
