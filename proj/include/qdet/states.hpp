#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qdet/linalg.hpp"
#include "qdet/rng.hpp"

namespace qdet {

// Violation messages for the density-matrix invariants (Hermitian within
// 1e-12, unit trace within 1e-12, min eigenvalue >= -1e-10, dims product
// matches); empty when the matrix is a valid state.
std::vector<std::string> check_density_invariants(const CMat& m,
                                                  const std::vector<int>& dims);

// A bipartite density matrix. Construction validates all invariants and
// throws std::invalid_argument listing every violation.
struct DensityMatrix {
  CMat matrix;
  std::vector<int> dims;

  DensityMatrix(CMat m, std::vector<int> d);

  int dim() const { return static_cast<int>(matrix.rows()); }
  int dim_a() const { return dims[0]; }
  int dim_b() const { return dims[1]; }
  bool is_two_qubit() const { return dims[0] == 2 && dims[1] == 2; }
};

struct PureState {
  CVec amplitudes;
  std::vector<int> dims;

  PureState(CVec a, std::vector<int> d);

  // Coefficient matrix A with |psi> = sum_ij A(i,j) |i>|j>.
  CMat coefficient_matrix() const;
  DensityMatrix to_density() const;
};

// A local instrument on the B side: one square Kraus operator per outcome,
// sum M_i^dag M_i <= identity (max eigenvalue <= 1 + 1e-10).
struct LocalInstrument {
  std::vector<CMat> kraus_b;

  explicit LocalInstrument(std::vector<CMat> kraus);
};

// Named two-qubit states. Bell basis order is (Phi+, Phi-, Psi+, Psi-).
DensityMatrix bell_state();  // |Phi+><Phi+|
DensityMatrix bell_diagonal(double p1, double p2, double p3, double p4);
DensityMatrix werner(double p);  // p |Psi-><Psi-| + (1-p) I/4

// Ginibre-induced (Hilbert-Schmidt) random state: G G^dag / Tr, with G a
// (prod dims) x rank matrix of i.i.d. standard complex Gaussians.
// rank = 0 means full rank.
DensityMatrix random_density(const std::vector<int>& dims, int rank, Rng& rng);

CMat random_unitary(int d, Rng& rng);  // Haar, QR with phase-fixed R diagonal
PureState random_pure(const std::vector<int>& dims, Rng& rng);

// Convex mixture of `terms` random product states; separable by construction.
DensityMatrix random_separable(int dim_a, int dim_b, int terms, Rng& rng);

// Local filtering (f_a (x) f_b) rho (.)^dag, normalized; returns the state and
// the outcome probability. Throws when the probability is <= 1e-14.
std::pair<DensityMatrix, double> apply_filter(const DensityMatrix& rho,
                                              const CMat& f_a, const CMat& f_b);

// All outcomes (p_i, rho_i) of the instrument applied to the B side;
// zero-probability outcomes (p <= 1e-14) are dropped.
std::vector<std::pair<double, DensityMatrix>> apply_instrument(
    const DensityMatrix& rho, const LocalInstrument& inst);

// Two-outcome instrument {M, U (1 - M^dag M)^{1/2}} with a random contraction
// M and Haar U; saturates sum M_i^dag M_i = identity.
LocalInstrument random_two_outcome_instrument(int d, Rng& rng);

// Pads each subsystem with zero rows/columns up to new_dims.
DensityMatrix embed(const DensityMatrix& rho, const std::vector<int>& new_dims);

// Projection onto the Werner family: the average of (U (x) U) rho (U (x) U)^dag
// over Haar U, in closed form. Preserves the |Psi-> overlap.
DensityMatrix werner_twirl(const DensityMatrix& rho);

}  // namespace qdet
