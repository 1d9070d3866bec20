#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace qdet {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

// Hermiticity tolerance applied to every operation that requires a
// Hermitian input.
inline constexpr double kHermTol = 1e-12;

enum class Subsystem { A, B };
enum class Side { A, B, Both };

// Eigensystem of a Hermitian matrix, eigenvalues ascending, eigenvector
// columns orthonormal.
struct Spectrum {
  RVec eigenvalues;
  CMat eigenvectors;
};

CMat identity(int n);
CMat pauli_x();
CMat pauli_y();
CMat pauli_z();

double hermiticity_defect(const CMat& m);  // max |m[i][j] - conj(m[j][i])|
bool is_hermitian(const CMat& m, double tol = kHermTol);

// Truncates a nominally-real scalar to its real part. Imaginary residue in
// (1e-12, hard_tol] is logged to stderr; residue above hard_tol throws.
double real_checked(Complex z, double hard_tol = 1e-10,
                    const char* context = "");

CMat kron(const CMat& a, const CMat& b);

// Transpose of one subsystem's indices of a (dim_a*dim_b)-dimensional matrix.
CMat partial_transpose(const CMat& m, int dim_a, int dim_b,
                       Subsystem which = Subsystem::B);

CMat partial_trace(const CMat& m, int dim_a, int dim_b, Subsystem keep);

// Requires hermiticity within kHermTol; throws std::invalid_argument else.
Spectrum herm_eig(const CMat& m);

// Determinant of a Hermitian matrix as the product of its eigenvalues.
double det_hermitian(const CMat& m);

// Determinant by partial-pivot LU. Independent cross-check route for
// det_hermitian; valid for any square complex matrix.
Complex det_lu(const CMat& m);

// Permutation operator on a tensor product of slots. dest[j] is the slot the
// content of slot j moves to; slot 0 is the most significant index digit.
CMat slot_permutation(const std::vector<int>& slot_dims,
                      const std::vector<int>& dest);

// Cyclic shift V on k copies of a d-dimensional system:
// V |p1>|p2>...|pk> = |pk>|p1>...|p_{k-1}>.  V(2,d) is the swap.
CMat cyclic_shift(int copies, int local_dim);

// Embeds `op` into the 4-copy two-qubit register under the global ordering
// (A1,B1,A2,B2,A3,B3,A4,B4). `copies` lists 1-based copy indices in the
// order op's tensor factors are taken; side selects the A qubits, the B
// qubits, or the full (A,B) pair of each listed copy.
CMat embed_on_copies(const CMat& op, Side side, const std::vector<int>& copies,
                     int total_copies = 4);

}  // namespace qdet
