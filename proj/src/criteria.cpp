#include "qdet/criteria.hpp"

#include <stdexcept>

#include "qdet/measures.hpp"

namespace qdet {

const char* to_string(Decision d) {
  return d == Decision::Separable ? "SEPARABLE" : "ENTANGLED";
}

const char* to_string(Criterion c) {
  switch (c) {
    case Criterion::PptDet: return "PPT_DET";
    case Criterion::ReductionDet: return "REDUCTION_DET";
    default: return "MAP_DET";
  }
}

namespace {

Verdict verdict_from_spectrum(const CMat& mapped, Criterion criterion) {
  const Spectrum s = herm_eig(mapped);
  double det = 1.0;
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) det *= s.eigenvalues[i];
  Verdict v{};
  v.det_value = det;
  v.criterion = criterion;
  v.witness_eigenvalue = s.eigenvalues.minCoeff();
  v.decision = det < -kDetTol ? Decision::Entangled : Decision::Separable;
  return v;
}

}  // namespace

Verdict det_ppt_test(const DensityMatrix& rho) {
  if (!rho.is_two_qubit()) {
    throw std::invalid_argument("det_ppt_test: two-qubit states only");
  }
  const CMat pt = partial_transpose(rho.matrix, 2, 2);
  return verdict_from_spectrum(pt, Criterion::PptDet);
}

CMat reduction_apply(const DensityMatrix& rho) {
  if (rho.dim_a() != 2) {
    throw std::invalid_argument("reduction_apply: first subsystem must be a qubit");
  }
  const CMat rho_a = partial_trace(rho.matrix, 2, rho.dim_b(), Subsystem::A);
  return kron(rho_a, identity(rho.dim_b())) - rho.matrix;
}

Verdict reduction_det_test(const DensityMatrix& rho) {
  if (rho.dim_a() != 2) {
    throw std::invalid_argument("reduction_det_test: first subsystem must be a qubit");
  }
  Verdict v = verdict_from_spectrum(reduction_apply(rho), Criterion::ReductionDet);
  const CMat rho_a = partial_trace(rho.matrix, 2, rho.dim_b(), Subsystem::A);
  const Spectrum sa = herm_eig(rho_a);
  if (sa.eigenvalues.minCoeff() < 1e-12) {
    // Singular marginal means a product state.
    v.decision = Decision::Separable;
    v.product_shortcut = true;
  }
  return v;
}

CMat transpose_map_action(int d) {
  CMat l = CMat::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      l(i + d * j, j + d * i) = 1.0;
  return l;
}

CMat reduction_map_action(int d) {
  CMat l = CMat::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (i == j) {
        for (int k = 0; k < d; ++k) l(i + d * j, k + d * k) += 1.0;
      }
      l(i + d * j, i + d * j) -= 1.0;
    }
  return l;
}

namespace {

CMat apply_map_to_block(const CMat& action, const CMat& block) {
  const int d = static_cast<int>(block.rows());
  CVec v(d * d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i)
      v[i + d * j] = block(i, j);
  const CVec w = action * v;
  CMat out(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i)
      out(i, j) = w[i + d * j];
  return out;
}

}  // namespace

double map_det(const DensityMatrix& rho, const CMat& map_on_b) {
  const int db = rho.dim_b();
  if (map_on_b.rows() != db * db || map_on_b.cols() != db * db) {
    throw std::invalid_argument("map_det: action matrix must be d_B^2 x d_B^2");
  }
  // Hermiticity preservation: Lambda(E_kl)^dag == Lambda(E_lk) on the basis.
  for (int k = 0; k < db; ++k)
    for (int l = 0; l < db; ++l) {
      CMat ekl = CMat::Zero(db, db), elk = CMat::Zero(db, db);
      ekl(k, l) = 1.0;
      elk(l, k) = 1.0;
      const CMat lhs = apply_map_to_block(map_on_b, ekl).adjoint();
      const CMat rhs = apply_map_to_block(map_on_b, elk);
      if ((lhs - rhs).cwiseAbs().maxCoeff() > 1e-10) {
        throw std::invalid_argument("map_det: map does not preserve Hermiticity");
      }
    }

  const int da = rho.dim_a();
  CMat out(rho.dim(), rho.dim());
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j) {
      const CMat block = rho.matrix.block(i * db, j * db, db, db);
      out.block(i * db, j * db, db, db) = apply_map_to_block(map_on_b, block);
    }
  return det_hermitian(out);
}

CounterexampleReport converse_counterexample() {
  const DensityMatrix embedded = embed(bell_state(), {3, 3});
  const double det = map_det(embedded, transpose_map_action(3));
  const double neg = negativity(embedded);
  return CounterexampleReport{embedded, det, neg};
}

}  // namespace qdet
