#include "qdet/states.hpp"

#include <cmath>

#include <doctest.h>

#include "qdet/measures.hpp"
#include "test_helpers.hpp"

using namespace qdet;
using test::max_abs_diff;

TEST_CASE("bell_diagonal(1,0,0,0) is the pure Bell state") {
  const DensityMatrix rho = bell_diagonal(1, 0, 0, 0);
  CHECK(max_abs_diff(rho.matrix, bell_state().matrix) <= 1e-14);
  const double purity = real_checked((rho.matrix * rho.matrix).trace(), 1e-10, "test");
  CHECK(std::abs(purity - 1.0) <= 1e-12);
}

TEST_CASE("werner endpoints") {
  CHECK(max_abs_diff(werner(0.0).matrix, identity(4) / 4.0) <= 1e-14);

  const Spectrum s = herm_eig(partial_transpose(werner(1.0).matrix, 2, 2));
  CHECK(std::abs(s.eigenvalues[0] + 0.5) <= 1e-12);
  for (int i = 1; i < 4; ++i) CHECK(std::abs(s.eigenvalues[i] - 0.5) <= 1e-12);
}

TEST_CASE("invalid probability vectors are rejected") {
  CHECK_THROWS_AS(bell_diagonal(0.5, 0.5, 0.5, -0.5), std::invalid_argument);
  CHECK_THROWS_AS(bell_diagonal(0.3, 0.3, 0.3, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(werner(1.5), std::invalid_argument);
}

TEST_CASE("rank-1 samples are pure") {
  Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const DensityMatrix rho = random_density({2, 2}, 1, rng);
    const double purity = real_checked((rho.matrix * rho.matrix).trace(), 1e-10, "test");
    CHECK(std::abs(purity - 1.0) <= 1e-10);
  }
  CHECK_THROWS_AS(random_density({2, 2}, 5, rng), std::invalid_argument);
}

TEST_CASE("sampler outputs satisfy the density-matrix invariants over 10^4 draws") {
  Rng rng(22);
  for (int trial = 0; trial < 10000; ++trial) {
    const int rank = trial % 4 + 1;
    const DensityMatrix rho = random_density({2, 2}, rank, rng);
    CHECK(check_density_invariants(rho.matrix, rho.dims).empty());
  }
}

TEST_CASE("mean purity of the full-rank d=4 ensemble matches the frozen anchor") {
  const Rng base(424242);
  double sum = 0.0;
  for (int i = 0; i < 10000; ++i) {
    Rng stream = base.split(i);
    const DensityMatrix rho = random_density({2, 2}, 0, stream);
    sum += real_checked((rho.matrix * rho.matrix).trace(), 1e-10, "test");
  }
  const double mean = sum / 10000.0;
  // Hilbert-Schmidt ensemble purity mean is (2d)/(d^2+1) = 8/17 for d = 4.
  CHECK(std::abs(mean - 8.0 / 17.0) <= 5e-3);
  // Seed-frozen regression anchor for this generator.
  CHECK(mean == doctest::Approx(0.47208297614991013).epsilon(1e-12));
}

TEST_CASE("random unitaries are unitary; conjugation preserves spectra") {
  Rng rng(23);
  const CMat u = random_unitary(4, rng);
  CHECK(max_abs_diff(u.adjoint() * u, identity(4)) <= 1e-10);

  const CMat v = test::random_hermitian(4, rng);
  const Spectrum before = herm_eig(v);
  const Spectrum after = herm_eig((u * v * u.adjoint()).eval());
  CHECK((before.eigenvalues - after.eigenvalues).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("random pure states are normalized") {
  Rng rng(24);
  for (int trial = 0; trial < 100; ++trial) {
    const PureState psi = random_pure({2, 2}, rng);
    CHECK(std::abs(psi.amplitudes.norm() - 1.0) <= 1e-12);
  }
}

TEST_CASE("identity filters act trivially") {
  Rng rng(25);
  const DensityMatrix rho = random_density({2, 2}, 0, rng);
  const auto [filtered, p] = apply_filter(rho, identity(2), identity(2));
  CHECK(std::abs(p - 1.0) <= 1e-12);
  CHECK(max_abs_diff(filtered.matrix, rho.matrix) <= 1e-12);
}

TEST_CASE("the balancing filter leaves a maximally mixed A marginal") {
  Rng rng(26);
  for (int trial = 0; trial < 20; ++trial) {
    const DensityMatrix rho = random_density({2, 2}, 0, rng);
    const CMat rho_a = partial_trace(rho.matrix, 2, 2, Subsystem::A);
    const Spectrum s = herm_eig(rho_a);
    CMat filter = CMat::Zero(2, 2);
    for (int i = 0; i < 2; ++i) {
      filter += (1.0 / std::sqrt(2.0 * s.eigenvalues[i])) * s.eigenvectors.col(i) *
                s.eigenvectors.col(i).adjoint();
    }
    const auto [filtered, p] = apply_filter(rho, filter, identity(2));
    const CMat new_a = partial_trace(filtered.matrix, 2, 2, Subsystem::A);
    CHECK(max_abs_diff(new_a, identity(2) / 2.0) <= 1e-10);
    CHECK(p > 0.0);
  }
}

TEST_CASE("zero-probability filter outcomes are an explicit error") {
  const DensityMatrix rho = bell_state();
  const CMat zero = CMat::Zero(2, 2);
  CHECK_THROWS_AS(apply_filter(rho, zero, identity(2)), std::runtime_error);
}

TEST_CASE("nonsingular filters preserve the sign of det of the partial transpose") {
  Rng rng(27);
  int entangled_seen = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const DensityMatrix rho = random_density({2, 2}, trial % 4 + 1, rng);
    CMat f_a(2, 2), f_b(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        f_a(i, j) = Complex(rng.gaussian(), rng.gaussian());
        f_b(i, j) = Complex(rng.gaussian(), rng.gaussian());
      }
    const double before = det_hermitian(partial_transpose(rho.matrix, 2, 2));
    if (std::abs(before) < 1e-11) continue;  // too close to the boundary to call
    const auto [filtered, p] = apply_filter(rho, f_a, f_b);
    // The filtered determinant is before * (|det f_a det f_b| / p)^4; skip
    // draws where that magnitude sinks into eigensolver noise.
    const double scale = std::abs(f_a.determinant() * f_b.determinant()) / p;
    if (std::abs(before) * std::pow(scale, 4) < 1e-13) continue;
    const double after = det_hermitian(partial_transpose(filtered.matrix, 2, 2));
    CHECK(std::signbit(before) == std::signbit(after));
    if (before < 0.0) ++entangled_seen;
  }
  CHECK(entangled_seen > 100);
}

TEST_CASE("identity instrument returns the state with probability 1") {
  Rng rng(28);
  const DensityMatrix rho = random_density({2, 2}, 0, rng);
  const LocalInstrument inst({identity(2)});
  const auto outcomes = apply_instrument(rho, inst);
  REQUIRE(outcomes.size() == 1);
  CHECK(std::abs(outcomes[0].first - 1.0) <= 1e-12);
  CHECK(max_abs_diff(outcomes[0].second.matrix, rho.matrix) <= 1e-12);
}

TEST_CASE("projective instrument on B of a product state yields product outcomes") {
  Rng rng(29);
  const DensityMatrix a = random_density({2, 1}, 0, rng);
  CMat p0 = CMat::Zero(2, 2), p1 = CMat::Zero(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  const DensityMatrix rho(kron(a.matrix, identity(2) / 2.0), {2, 2});
  const auto outcomes = apply_instrument(rho, LocalInstrument({p0, p1}));
  REQUIRE(outcomes.size() == 2);
  for (int k = 0; k < 2; ++k) {
    CHECK(std::abs(outcomes[k].first - 0.5) <= 1e-12);
    CMat proj = CMat::Zero(2, 2);
    proj(k, k) = 1.0;
    CHECK(max_abs_diff(outcomes[k].second.matrix, kron(a.matrix, proj)) <= 1e-12);
  }
}

TEST_CASE("instrument invariants are enforced") {
  CHECK_THROWS_AS(LocalInstrument({}), std::invalid_argument);
  CHECK_THROWS_AS(LocalInstrument({identity(2), identity(2)}), std::invalid_argument);
}

TEST_CASE("random two-outcome instruments saturate the completeness sum") {
  Rng rng(30);
  for (int trial = 0; trial < 50; ++trial) {
    const LocalInstrument inst = random_two_outcome_instrument(2, rng);
    REQUIRE(inst.kraus_b.size() == 2);
    CMat sum = CMat::Zero(2, 2);
    for (const CMat& m : inst.kraus_b) sum += m.adjoint() * m;
    CHECK(max_abs_diff(sum, identity(2)) <= 1e-10);
  }
}

TEST_CASE("monotonicity on a Bell state under a random instrument") {
  Rng rng(31);
  const DensityMatrix bell = bell_state();
  CHECK(std::abs(pi2(bell) - 1.0) <= 1e-10);
  for (int trial = 0; trial < 25; ++trial) {
    const LocalInstrument inst = random_two_outcome_instrument(2, rng);
    double avg = 0.0;
    for (const auto& [p, out] : apply_instrument(bell, inst)) avg += p * pi2(out);
    CHECK(avg <= 1.0 + 1e-10);
  }
}

TEST_CASE("embedding pads subsystems with zeros") {
  const DensityMatrix bell = bell_state();
  const DensityMatrix big = embed(bell, {3, 3});
  CHECK(big.dim() == 9);

  // Negativity is untouched by the embedding.
  const Spectrum s = herm_eig(partial_transpose(big.matrix, 3, 3));
  CHECK(std::abs(s.eigenvalues.minCoeff() + 0.5) <= 1e-12);

  const DensityMatrix same = embed(bell, {2, 2});
  CHECK(max_abs_diff(same.matrix, bell.matrix) == 0.0);

  const DensityMatrix mm(identity(4) / 4.0, {2, 2});
  CHECK(std::abs(det_hermitian(embed(mm, {3, 3}).matrix)) <= 1e-12);

  CHECK_THROWS_AS(embed(bell, {1, 2}), std::invalid_argument);
}

TEST_CASE("the Werner twirl matches a Haar average and fixes Werner states") {
  const DensityMatrix w = werner(0.7);
  CHECK(max_abs_diff(werner_twirl(w).matrix, w.matrix) <= 1e-12);

  Rng rng(32);
  const DensityMatrix rho = random_density({2, 2}, 0, rng);
  const DensityMatrix twirled = werner_twirl(rho);
  CMat avg = CMat::Zero(4, 4);
  const int n = 4000;
  for (int i = 0; i < n; ++i) {
    const CMat u = random_unitary(2, rng);
    const CMat uu = kron(u, u);
    avg += uu * rho.matrix * uu.adjoint();
  }
  avg /= n;
  CHECK(max_abs_diff(avg, twirled.matrix) <= 0.05);  // Monte-Carlo agreement
}

TEST_CASE("density-matrix validation lists each violated invariant") {
  CMat bad = identity(4) / 4.0;
  bad(0, 1) = Complex(0.2, 0.1);  // breaks hermiticity
  auto violations = check_density_invariants(bad, {2, 2});
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].find("Hermitian") != std::string::npos);

  CMat neg = CMat::Zero(4, 4);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  violations = check_density_invariants(neg, {2, 2});
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].find("positive semidefinite") != std::string::npos);

  CHECK_THROWS_AS(DensityMatrix(bad, {2, 2}), std::invalid_argument);
}
