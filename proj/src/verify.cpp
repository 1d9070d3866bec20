#include "qdet/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qdet/circuit.hpp"
#include "qdet/criteria.hpp"
#include "qdet/measures.hpp"
#include "qdet/parallel.hpp"
#include "qdet/report.hpp"
#include "qdet/witness.hpp"

namespace qdet {

namespace {

std::string fmt(double x) { return format_double(x); }

void check(SuiteResult& r, bool ok, double violation, const std::string& line) {
  r.max_violation = std::max(r.max_violation, violation);
  if (!ok) r.passed = false;
  r.lines.push_back(std::string(ok ? "  ok   " : "  FAIL ") + line);
}

double det_pt(const DensityMatrix& rho) {
  return det_hermitian(partial_transpose(rho.matrix, 2, 2));
}

DensityMatrix sample_entangled(long index, Rng& stream) {
  for (int attempt = 0; attempt < 500; ++attempt) {
    DensityMatrix rho = sample_two_qubit(index + attempt, stream);
    if (det_pt(rho) < -1e-8) return rho;
  }
  throw std::runtime_error("sample_entangled: rejection sampling failed");
}

// (rho_A^{-1}/2)^{1/2}: the local filter taking rho_A to the maximally
// mixed marginal.
CMat balancing_filter(const CMat& rho_a) {
  const Spectrum s = herm_eig(rho_a);
  CMat f = CMat::Zero(rho_a.rows(), rho_a.cols());
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
    f += (1.0 / std::sqrt(2.0 * s.eigenvalues[i])) * s.eigenvectors.col(i) *
         s.eigenvectors.col(i).adjoint();
  }
  return f;
}

// Well-conditioned contraction (singular values in [0.3, 1]) so the filtered
// determinant stays far from the pi_d clamp at -1e-12.
CMat random_filter(Rng& rng) {
  const CMat u = random_unitary(2, rng);
  const CMat v = random_unitary(2, rng);
  CMat s = CMat::Zero(2, 2);
  s(0, 0) = 0.3 + 0.7 * rng.uniform();
  s(1, 1) = 0.3 + 0.7 * rng.uniform();
  return u * s * v.adjoint();
}

}  // namespace

DensityMatrix sample_two_qubit(long index, Rng& stream) {
  const int rank = static_cast<int>(index % 4) + 1;
  return random_density({2, 2}, rank, stream);
}

SuiteResult run_witness_suite(long samples, std::uint64_t seed) {
  if (samples <= 0) samples = 1000;
  SuiteResult r{"witness", true, 0.0, {}};
  const Rng base(seed, 1);
  const WitnessOperator w4 = build_w4();

  // Central identity: Tr[W rho^(x)4] = det of the partial transpose.
  std::vector<double> dev(samples), ng_dev(samples);
  parallel_for(static_cast<int>(samples), [&](int i) {
    Rng stream = base.split(i);
    const DensityMatrix rho = sample_two_qubit(i, stream);
    const double det = det_pt(rho);
    dev[i] = std::abs(witness_expectation(w4, rho) - det);
    ng_dev[i] = std::abs(newton_girard_det(pt_moments(rho)) - det);
  });
  const double max_dev = *std::max_element(dev.begin(), dev.end());
  check(r, max_dev <= 1e-10, max_dev,
        "witness identity: max |Tr[W rho^x4] - det PT| = " + fmt(max_dev) +
            " over " + std::to_string(samples) + " states");
  const double max_ng = *std::max_element(ng_dev.begin(), ng_dev.end());
  check(r, max_ng <= 1e-10, max_ng,
        "moment route: max |newton_girard(pt_moments) - det PT| = " + fmt(max_ng));

  // Spectral moments against the collective moment operators.
  const long op_samples = std::min<long>(samples, 300);
  std::vector<double> op_dev(op_samples);
  parallel_for(static_cast<int>(op_samples), [&](int i) {
    Rng stream = base.split(0x10000 + i);
    const DensityMatrix rho = sample_two_qubit(i, stream);
    const MomentVector mv = pt_moments(rho);
    const double pis[3] = {mv.pi2, mv.pi3, mv.pi4};
    double worst = 0.0;
    CMat rho_k = rho.matrix;
    for (int k = 2; k <= 4; ++k) {
      rho_k = kron(rho_k, rho.matrix);
      const double mean = real_checked((moment_operator_pt(k) * rho_k).trace(),
                                       1e-10, "moment operator mean");
      worst = std::max(worst, std::abs(mean - pis[k - 2]));
    }
    op_dev[i] = worst;
  });
  const double max_op = *std::max_element(op_dev.begin(), op_dev.end());
  check(r, max_op <= 1e-10, max_op,
        "moment operators: max |Tr[V~ x V~T rho^xk] - pi_k| = " + fmt(max_op) +
            " (k = 2..4, " + std::to_string(op_samples) + " states)");

  // Collective-witness property: nonnegative on separable inputs.
  const long sep_samples = std::max<long>(samples / 10, 20);
  std::vector<double> sep_val(sep_samples);
  parallel_for(static_cast<int>(sep_samples), [&](int i) {
    Rng stream = base.split(0x20000 + i);
    sep_val[i] = witness_expectation(w4, random_separable(2, 2, 20, stream));
  });
  const double min_sep = *std::min_element(sep_val.begin(), sep_val.end());
  check(r, min_sep >= -1e-10, std::max(0.0, -min_sep),
        "separable states: min Tr[W rho^x4] = " + fmt(min_sep) + " over " +
            std::to_string(sep_samples) + " product mixtures");

  const double bell_val = witness_expectation(w4, bell_state());
  check(r, std::abs(bell_val + 1.0 / 16.0) <= 1e-10 && bell_val < -1e-3,
        std::abs(bell_val + 1.0 / 16.0),
        "Bell state: Tr[W rho^x4] = " + fmt(bell_val) + " (expected -0.0625)");
  return r;
}

SuiteResult run_prop1_suite(long samples, std::uint64_t seed) {
  if (samples <= 0) samples = 10000;
  SuiteResult r{"prop1", true, 0.0, {}};
  const Rng base(seed, 2);

  // Determinant sign against minimum-eigenvalue sign of the partial
  // transpose; |det| <= 1e-12 is the boundary band, counted separately.
  std::vector<int> status(samples);  // 0 agree, 1 boundary, 2 disagree
  parallel_for(static_cast<int>(samples), [&](int i) {
    Rng stream = base.split(i);
    const DensityMatrix rho = sample_two_qubit(i, stream);
    const Verdict v = det_ppt_test(rho);
    if (std::abs(v.det_value) <= kDetTol) {
      status[i] = 1;
      return;
    }
    const bool ent_by_det = v.det_value < -kDetTol;
    const bool ent_by_eig = v.witness_eigenvalue < -kDetTol;
    status[i] = ent_by_det == ent_by_eig ? 0 : 2;
  });
  const long boundary = std::count(status.begin(), status.end(), 1);
  const long disagree = std::count(status.begin(), status.end(), 2);
  check(r, disagree == 0, static_cast<double>(disagree),
        "det sign vs min PT eigenvalue: " + std::to_string(disagree) +
            " disagreements over " + std::to_string(samples) + " states (" +
            std::to_string(boundary) + " in the boundary band)");

  const long sep_samples = std::max<long>(samples / 10, 50);
  std::vector<int> sep_bad(sep_samples);
  parallel_for(static_cast<int>(sep_samples), [&](int i) {
    Rng stream = base.split(0x10000 + i);
    const Verdict v = det_ppt_test(random_separable(2, 2, 20, stream));
    sep_bad[i] = v.decision == Decision::Separable ? 0 : 1;
  });
  const long sep_fail = std::count(sep_bad.begin(), sep_bad.end(), 1);
  check(r, sep_fail == 0, static_cast<double>(sep_fail),
        "guaranteed-separable mixtures declared separable: " +
            std::to_string(sep_samples - sep_fail) + "/" + std::to_string(sep_samples));

  // Proof structure: after balancing the A marginal, a violating state's
  // reduction image has exactly one negative eigenvalue and none at zero.
  const long filt_samples = std::max<long>(samples / 10, 100);
  std::vector<int> filt_bad(filt_samples);
  parallel_for(static_cast<int>(filt_samples), [&](int i) {
    Rng stream = base.split(0x20000 + i);
    const DensityMatrix rho = sample_entangled(i, stream);
    const CMat rho_a = partial_trace(rho.matrix, 2, 2, Subsystem::A);
    const DensityMatrix filtered =
        apply_filter(rho, balancing_filter(rho_a), identity(2)).first;
    const Spectrum s = herm_eig(reduction_apply(filtered));
    int negatives = 0, zeros = 0;
    for (Eigen::Index k = 0; k < s.eigenvalues.size(); ++k) {
      if (std::abs(s.eigenvalues[k]) <= kDetTol) ++zeros;
      else if (s.eigenvalues[k] < 0.0) ++negatives;
    }
    filt_bad[i] = (negatives == 1 && zeros == 0) ? 0 : 1;
  });
  const long filt_fail = std::count(filt_bad.begin(), filt_bad.end(), 1);
  check(r, filt_fail == 0, static_cast<double>(filt_fail),
        "filtered violating states with exactly one negative eigenvalue: " +
            std::to_string(filt_samples - filt_fail) + "/" + std::to_string(filt_samples));
  return r;
}

SuiteResult run_prop2_suite(long samples, std::uint64_t seed) {
  if (samples <= 0) samples = 1000;
  SuiteResult r{"prop2", true, 0.0, {}};
  const Rng base(seed, 3);

  std::vector<double> violation(samples);
  parallel_for(static_cast<int>(samples), [&](int i) {
    Rng stream = base.split(i);
    const DensityMatrix rho = sample_two_qubit(i, stream);
    const LocalInstrument inst = random_two_outcome_instrument(2, stream);
    double avg = 0.0;
    for (const auto& [p, out] : apply_instrument(rho, inst)) avg += p * pi2(out);
    violation[i] = avg - pi2(rho);
  });
  const double worst = *std::max_element(violation.begin(), violation.end());
  check(r, worst <= 1e-10, std::max(0.0, worst),
        "monotonicity: max sum_i p_i pi2(rho_i) - pi2(rho) = " + fmt(worst) +
            " over " + std::to_string(samples) + " instrument draws");
  return r;
}

SuiteResult run_circuit_suite(long samples, std::uint64_t seed) {
  if (samples <= 0) samples = 200;
  SuiteResult r{"circuit", true, 0.0, {}};
  const Rng base(seed, 4);
  const NetworkSpec spec = NetworkSpec::standard();

  struct Fixture {
    const char* name;
    DensityMatrix rho;
    double expected;
  };
  const Fixture fixtures[] = {
      {"Bell", bell_state(), -5.0 / 46.0},
      {"maximally mixed", DensityMatrix(identity(4) / 4.0, {2, 2}), -29.0 / 736.0},
      {"werner(1/3)", werner(1.0 / 3.0), -1.0 / 23.0},
  };
  for (const Fixture& f : fixtures) {
    const double sz = run_exact(f.rho, spec);
    check(r, std::abs(sz - f.expected) <= 1e-9, std::abs(sz - f.expected),
          std::string(f.name) + ": <sigma_z> = " + fmt(sz) + " (expected " +
              fmt(f.expected) + ")");
  }

  std::vector<double> dev(samples);
  std::vector<int> agree(samples, 1);
  parallel_for(static_cast<int>(samples), [&](int i) {
    Rng stream = base.split(i);
    const DensityMatrix rho = sample_two_qubit(i, stream);
    const double sz = run_exact(rho, spec);
    const double det = det_pt(rho);
    dev[i] = std::abs(sz - (24.0 * det - 1.0) / 23.0);
    if (std::abs(det) > kDetTol) {
      const bool ent_by_circuit = sz < kCircuitThreshold;
      agree[i] = ent_by_circuit == (det < 0.0) ? 1 : 0;
    }
  });
  const double max_dev = *std::max_element(dev.begin(), dev.end());
  check(r, max_dev <= 1e-9, max_dev,
        "identity: max |<sigma_z> - (24 det - 1)/23| = " + fmt(max_dev) +
            " over " + std::to_string(samples) + " states");
  const long disagree = std::count(agree.begin(), agree.end(), 0);
  check(r, disagree == 0, static_cast<double>(disagree),
        "threshold at -1/23 vs det test: " + std::to_string(disagree) +
            " disagreements");

  // Per-branch decomposition: with the selector pinned to one basis state the
  // network returns sign_i times that branch's moment.
  Rng stream = base.split(0x10000);
  const DensityMatrix rho = sample_two_qubit(1, stream);
  const MomentVector mv = pt_moments(rho);
  const double branch_expected[4] = {mv.pi2 * mv.pi2, mv.pi2, mv.pi3, mv.pi4};
  double worst_branch = 0.0;
  for (int b = 0; b < 4; ++b) {
    NetworkSpec one = spec;
    one.selector_amplitudes = {0, 0, 0, 0};
    one.selector_amplitudes[b] = 1.0;
    const double sz = run_exact(rho, one);
    worst_branch = std::max(
        worst_branch, std::abs(sz - spec.branch_signs[b] * branch_expected[b]));
  }
  check(r, worst_branch <= 1e-9, worst_branch,
        "branch decomposition: max |<sigma_z>_i - sign_i pi_i| = " + fmt(worst_branch));
  return r;
}

SuiteResult run_bounds_suite(long samples, std::uint64_t seed) {
  if (samples <= 0) samples = 10000;
  SuiteResult r{"bounds", true, 0.0, {}};
  const Rng base(seed, 5);

  // Bound chain N <= C <= pi2 <= (N(N+2)^3/27)^{1/4} <= (C(C+2)^3/27)^{1/4}
  // plus pi2 <= (N+1)/2, and the pi2 decomposition identity away from the
  // determinant boundary.
  std::vector<double> slack(samples), decomp(samples, 0.0);
  parallel_for(static_cast<int>(samples), [&](int i) {
    Rng stream = base.split(i);
    const DensityMatrix rho = sample_two_qubit(i, stream);
    const MeasureReport m = bound_report(rho);
    const double eq6_c = std::pow(
        m.concurrence * std::pow((m.concurrence + 2.0) / 3.0, 3.0), 0.25);
    double s = m.concurrence - m.negativity;
    s = std::min(s, m.pi2 - m.concurrence);
    s = std::min(s, m.lower_bound_eq6 - m.pi2);
    s = std::min(s, eq6_c - m.lower_bound_eq6);
    s = std::min(s, m.upper_bound_fig1 - m.pi2);
    slack[i] = s;

    const Spectrum sp = herm_eig(partial_transpose(rho.matrix, 2, 2));
    const double det = sp.eigenvalues.prod();
    if (det < -1e-9) {
      double pos = 1.0;
      for (int k = 1; k < 4; ++k) pos *= sp.eigenvalues[k];
      const double reconstructed =
          2.0 * std::pow(0.5 * m.negativity * pos, 0.25);
      decomp[i] = std::abs(m.pi2 - reconstructed);
    }
  });
  const double min_slack = *std::min_element(slack.begin(), slack.end());
  check(r, min_slack >= -1e-10, std::max(0.0, -min_slack),
        "bound chain: min slack = " + fmt(min_slack) + " over " +
            std::to_string(samples) + " states");
  const double max_decomp = *std::max_element(decomp.begin(), decomp.end());
  check(r, max_decomp <= 1e-10, max_decomp,
        "pi2 = 2 ((1/2) N l1 l2 l3)^{1/4}: max deviation = " + fmt(max_decomp));

  const long lu_samples = std::min<long>(samples, 500);
  std::vector<double> lu_dev(lu_samples), cov_dev(lu_samples, 0.0);
  parallel_for(static_cast<int>(lu_samples), [&](int i) {
    Rng stream = base.split(0x10000 + i);
    const DensityMatrix rho = sample_two_qubit(i, stream);
    const CMat u = kron(random_unitary(2, stream), random_unitary(2, stream));
    const DensityMatrix rotated(u * rho.matrix * u.adjoint(), rho.dims);
    lu_dev[i] = std::abs(pi2(rotated) - pi2(rho));

    if (std::abs(det_pt(rho)) > 1e-9) {
      const CMat f_a = random_filter(stream), f_b = random_filter(stream);
      const auto [filtered, p] = apply_filter(rho, f_a, f_b);
      // The identity is meaningless inside the pi_d clamp band; skip samples
      // whose filtered determinant lands near zero.
      if (std::abs(det_pt(filtered)) > 1e-9) {
        const double factor = std::abs(f_a.determinant() * f_b.determinant()) / p;
        const double dev_pi = std::abs(pi2(filtered) - factor * pi2(rho));
        const double dev_c = std::abs(concurrence(filtered) - factor * concurrence(rho));
        cov_dev[i] = std::max(dev_pi, dev_c);
      }
    }
  });
  const double max_lu = *std::max_element(lu_dev.begin(), lu_dev.end());
  check(r, max_lu <= 1e-10, max_lu,
        "local-unitary invariance of pi2: max deviation = " + fmt(max_lu));
  const double max_cov = *std::max_element(cov_dev.begin(), cov_dev.end());
  check(r, max_cov <= 1e-9, max_cov,
        "filter covariance (pi2 and concurrence, factor |det AB|/p): max deviation = " +
            fmt(max_cov));

  const TwirlInstance t = find_twirl_increase();
  check(r, t.found && t.pi2_after > t.pi2_before, 0.0,
        "twirl increase: bell_diagonal(" + fmt(t.probs[0]) + ", " + fmt(t.probs[1]) +
            ", " + fmt(t.probs[2]) + ", " + fmt(t.probs[3]) + ") has pi2 = " +
            fmt(t.pi2_before) + ", Werner twirl has pi2 = " + fmt(t.pi2_after));
  return r;
}

TwirlInstance find_twirl_increase() {
  TwirlInstance best;
  const int steps = 20;
  for (int a = 0; a <= steps; ++a)
    for (int b = 0; a + b <= steps; ++b)
      for (int c = 0; a + b + c <= steps; ++c) {
        const double p1 = a / static_cast<double>(steps);
        const double p2 = b / static_cast<double>(steps);
        const double p3 = c / static_cast<double>(steps);
        const double p4 = 1.0 - p1 - p2 - p3;
        const DensityMatrix rho = bell_diagonal(p1, p2, p3, p4);
        const double before = pi2(rho);
        if (before <= 1e-9) continue;  // only entangled starting points
        const double after = pi2(werner_twirl(rho));
        if (after - before > std::max(1e-6, best.pi2_after - best.pi2_before)) {
          best.found = true;
          best.probs = {p1, p2, p3, p4};
          best.pi2_before = before;
          best.pi2_after = after;
        }
      }
  return best;
}

std::vector<SuiteResult> run_suites(const std::string& which, long samples,
                                    std::uint64_t seed) {
  std::vector<SuiteResult> results;
  const bool all = which == "all";
  if (all || which == "witness") results.push_back(run_witness_suite(samples, seed));
  if (all || which == "prop1") results.push_back(run_prop1_suite(samples, seed));
  if (all || which == "prop2") results.push_back(run_prop2_suite(samples, seed));
  if (all || which == "circuit") results.push_back(run_circuit_suite(samples, seed));
  if (all || which == "bounds") results.push_back(run_bounds_suite(samples, seed));
  if (results.empty()) {
    throw std::invalid_argument("unknown suite: " + which +
                                " (expected witness|prop1|prop2|circuit|bounds|all)");
  }
  return results;
}

}  // namespace qdet
