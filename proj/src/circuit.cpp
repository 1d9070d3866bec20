#include "qdet/circuit.hpp"

#include <cmath>
#include <stdexcept>

#include "qdet/parallel.hpp"

namespace qdet {

RegisterState make_register(int n_qubits) {
  if (n_qubits < 1 || n_qubits > 24) {
    throw std::invalid_argument("make_register: unsupported qubit count");
  }
  RegisterState s{CVec::Zero(1L << n_qubits), n_qubits};
  s.amplitudes[0] = 1.0;
  return s;
}

namespace {

void check_targets(const RegisterState& s, const CMat& gate,
                   const std::vector<std::pair<int, int>>& controls,
                   const std::vector<int>& targets) {
  const long sub = 1L << targets.size();
  if (gate.rows() != sub || gate.cols() != sub) {
    throw std::invalid_argument("gate dimension does not match target count");
  }
  if ((gate.adjoint() * gate - CMat::Identity(sub, sub)).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("gate is not unitary");
  }
  std::vector<bool> used(s.n_qubits, false);
  for (int q : targets) {
    if (q < 0 || q >= s.n_qubits || used[q]) {
      throw std::invalid_argument("targets must be distinct in-range qubits");
    }
    used[q] = true;
  }
  for (const auto& [q, bit] : controls) {
    if (q < 0 || q >= s.n_qubits || used[q] || (bit != 0 && bit != 1)) {
      throw std::invalid_argument("controls must be distinct from targets and in range");
    }
    used[q] = true;
  }
}

}  // namespace

void controlled_apply(RegisterState& s, const CMat& gate,
                      const std::vector<std::pair<int, int>>& controls,
                      const std::vector<int>& targets) {
  check_targets(s, gate, controls, targets);
  const int n = s.n_qubits;
  const int m = static_cast<int>(targets.size());
  const long dim = 1L << n, sub = 1L << m;

  long target_mask = 0;
  std::vector<long> bit_of(m);
  for (int f = 0; f < m; ++f) {
    bit_of[f] = 1L << (n - 1 - targets[f]);
    target_mask |= bit_of[f];
  }
  long ctrl_mask = 0, ctrl_value = 0;
  for (const auto& [q, bit] : controls) {
    const long b = 1L << (n - 1 - q);
    ctrl_mask |= b;
    if (bit) ctrl_value |= b;
  }

  CVec scratch(sub);
  for (long base = 0; base < dim; ++base) {
    if ((base & target_mask) != 0) continue;
    if ((base & ctrl_mask) != ctrl_value) continue;
    for (long t = 0; t < sub; ++t) {
      long idx = base;
      for (int f = 0; f < m; ++f)
        if (t & (1L << (m - 1 - f))) idx |= bit_of[f];
      scratch[t] = s.amplitudes[idx];
    }
    const CVec out = gate * scratch;
    for (long t = 0; t < sub; ++t) {
      long idx = base;
      for (int f = 0; f < m; ++f)
        if (t & (1L << (m - 1 - f))) idx |= bit_of[f];
      s.amplitudes[idx] = out[t];
    }
  }
}

void apply_gate(RegisterState& s, const CMat& gate, const std::vector<int>& targets) {
  controlled_apply(s, gate, {}, targets);
}

void controlled_phase(RegisterState& s,
                      const std::vector<std::pair<int, int>>& controls,
                      Complex phase) {
  if (std::abs(std::abs(phase) - 1.0) > 1e-10) {
    throw std::invalid_argument("controlled_phase: phase must have unit modulus");
  }
  check_targets(s, CMat::Identity(1, 1), controls, {});
  const int n = s.n_qubits;
  long ctrl_mask = 0, ctrl_value = 0;
  for (const auto& [q, bit] : controls) {
    const long b = 1L << (n - 1 - q);
    ctrl_mask |= b;
    if (bit) ctrl_value |= b;
  }
  for (long idx = 0; idx < (1L << n); ++idx) {
    if ((idx & ctrl_mask) == ctrl_value) s.amplitudes[idx] *= phase;
  }
}

double sigma_z_expectation(const RegisterState& s, int qubit) {
  if (qubit < 0 || qubit >= s.n_qubits) {
    throw std::invalid_argument("sigma_z_expectation: qubit out of range");
  }
  const long bit = 1L << (s.n_qubits - 1 - qubit);
  double value = 0.0;
  for (long idx = 0; idx < s.amplitudes.size(); ++idx) {
    const double p = std::norm(s.amplitudes[idx]);
    value += (idx & bit) ? -p : p;
  }
  return value;
}

std::vector<std::pair<int, int>> perm_to_swaps(const std::vector<int>& dest) {
  const int n = static_cast<int>(dest.size());
  std::vector<bool> visited(n, false);
  std::vector<std::pair<int, int>> swaps;
  for (int start = 0; start < n; ++start) {
    if (visited[start] || dest[start] == start) {
      visited[start] = true;
      continue;
    }
    std::vector<int> cycle;
    int c = start;
    while (!visited[c]) {
      visited[c] = true;
      cycle.push_back(c);
      c = dest[c];
    }
    for (int t = static_cast<int>(cycle.size()) - 2; t >= 0; --t) {
      swaps.emplace_back(cycle[t], cycle[t + 1]);
    }
  }
  return swaps;
}

namespace {

constexpr int kControl = 0;
constexpr int kSel1 = 1;
constexpr int kSel2 = 2;
constexpr int kCopyBase = 3;  // copy-register slot 0 lives at qubit 3
constexpr int kNetworkQubits = 11;

CMat hadamard() {
  CMat h(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  h << s, s, s, -s;
  return h;
}

CMat swap_gate() {
  CMat g = CMat::Zero(4, 4);
  g(0, 0) = g(3, 3) = g(1, 2) = g(2, 1) = 1.0;
  return g;
}

// Slot permutation on the 8 copy-register slots for the k-copy
// pair (A-cycle forward, B-cycle backward); copies beyond k stay put.
std::vector<int> cycle_pair_dest(int k) {
  std::vector<int> dest(8);
  for (int j = 0; j < 8; ++j) dest[j] = j;
  for (int c = 0; c < k; ++c) {
    dest[2 * c] = 2 * ((c + 1) % k);
    dest[2 * c + 1] = 2 * ((c - 1 + k) % k) + 1;
  }
  return dest;
}

std::vector<int> copy_swap_dest(std::vector<std::pair<int, int>> copy_pairs) {
  std::vector<int> dest(8);
  for (int j = 0; j < 8; ++j) dest[j] = j;
  for (const auto& [a, b] : copy_pairs) {  // 1-based copy indices
    dest[2 * (a - 1)] = 2 * (b - 1);
    dest[2 * (b - 1)] = 2 * (a - 1);
    dest[2 * (a - 1) + 1] = 2 * (b - 1) + 1;
    dest[2 * (b - 1) + 1] = 2 * (a - 1) + 1;
  }
  return dest;
}

void run_network_program(RegisterState& reg, const NetworkSpec& spec) {
  const CMat h = hadamard();
  const CMat sw = swap_gate();
  const double norm_in = reg.amplitudes.norm();
  apply_gate(reg, h, {kControl});
  for (int branch = 0; branch < 4; ++branch) {
    const std::vector<std::pair<int, int>> controls = {
        {kControl, 1}, {kSel1, (branch >> 1) & 1}, {kSel2, branch & 1}};
    for (const auto& [p, q] : spec.branch_swaps[branch]) {
      controlled_apply(reg, sw, controls, {kCopyBase + p, kCopyBase + q});
    }
    if (spec.branch_signs[branch] < 0) {
      controlled_phase(reg, controls, Complex(-1.0, 0.0));
    }
    if (std::abs(reg.amplitudes.norm() - norm_in) > 1e-10) {
      throw std::runtime_error("network: norm not preserved after branch " +
                               std::to_string(branch));
    }
  }
  apply_gate(reg, h, {kControl});
}

}  // namespace

NetworkSpec NetworkSpec::standard() {
  NetworkSpec spec;
  const double norm = std::sqrt(23.0);
  spec.selector_amplitudes = {std::sqrt(3.0) / norm, std::sqrt(6.0) / norm,
                              std::sqrt(8.0) / norm, std::sqrt(6.0) / norm};
  spec.branch_signs = {+1, -1, +1, -1};
  spec.branch_swaps[0] = perm_to_swaps(copy_swap_dest({{1, 2}, {3, 4}}));  // pi2^2
  spec.branch_swaps[1] = perm_to_swaps(copy_swap_dest({{3, 4}}));          // pi2
  spec.branch_swaps[2] = perm_to_swaps(cycle_pair_dest(3));                // pi3
  spec.branch_swaps[3] = perm_to_swaps(cycle_pair_dest(4));                // pi4
  return spec;
}

CMat branch_unitary_matrix(const NetworkSpec& spec, int branch) {
  if (branch < 0 || branch > 3) throw std::invalid_argument("branch out of range");
  CMat u = identity(256);
  const std::vector<int> dims(8, 2);
  for (const auto& [p, q] : spec.branch_swaps[branch]) {
    std::vector<int> dest(8);
    for (int j = 0; j < 8; ++j) dest[j] = j;
    dest[p] = q;
    dest[q] = p;
    u = slot_permutation(dims, dest) * u;
  }
  return u;
}

double run_exact(const DensityMatrix& rho, const NetworkSpec& spec) {
  if (!rho.is_two_qubit()) {
    throw std::invalid_argument("run_exact: two-qubit states only");
  }
  double weight_sum = 0.0;
  for (double a : spec.selector_amplitudes) weight_sum += a * a;
  if (std::abs(weight_sum - 1.0) > 1e-10) {
    throw std::invalid_argument("run_exact: selector weights must sum to 1");
  }

  const Spectrum es = herm_eig(rho.matrix);
  std::vector<double> probs;
  std::vector<CVec> vecs;
  for (int i = 0; i < 4; ++i) {
    if (es.eigenvalues[i] > 1e-15) {
      probs.push_back(es.eigenvalues[i]);
      vecs.push_back(es.eigenvectors.col(i));
    }
  }
  const int r = static_cast<int>(probs.size());
  const int terms = r * r * r * r;

  // One pure 11-qubit run per eigenvector product term of rho^(x)4;
  // contributions reduce in fixed index order.
  std::vector<double> contributions(terms);
  parallel_for(terms, [&](int t) {
    int sel[4];
    int rem = t;
    for (int c = 3; c >= 0; --c) {
      sel[c] = rem % r;
      rem /= r;
    }
    double weight = 1.0;
    CVec copy_state = CVec::Ones(1);
    for (int c = 0; c < 4; ++c) {
      weight *= probs[sel[c]];
      CVec next(copy_state.size() * 4);
      for (long i = 0; i < copy_state.size(); ++i)
        for (int j = 0; j < 4; ++j)
          next[i * 4 + j] = copy_state[i] * vecs[sel[c]][j];
      copy_state.swap(next);
    }

    RegisterState reg{CVec::Zero(1L << kNetworkQubits), kNetworkQubits};
    for (int s = 0; s < 4; ++s) {
      reg.amplitudes.segment(static_cast<long>(s) << 8, 256) =
          spec.selector_amplitudes[s] * copy_state;
    }
    run_network_program(reg, spec);
    if (std::abs(reg.amplitudes.norm() - 1.0) > 1e-10) {
      throw std::runtime_error("run_exact: norm not preserved through the gate sequence");
    }
    contributions[t] = weight * sigma_z_expectation(reg, kControl);
  });

  double value = 0.0;
  for (double c : contributions) value += c;
  return value;
}

double run_exact_density(const DensityMatrix& rho, const NetworkSpec& spec) {
  if (!rho.is_two_qubit()) {
    throw std::invalid_argument("run_exact_density: two-qubit states only");
  }
  CVec phi(4);
  for (int s = 0; s < 4; ++s) phi[s] = spec.selector_amplitudes[s];
  CMat ctrl = CMat::Zero(2, 2);
  ctrl(0, 0) = 1.0;
  const CMat rho2 = kron(rho.matrix, rho.matrix);
  CMat total = kron(ctrl, kron(phi * phi.adjoint(), kron(rho2, rho2)));

  // rho -> U rho U^dag, one column pass for U and one for the conjugate.
  for (int pass = 0; pass < 2; ++pass) {
    for (long col = 0; col < total.cols(); ++col) {
      RegisterState reg{total.col(col), kNetworkQubits};
      run_network_program(reg, spec);
      total.col(col) = reg.amplitudes;
    }
    total.adjointInPlace();
  }

  Complex value = 0.0;
  const long bit = 1L << (kNetworkQubits - 1);
  for (long idx = 0; idx < total.rows(); ++idx) {
    value += (idx & bit) ? -total(idx, idx) : total(idx, idx);
  }
  return real_checked(value, 1e-10, "run_exact_density");
}

namespace {

ShotResult draw_shots(double exact, long shots, Rng& rng,
                      std::vector<int>* transcript) {
  if (shots < 1) throw std::invalid_argument("run_shots: shots must be >= 1");
  const double p_plus = 0.5 * (1.0 + exact);
  long plus = 0;
  if (transcript) transcript->reserve(transcript->size() + shots);
  for (long s = 0; s < shots; ++s) {
    const int outcome = rng.uniform() < p_plus ? 1 : -1;
    if (outcome > 0) ++plus;
    if (transcript) transcript->push_back(outcome);
  }
  const double mean = (2.0 * plus - shots) / static_cast<double>(shots);
  const double var = std::max(0.0, 1.0 - mean * mean);
  return ShotResult{mean, std::sqrt(var / static_cast<double>(shots)), shots};
}

}  // namespace

ShotResult run_shots(const DensityMatrix& rho, const NetworkSpec& spec,
                     long shots, Rng& rng, std::vector<int>* transcript) {
  return draw_shots(run_exact(rho, spec), shots, rng, transcript);
}

Verdict verdict_from_circuit(const DensityMatrix& rho, const NetworkSpec& spec) {
  const double sz = run_exact(rho, spec);
  Verdict v{};
  v.det_value = (23.0 * sz + 1.0) / 24.0;
  v.criterion = Criterion::PptDet;
  v.decision = v.det_value < -kDetTol ? Decision::Entangled : Decision::Separable;
  const Spectrum s = herm_eig(partial_transpose(rho.matrix, 2, 2));
  v.witness_eigenvalue = s.eigenvalues.minCoeff();
  return v;
}

ShotVerdict verdict_from_shots(const DensityMatrix& rho, const NetworkSpec& spec,
                               long shots, Rng& rng, std::vector<int>* transcript) {
  const double exact = run_exact(rho, spec);
  ShotVerdict v{};
  v.exact_sigma_z = exact;
  const ShotResult r = draw_shots(exact, shots, rng, transcript);
  v.estimate = r.estimate;
  v.stderr_value = r.stderr_value;
  v.shots = r.shots;
  v.decision = r.estimate < kCircuitThreshold ? Decision::Entangled : Decision::Separable;
  v.margin_sigmas = r.stderr_value > 0.0
                        ? (kCircuitThreshold - r.estimate) / r.stderr_value
                        : (r.estimate < kCircuitThreshold ? HUGE_VAL : -HUGE_VAL);
  return v;
}

}  // namespace qdet
