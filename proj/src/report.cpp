#include "qdet/report.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "qdet/witness.hpp"

namespace qdet {

std::string format_double(double x) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

RunReport make_run_report(const DensityMatrix& rho,
                          const std::string& input_digest, std::uint64_t seed) {
  static const WitnessOperator w4 = build_w4();

  RunReport r{};
  r.input_digest = input_digest;
  r.verdict = det_ppt_test(rho);
  r.measures = bound_report(rho);
  r.witness_value = witness_expectation(w4, rho);
  r.circuit_sigma_z = run_exact(rho, NetworkSpec::standard());
  r.seed = seed;
  r.tool_version = kToolVersion;
  if (std::abs(r.witness_value - r.verdict.det_value) > 1e-10) {
    throw std::runtime_error("run report: witness mean and determinant disagree by " +
                             format_double(r.witness_value - r.verdict.det_value));
  }
  const double circuit_det = (23.0 * r.circuit_sigma_z + 1.0) / 24.0;
  if (std::abs(circuit_det - r.verdict.det_value) > 1e-9) {
    throw std::runtime_error("run report: network and determinant routes disagree by " +
                             format_double(circuit_det - r.verdict.det_value));
  }
  return r;
}

std::string report_to_json(const RunReport& r) {
  nlohmann::json j;
  j["input_digest"] = r.input_digest;
  j["tool_version"] = r.tool_version;
  j["seed"] = r.seed;
  j["verdict"] = {{"decision", to_string(r.verdict.decision)},
                  {"criterion", to_string(r.verdict.criterion)},
                  {"det_value", r.verdict.det_value},
                  {"witness_eigenvalue", r.verdict.witness_eigenvalue}};
  j["measures"] = {{"negativity", r.measures.negativity},
                   {"concurrence", r.measures.concurrence},
                   {"pi2", r.measures.pi2},
                   {"lower_bound_eq6", r.measures.lower_bound_eq6},
                   {"upper_bound_fig1", r.measures.upper_bound_fig1}};
  j["witness_value"] = r.witness_value;
  j["circuit_sigma_z"] = r.circuit_sigma_z;
  return j.dump(1);
}

std::string report_to_csv(const RunReport& r) {
  std::string out =
      "input_digest,decision,criterion,det_value,witness_eigenvalue,"
      "negativity,concurrence,pi2,lower_bound_eq6,upper_bound_fig1,"
      "witness_value,circuit_sigma_z,seed,tool_version\n";
  out += r.input_digest;
  out += ',';
  out += to_string(r.verdict.decision);
  out += ',';
  out += to_string(r.verdict.criterion);
  for (double v : {r.verdict.det_value, r.verdict.witness_eigenvalue,
                   r.measures.negativity, r.measures.concurrence, r.measures.pi2,
                   r.measures.lower_bound_eq6, r.measures.upper_bound_fig1,
                   r.witness_value, r.circuit_sigma_z}) {
    out += ',';
    out += format_double(v);
  }
  out += ',' + std::to_string(r.seed) + ',' + r.tool_version + '\n';
  return out;
}

void write_fig1_csv(std::ostream& out, long samples, std::uint64_t seed,
                    bool append_bell_fixture) {
  out << "negativity,concurrence,pi2,bound_eq6_N,bound_half_Nplus1\n";
  const Rng base(seed);
  for (long i = 0; i < samples; ++i) {
    Rng stream = base.split(static_cast<std::uint64_t>(i));
    const DensityMatrix rho = random_density({2, 2}, 0, stream);
    const MeasureReport m = bound_report(rho);
    out << format_double(m.negativity) << ',' << format_double(m.concurrence)
        << ',' << format_double(m.pi2) << ',' << format_double(m.lower_bound_eq6)
        << ',' << format_double(m.upper_bound_fig1) << '\n';
  }
  if (append_bell_fixture) {
    const MeasureReport m = bound_report(bell_state());
    out << format_double(m.negativity) << ',' << format_double(m.concurrence)
        << ',' << format_double(m.pi2) << ',' << format_double(m.lower_bound_eq6)
        << ',' << format_double(m.upper_bound_fig1) << '\n';
  }
}

}  // namespace qdet
