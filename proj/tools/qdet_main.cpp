// Command-line front end: separability verdicts on state files, the Fig-1
// style dataset, the Monte-Carlo verification suites, the measurement
// network, and the witness dump.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qdet/circuit.hpp"
#include "qdet/report.hpp"
#include "qdet/state_io.hpp"
#include "qdet/verify.hpp"
#include "qdet/witness.hpp"

namespace {

constexpr int kExitSeparable = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInvalidInput = 2;
constexpr int kExitEntangled = 3;

struct LoadedState {
  qdet::DensityMatrix rho;
  std::string digest;
};

LoadedState load_state(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw qdet::StateValidationError({"cannot open file: " + path});
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string bytes = buf.str();
  return LoadedState{qdet::state_from_json_text(bytes), qdet::fnv1a_hex(bytes)};
}

int cmd_verdict(const std::string& path, bool as_csv, std::uint64_t seed) {
  LoadedState input = [&] {
    try {
      return load_state(path);
    } catch (const qdet::StateValidationError& e) {
      std::cerr << "invalid input:\n";
      for (const std::string& v : e.violations()) std::cerr << "  - " << v << "\n";
      std::exit(kExitInvalidInput);
    }
  }();
  if (!input.rho.is_two_qubit()) {
    std::cerr << "invalid input:\n  - verdict requires a two-qubit state (dims [2,2])\n";
    return kExitInvalidInput;
  }
  const qdet::RunReport report = qdet::make_run_report(input.rho, input.digest, seed);
  std::cout << (as_csv ? qdet::report_to_csv(report)
                       : qdet::report_to_json(report) + "\n");
  return report.verdict.decision == qdet::Decision::Entangled ? kExitEntangled
                                                              : kExitSeparable;
}

int cmd_fig1(long samples, std::uint64_t seed, const std::string& out_path,
             bool append_bell) {
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "cannot write: " << out_path << "\n";
    return kExitInvalidInput;
  }
  qdet::write_fig1_csv(out, samples, seed, append_bell);
  return out ? kExitSeparable : kExitInvalidInput;
}

int cmd_verify(const std::string& suite, long samples, std::uint64_t seed) {
  const auto results = qdet::run_suites(suite, samples, seed);
  bool all_passed = true;
  for (const qdet::SuiteResult& r : results) {
    std::cout << "suite " << r.name << ":\n";
    for (const std::string& line : r.lines) std::cout << line << "\n";
    std::cout << "suite " << r.name << ": " << (r.passed ? "PASS" : "FAIL")
              << " (max violation " << qdet::format_double(r.max_violation)
              << ")\n";
    all_passed = all_passed && r.passed;
  }
  return all_passed ? kExitSeparable : kExitFailure;
}

int cmd_circuit(const std::string& path, long shots, std::uint64_t seed,
                const std::string& transcript_path) {
  LoadedState input = [&] {
    try {
      return load_state(path);
    } catch (const qdet::StateValidationError& e) {
      std::cerr << "invalid input:\n";
      for (const std::string& v : e.violations()) std::cerr << "  - " << v << "\n";
      std::exit(kExitInvalidInput);
    }
  }();
  if (!input.rho.is_two_qubit()) {
    std::cerr << "invalid input:\n  - the network takes a two-qubit state (dims [2,2])\n";
    return kExitInvalidInput;
  }

  const qdet::NetworkSpec spec = qdet::NetworkSpec::standard();
  std::cout << "threshold:        " << qdet::format_double(qdet::kCircuitThreshold)
            << " (-1/23)\n";
  qdet::Decision decision;
  if (shots > 0) {
    qdet::Rng rng(seed);
    std::vector<int> transcript;
    const qdet::ShotVerdict v = qdet::verdict_from_shots(
        input.rho, spec, shots, rng,
        transcript_path.empty() ? nullptr : &transcript);
    std::cout << "exact <sigma_z>:  " << qdet::format_double(v.exact_sigma_z) << "\n"
              << "shot estimate:    " << qdet::format_double(v.estimate) << " +- "
              << qdet::format_double(v.stderr_value) << " (" << v.shots << " shots)\n"
              << "margin:           " << qdet::format_double(v.margin_sigmas)
              << " standard errors past the threshold\n"
              << "decision:         " << qdet::to_string(v.decision) << "\n";
    decision = v.decision;
    if (!transcript_path.empty()) {
      std::ofstream out(transcript_path, std::ios::binary);
      if (!out) {
        std::cerr << "cannot write: " << transcript_path << "\n";
        return kExitInvalidInput;
      }
      out << "shot_index,outcome\n";
      for (size_t i = 0; i < transcript.size(); ++i)
        out << i << ',' << transcript[i] << '\n';
    }
  } else {
    const qdet::Verdict v = qdet::verdict_from_circuit(input.rho, spec);
    const double sz = (24.0 * v.det_value - 1.0) / 23.0;
    std::cout << "exact <sigma_z>:  " << qdet::format_double(sz) << "\n"
              << "implied det:      " << qdet::format_double(v.det_value) << "\n"
              << "decision:         " << qdet::to_string(v.decision) << "\n";
    decision = v.decision;
  }
  return decision == qdet::Decision::Entangled ? kExitEntangled : kExitSeparable;
}

int cmd_dump_w4(const std::string& out_path) {
  qdet::write_w4_dump(qdet::build_w4(), out_path);
  std::cout << "wrote 256x256 witness to " << out_path << "\n";
  return kExitSeparable;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"determinant-based two-qubit entanglement tests"};
  app.require_subcommand(1);

  std::string state_path, out_path, transcript_path, suite = "all";
  std::uint64_t seed = 0;
  long samples = 0, shots = 0;
  bool as_csv = false, as_json = false, append_bell = false;

  CLI::App* verdict = app.add_subcommand(
      "verdict", "full entanglement report for a state file (exit 3 = entangled)");
  verdict->add_option("state", state_path, "state JSON file")->required();
  verdict->add_flag("--csv", as_csv, "emit CSV instead of JSON");
  verdict->add_flag("--json", as_json, "emit JSON (default)");
  verdict->add_option("--seed", seed, "seed recorded in the report");

  CLI::App* fig1 = app.add_subcommand(
      "fig1", "sample random states and emit the measure/bound dataset");
  fig1->add_option("--samples", samples, "number of sampled states")
      ->required()
      ->check(CLI::PositiveNumber);
  fig1->add_option("--seed", seed, "RNG seed")->required();
  fig1->add_option("--out", out_path, "output CSV path")->required();
  fig1->add_flag("--append-bell", append_bell, "append the Bell fixture row");

  CLI::App* verify = app.add_subcommand(
      "verify", "run the Monte-Carlo verification suites");
  verify->add_option("--suite", suite, "witness|prop1|prop2|circuit|bounds|all");
  verify->add_option("--samples", samples, "sample count (0 = per-suite default)");
  verify->add_option("--seed", seed, "RNG seed")->required();

  CLI::App* circuit = app.add_subcommand(
      "circuit", "run the single-measurement network on a state file");
  circuit->add_option("--state", state_path, "state JSON file")->required();
  circuit->add_option("--shots", shots, "measurement shots (0 = exact only)");
  circuit->add_option("--seed", seed, "RNG seed (required with --shots)");
  circuit->add_option("--transcript", transcript_path, "write per-shot CSV here");

  CLI::App* dump = app.add_subcommand("dump-w4", "write the witness binary dump");
  dump->add_option("--out", out_path, "output path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (verdict->parsed()) return cmd_verdict(state_path, as_csv && !as_json, seed);
    if (fig1->parsed()) return cmd_fig1(samples, seed, out_path, append_bell);
    if (verify->parsed()) return cmd_verify(suite, samples, seed);
    if (circuit->parsed()) {
      if (shots > 0 && circuit->count("--seed") == 0) {
        std::cerr << "--seed is required when --shots is given\n";
        return kExitInvalidInput;
      }
      return cmd_circuit(state_path, shots, seed, transcript_path);
    }
    if (dump->parsed()) return cmd_dump_w4(out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitSeparable;
}
