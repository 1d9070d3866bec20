#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include "qdet/circuit.hpp"
#include "qdet/criteria.hpp"
#include "qdet/measures.hpp"

namespace qdet {

inline constexpr const char* kToolVersion = "qdet 1.0.0";

// Everything the verdict command reports for one input state: the
// determinant verdict plus the measure chain, the witness mean and the
// network's control-qubit expectation. The three entanglement routes agree
// by construction and are cross-checked on build.
struct RunReport {
  std::string input_digest;
  Verdict verdict;
  MeasureReport measures;
  double witness_value;
  double circuit_sigma_z;
  std::uint64_t seed;
  std::string tool_version;
};

RunReport make_run_report(const DensityMatrix& rho,
                          const std::string& input_digest, std::uint64_t seed);

std::string report_to_json(const RunReport& r);
std::string report_to_csv(const RunReport& r);  // header line + one data row

std::string fnv1a_hex(const std::string& bytes);

// Shortest round-trip decimal form of a double.
std::string format_double(double x);

// Fig-1 style dataset: one row per sampled state with header
// negativity,concurrence,pi2,bound_eq6_N,bound_half_Nplus1.
void write_fig1_csv(std::ostream& out, long samples, std::uint64_t seed,
                    bool append_bell_fixture);

}  // namespace qdet
