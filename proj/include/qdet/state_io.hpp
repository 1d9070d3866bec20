#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "qdet/states.hpp"

namespace qdet {

// Raised when a state file parses but fails validation; carries one message
// per violated invariant.
class StateValidationError : public std::runtime_error {
 public:
  explicit StateValidationError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

// State file format: JSON object
//   {"dims": [dA, dB], "matrix": [[[re, im], ...], ...]}
// with the matrix given row-major as [re, im] pairs.
DensityMatrix read_state_json(const std::string& path);
void write_state_json(const DensityMatrix& rho, const std::string& path);

std::string state_to_json_text(const DensityMatrix& rho);
DensityMatrix state_from_json_text(const std::string& text);

}  // namespace qdet
