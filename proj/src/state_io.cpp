#include "qdet/state_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qdet {

namespace {

std::string join(const std::vector<std::string>& parts) {
  std::ostringstream os;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) os << "; ";
    os << parts[i];
  }
  return os.str();
}

}  // namespace

StateValidationError::StateValidationError(std::vector<std::string> violations)
    : std::runtime_error("invalid state file: " + join(violations)),
      violations_(std::move(violations)) {}

std::string state_to_json_text(const DensityMatrix& rho) {
  nlohmann::json j;
  j["dims"] = rho.dims;
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < rho.dim(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int k = 0; k < rho.dim(); ++k) {
      row.push_back({rho.matrix(i, k).real(), rho.matrix(i, k).imag()});
    }
    rows.push_back(std::move(row));
  }
  j["matrix"] = std::move(rows);
  return j.dump(1);
}

DensityMatrix state_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw StateValidationError({std::string("JSON parse error: ") + e.what()});
  }

  std::vector<std::string> problems;
  std::vector<int> dims;
  CMat m;
  try {
    if (!j.is_object() || !j.contains("dims") || !j.contains("matrix")) {
      throw StateValidationError({"expected an object with \"dims\" and \"matrix\" keys"});
    }
    dims = j.at("dims").get<std::vector<int>>();
    const auto& rows = j.at("matrix");
    const size_t n = rows.size();
    m = CMat::Zero(n, n);
    for (size_t i = 0; i < n; ++i) {
      const auto& row = rows.at(i);
      if (row.size() != n) {
        throw StateValidationError({"matrix row " + std::to_string(i) + " has " +
                                    std::to_string(row.size()) + " entries, expected " +
                                    std::to_string(n)});
      }
      for (size_t k = 0; k < n; ++k) {
        const auto& entry = row.at(k);
        if (!entry.is_array() || entry.size() != 2) {
          throw StateValidationError({"matrix entries must be [re, im] pairs"});
        }
        m(i, k) = Complex(entry.at(0).get<double>(), entry.at(1).get<double>());
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw StateValidationError({std::string("malformed state file: ") + e.what()});
  }

  problems = check_density_invariants(m, dims);
  if (!problems.empty()) throw StateValidationError(std::move(problems));
  return DensityMatrix(std::move(m), std::move(dims));
}

DensityMatrix read_state_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StateValidationError({"cannot open file: " + path});
  std::ostringstream buf;
  buf << in.rdbuf();
  return state_from_json_text(buf.str());
}

void write_state_json(const DensityMatrix& rho, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << state_to_json_text(rho) << "\n";
}

}  // namespace qdet
