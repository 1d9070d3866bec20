#include "qdet/state_io.hpp"

#include <cstdio>
#include <fstream>

#include <doctest.h>

#include "test_helpers.hpp"

using namespace qdet;

TEST_CASE("state files round-trip") {
  Rng rng(81);
  const DensityMatrix rho = random_density({2, 2}, 0, rng);
  const std::string path = "state_roundtrip_test.json";
  write_state_json(rho, path);
  const DensityMatrix back = read_state_json(path);
  CHECK(back.dims == rho.dims);
  CHECK(test::max_abs_diff(back.matrix, rho.matrix) <= 1e-15);
  std::remove(path.c_str());
}

TEST_CASE("the schema is the documented dims/matrix layout") {
  // Maximally mixed two-qubit state spelled out by hand.
  std::string text = R"({"dims": [2, 2], "matrix": [)";
  for (int i = 0; i < 4; ++i) {
    text += i ? ",[" : "[";
    for (int j = 0; j < 4; ++j) {
      text += j ? "," : "";
      text += (i == j) ? "[0.25, 0.0]" : "[0.0, 0.0]";
    }
    text += "]";
  }
  text += "]}";
  const DensityMatrix rho = state_from_json_text(text);
  CHECK(rho.dims == std::vector<int>{2, 2});
  CHECK(test::max_abs_diff(rho.matrix, identity(4) / 4.0) == 0.0);
}

TEST_CASE("parse errors and invariant violations are reported by name") {
  CHECK_THROWS_WITH_AS(state_from_json_text("not json"),
                       doctest::Contains("parse error"), StateValidationError);

  CHECK_THROWS_WITH_AS(state_from_json_text(R"({"matrix": []})"),
                       doctest::Contains("dims"), StateValidationError);

  // Wrong trace.
  try {
    state_from_json_text(
        R"({"dims":[2,1],"matrix":[[[1.0,0.0],[0.0,0.0]],[[0.0,0.0],[1.0,0.0]]]})");
    FAIL("expected StateValidationError");
  } catch (const StateValidationError& e) {
    REQUIRE(e.violations().size() == 1);
    CHECK(e.violations()[0].find("trace") != std::string::npos);
  }

  // Non-PSD matrix names the violated invariant.
  try {
    state_from_json_text(
        R"({"dims":[2,1],"matrix":[[[1.5,0.0],[0.0,0.0]],[[0.0,0.0],[-0.5,0.0]]]})");
    FAIL("expected StateValidationError");
  } catch (const StateValidationError& e) {
    REQUIRE(e.violations().size() == 1);
    CHECK(e.violations()[0].find("positive semidefinite") != std::string::npos);
  }

  // Several violations surface together.
  try {
    state_from_json_text(
        R"({"dims":[2,1],"matrix":[[[1.5,0.0],[1.0,0.0]],[[0.0,0.0],[1.0,0.0]]]})");
    FAIL("expected StateValidationError");
  } catch (const StateValidationError& e) {
    CHECK(e.violations().size() >= 2);
  }

  CHECK_THROWS_AS(read_state_json("no_such_file_anywhere.json"), StateValidationError);
}
