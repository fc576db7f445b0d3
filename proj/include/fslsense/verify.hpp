#pragma once

// Invariant suite shared by the `verify` command and the tests.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fslsense {

struct CheckResult {
  std::string name;
  bool pass;
  double measured;   // worst deviation observed
  double tolerance;
  std::string detail;
};

struct VerifyOptions {
  long n = 50;               // sector size for the dense checks
  int random_points = 20;
  int winding_triples = 1000;
  int ksamples = 256;
  std::uint64_t seed = 20240611;
  /// Replaces the relative tolerance of the agreement and symmetry checks.
  std::optional<double> tol;
  int jobs = 1;
};

std::vector<CheckResult> run_invariant_suite(const VerifyOptions& options = {});

}  // namespace fslsense
