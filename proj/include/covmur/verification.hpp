#pragma once

// Self-check harness run by `covmur verify`: every property check reports
// its tolerance and the worst residual it measured.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "covmur/io.hpp"
#include "covmur/random.hpp"

namespace covmur {

struct VerificationCheck {
  std::string module;
  std::string name;
  double tolerance = 0.0;
  double measured = 0.0;
  bool passed = false;
};

struct VerificationReport {
  std::vector<VerificationCheck> checks;

  bool passed() const;
  Json to_json() const;
};

struct VerificationOptions {
  // "all" or one of verification_scopes()
  std::string scope = "all";
  std::uint64_t seed = kDefaultSeed;
  // Replaces the closed-form lower boundary d_b(n, d_a) in the fourier
  // checks; used to confirm that a broken formula is caught.
  std::function<double(int, double)> dual_boundary_override;
};

const std::vector<std::string>& verification_scopes();

// Throws Domain for an unknown scope.
VerificationReport run_verification_suite(const VerificationOptions& options = {});

}  // namespace covmur
