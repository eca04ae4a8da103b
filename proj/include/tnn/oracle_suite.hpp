#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "tnn/circulant.hpp"
#include "tnn/norms.hpp"

namespace tnn {

enum class Verdict { pass, fail, skipped };

struct OracleCheck {
  std::string name;
  double max_error = 0.0;
  double tolerance = 0.0;
  Verdict verdict = Verdict::skipped;
  std::string detail;
};

/// Outcome of checking both Fourier threshold conventions against the
/// proximal objective tau * ttnn(Y) + 1/2 ||Y - Z||_F^2 by random perturbation.
struct ProxArbitration {
  int instances = 0;         // (tensor, tau) pairs per mode
  int paper_failures = 0;    // instances where some perturbation improved the objective
  int parseval_failures = 0;
  double paper_worst_margin = 0.0;    // min over perturbations of relative objective change
  double parseval_worst_margin = 0.0;
  bool decided = false;               // exactly one mode had zero failures
  FourierScale winner = kDefaultFourierScale;
};

struct ArbitrationOptions {
  std::uint64_t seed = 2024;
  int tensors = 10;
  std::vector<double> taus{0.1, 0.5, 2.0};
  int perturbations = 1000;
  double relative_size = 1e-2;
  double margin_tolerance = 1e-10;
  Dims dims{4, 5, 3};
};

ProxArbitration arbitrate_prox_scaling(const ArbitrationOptions& opts = {});

struct OracleOptions {
  OracleBudget budget;
  std::uint64_t seed = 7;
  /// Flips the sign of one entry in the t-product fixture; the suite must then fail.
  bool corrupt_fixture = false;
};

struct OracleReport {
  std::vector<OracleCheck> checks;
  ProxArbitration arbitration;

  bool all_passed() const;
  void print(std::ostream& os) const;
};

/// Runs every dense and spectral identity check on seeded tensors. Checks
/// that need a materialized circulant matrix larger than the budget report
/// SKIPPED.
OracleReport run_oracle_suite(const OracleOptions& opts = {});

}  // namespace tnn
