#pragma once

#include <filesystem>
#include <iosfwd>
#include <string_view>

#include "tnn/circulant.hpp"
#include "tnn/solver.hpp"

namespace tnn {

/// Solver settings plus the oracle budget, as read from a flat config file.
struct RunConfig {
  AdmmConfig admm;
  OracleBudget budget;
};

/// Sets one key. Recognized keys: rho0, eta, tol, max_iters, rho_max,
/// regularizer, prox_scaling, spectrum (full|half), seed, budget.
/// Throws std::invalid_argument for unknown keys or malformed values.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);

/// `key = value` per line; blank lines and lines starting with '#' are ignored.
void read_config(std::istream& is, RunConfig& cfg);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace tnn
