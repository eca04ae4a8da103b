#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "tnn/norms.hpp"
#include "tnn/tensor.hpp"

namespace tnn {

enum class Regularizer { ttnn, gtnn, mnn3 };

std::string_view to_string(Regularizer r);
Regularizer parse_regularizer(std::string_view s);

struct AdmmConfig {
  double rho0 = 1e-3;
  double eta = 1.1;
  double tol = 1e-4;
  int max_iters = 200;
  /// Penalty growth stops here.
  double rho_max = 1e10;
  Regularizer regularizer = Regularizer::ttnn;
  FourierScale prox_scaling = kDefaultFourierScale;
  SpectrumMode spectrum = SpectrumMode::half;
  std::uint64_t seed = 0;
  /// Abort once the residual exceeds this multiple of its first value.
  double divergence_factor = 1e6;

  /// Throws std::invalid_argument unless rho0 > 0, eta > 1, tol > 0, max_iters >= 1.
  void validate() const;
};

struct SolveReport {
  int iterations = 0;
  std::vector<double> residual_history;  // ||X - Y||_F / ||X||_F after each iteration
  std::vector<double> rho_history;       // rho used in each iteration
  std::vector<double> objective_history; // regularizer value of X (only when requested)
  double final_rho = 0.0;
  bool converged = false;
  AdmmConfig config;

  /// CSV with header `iteration,residual,rho`, one row per iteration.
  void write_csv(std::ostream& os) const;
  std::string summary() const;
};

struct SolveResult {
  Tensor3 x;
  SolveReport report;
};

struct SolveOptions {
  bool record_objective = false;
};

/// Proximal step for the chosen regularizer at threshold tau = 1/rho:
/// argmin_Y R(Y) + (rho/2) ||Y - z||_F^2.
///   ttnn: squeeze(tsvc(twist(z)))
///   gtnn: tsvc(z)
///   mnn3: SVT of the mode-3 unfolding, refolded
Tensor3 y_update(const Tensor3& z, double rho, Regularizer reg, FourierScale scaling,
                 SpectrumMode spectrum = SpectrumMode::half);

/// Value of the chosen regularizer.
double regularizer_value(const Tensor3& t, Regularizer reg);

/// Completes `observed` on the entries where `omega` is true using ADMM with
/// a geometric penalty schedule. The returned tensor agrees with `observed`
/// on omega exactly.
SolveResult complete(const Tensor3& observed, const Mask3& omega, const AdmmConfig& cfg,
                     const SolveOptions& opts = {});

}  // namespace tnn
