#include "tnn/solver.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace tnn {

std::string_view to_string(Regularizer r) {
  switch (r) {
    case Regularizer::ttnn: return "ttnn";
    case Regularizer::gtnn: return "gtnn";
    case Regularizer::mnn3: return "mnn3";
  }
  return "?";
}

Regularizer parse_regularizer(std::string_view s) {
  if (s == "ttnn") return Regularizer::ttnn;
  if (s == "gtnn") return Regularizer::gtnn;
  if (s == "mnn3") return Regularizer::mnn3;
  throw std::invalid_argument("unknown regularizer '" + std::string(s) + "'");
}

void AdmmConfig::validate() const {
  if (!(rho0 > 0.0) || !std::isfinite(rho0)) throw std::invalid_argument("rho0 must be positive");
  if (!(eta > 1.0) || !std::isfinite(eta)) throw std::invalid_argument("eta must exceed 1");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (max_iters < 1) throw std::invalid_argument("max_iters must be at least 1");
  if (!(rho_max >= rho0)) throw std::invalid_argument("rho_max must be at least rho0");
}

void SolveReport::write_csv(std::ostream& os) const {
  os << "iteration,residual,rho\n";
  os << std::setprecision(17);
  for (std::size_t k = 0; k < residual_history.size(); ++k) {
    os << (k + 1) << ',' << residual_history[k] << ',' << rho_history[k] << '\n';
  }
}

std::string SolveReport::summary() const {
  std::ostringstream os;
  os << std::setprecision(6) << "iterations=" << iterations
     << " residual=" << (residual_history.empty() ? 0.0 : residual_history.back()) << " final_rho=" << final_rho
     << " converged=" << (converged ? "true" : "false") << " regularizer=" << to_string(config.regularizer)
     << " prox_scaling=" << to_string(config.prox_scaling) << " rho0=" << config.rho0 << " eta=" << config.eta
     << " tol=" << config.tol << " max_iters=" << config.max_iters;
  return os.str();
}

Tensor3 y_update(const Tensor3& z, double rho, Regularizer reg, FourierScale scaling, SpectrumMode spectrum) {
  if (!(rho > 0.0)) throw std::invalid_argument("y_update: rho must be positive");
  const ProxParams p{1.0 / rho, scaling, spectrum};
  switch (reg) {
    case Regularizer::ttnn: return squeeze(tsvc(twist(z), p));
    case Regularizer::gtnn: return tsvc(z, p);
    case Regularizer::mnn3: return mode_fold(svt(mode_unfold(z, 3), p.tau), 3, z.dims());
  }
  throw std::invalid_argument("unknown regularizer");
}

double regularizer_value(const Tensor3& t, Regularizer reg) {
  switch (reg) {
    case Regularizer::ttnn: return ttnn(t);
    case Regularizer::gtnn: return gtnn(t);
    case Regularizer::mnn3: return mnn_mode3(t);
  }
  throw std::invalid_argument("unknown regularizer");
}

SolveResult complete(const Tensor3& observed, const Mask3& omega, const AdmmConfig& cfg, const SolveOptions& opts) {
  cfg.validate();
  require_same_dims(observed.dims(), omega.dims(), "complete");
  if (omega.observed_count() == 0) throw std::invalid_argument("complete: mask has no observed entries");
  for (double v : observed.data()) {
    if (!std::isfinite(v)) throw NumericalError("complete: non-finite observation");
  }

  const Tensor3 known = project(observed, omega);
  const auto bits = omega.bits();

  Tensor3 x = known;
  Tensor3 y(observed.dims());
  Tensor3 w(observed.dims());
  double rho = cfg.rho0;

  SolveReport report;
  report.config = cfg;
  double first_residual = -1.0;

  for (int k = 0; k < cfg.max_iters; ++k) {
    // X-update: observed entries pinned, the rest take Y - W / rho.
    {
      auto xd = x.data();
      const std::span<const double> kd = known.data(), yd = std::as_const(y).data(), wd = std::as_const(w).data();
      for (std::size_t n = 0; n < xd.size(); ++n) xd[n] = bits[n] ? kd[n] : yd[n] - wd[n] / rho;
    }

    Tensor3 z = x;
    {
      auto zd = z.data();
      const auto wd = std::as_const(w).data();
      for (std::size_t n = 0; n < zd.size(); ++n) zd[n] += wd[n] / rho;
    }
    y = y_update(z, rho, cfg.regularizer, cfg.prox_scaling, cfg.spectrum);

    const Tensor3 gap = x - y;
    {
      auto wd = w.data();
      const auto gd = gap.data();
      for (std::size_t n = 0; n < wd.size(); ++n) wd[n] += rho * gd[n];
    }

    const double xnorm = fro_norm(x);
    const double gnorm = fro_norm(gap);
    const double residual = xnorm > 0.0 ? gnorm / xnorm : gnorm;
    if (!std::isfinite(residual)) throw NumericalError("complete: non-finite residual at iteration " + std::to_string(k + 1));

    report.residual_history.push_back(residual);
    report.rho_history.push_back(rho);
    if (opts.record_objective) report.objective_history.push_back(regularizer_value(x, cfg.regularizer));
    report.iterations = k + 1;

    if (first_residual < 0.0) first_residual = residual;
    if (first_residual > 0.0 && residual > cfg.divergence_factor * first_residual) {
      throw NumericalError("complete: diverged at iteration " + std::to_string(k + 1) + " (residual " +
                           std::to_string(residual) + ", initial " + std::to_string(first_residual) + ")");
    }

    rho = std::min(cfg.eta * rho, cfg.rho_max);
    if (residual <= cfg.tol) {
      report.converged = true;
      break;
    }
  }
  report.final_rho = report.rho_history.back();
  return {std::move(x), std::move(report)};
}

}  // namespace tnn
