#include "tnn/norms.hpp"

#include <complex>

#include "tnn/circulant.hpp"
#include "tnn/fourier.hpp"

namespace tnn {

namespace {

using Complex = std::complex<double>;

double shrink_factor(double sigma, double threshold) {
  if (sigma <= 0.0) return 0.0;
  const double f = 1.0 - threshold / sigma;
  return f > 0.0 ? f : 0.0;
}

}  // namespace

double gtnn(const Tensor3& t) {
  double total = 0.0;
  for (const auto& s : fourier_singular_values(fft_mode3(t), SpectrumMode::half)) total += s.sum();
  return total;
}

double ttnn(const Tensor3& t) { return gtnn(twist(t)); }

double nuclear_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().sum();
}

double mnn_mode3(const Tensor3& t) { return nuclear_norm(mode_unfold(t, 3)); }

Matrix svt(const Matrix& m, double tau) {
  if (tau < 0.0) throw std::invalid_argument("svt: tau must be nonnegative");
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd shrunk = (svd.singularValues().array() - tau).cwiseMax(0.0).matrix();
  return svd.matrixU() * shrunk.asDiagonal() * svd.matrixV().transpose();
}

std::string_view to_string(FourierScale s) {
  return s == FourierScale::paper_literal ? "paper" : "parseval";
}

FourierScale parse_fourier_scale(std::string_view s) {
  if (s == "paper" || s == "paper_literal") return FourierScale::paper_literal;
  if (s == "parseval" || s == "parseval_scaled") return FourierScale::parseval_scaled;
  throw std::invalid_argument("unknown prox scaling '" + std::string(s) + "'");
}

double effective_threshold(const ProxParams& p, std::size_t n3) {
  return p.fourier_scale == FourierScale::parseval_scaled ? static_cast<double>(n3) * p.tau : p.tau;
}

Tensor3 tsvc(const Tensor3& z, const ProxParams& p) {
  if (!(p.tau > 0.0)) throw std::invalid_argument("tsvc: tau must be positive");
  const Dims d = z.dims();
  const double threshold = effective_threshold(p, d.n3);
  FourierStack zf = fft_mode3(z);
  const std::size_t count = p.spectrum == SpectrumMode::half ? zf.half_count() : d.n3;
  constexpr unsigned kThin = Eigen::ComputeThinU | Eigen::ComputeThinV;
  for (std::size_t k = 0; k < count; ++k) {
    if (zf.partner(k) == k) {
      Eigen::JacobiSVD<Matrix> svd(zf.slices[k].real(), kThin);
      if (svd.info() != Eigen::Success) throw SliceSvdError(k, "decomposition did not converge");
      Eigen::VectorXd w = svd.singularValues();
      for (Eigen::Index i = 0; i < w.size(); ++i) w(i) *= shrink_factor(w(i), threshold);
      zf.slices[k] = (svd.matrixU() * w.asDiagonal() * svd.matrixV().transpose()).cast<Complex>();
    } else {
      auto svd = decompose_slice(zf.slices[k], k, kThin);
      Eigen::VectorXd w = svd.singularValues();
      for (Eigen::Index i = 0; i < w.size(); ++i) w(i) *= shrink_factor(w(i), threshold);
      zf.slices[k] = svd.matrixU() * w.asDiagonal() * svd.matrixV().adjoint();
    }
  }
  if (p.spectrum == SpectrumMode::half) zf.mirror_upper_half();
  return ifft_mode3(zf);
}

TsvcFactors tsvc_factors(const Tensor3& z, const ProxParams& p) {
  if (!(p.tau > 0.0)) throw std::invalid_argument("tsvc: tau must be positive");
  const Dims d = z.dims();
  const double threshold = effective_threshold(p, d.n3);
  TsvcFactors out{tsvd(z, p.spectrum), Tensor3{}, Tensor3{}};
  const FourierStack sf = fft_mode3(out.z.s);
  FourierStack jf(Dims{d.n2, d.n2, d.n3});
  for (std::size_t k = 0; k < d.n3; ++k) {
    const std::size_t r = std::min(d.n1, d.n2);
    for (std::size_t i = 0; i < r; ++i) jf.slices[k](i, i) = shrink_factor(sf.slices[k](i, i).real(), threshold);
  }
  out.j = ifft_mode3(jf);
  out.shrunk = t_product(out.z.s, out.j);
  return out;
}

double gtnn_prox_objective(const Tensor3& y, const Tensor3& z, double tau) {
  const double r = fro_norm(y - z);
  return tau * gtnn(y) + 0.5 * r * r;
}

double ttnn_prox_objective(const Tensor3& y, const Tensor3& z, double tau) {
  const double r = fro_norm(y - z);
  return tau * ttnn(y) + 0.5 * r * r;
}

}  // namespace tnn
