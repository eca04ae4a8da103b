#include "tnn/tsvd.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "tnn/circulant.hpp"

namespace tnn {

namespace {

using Complex = std::complex<double>;

bool self_conjugate(const FourierStack& f, std::size_t k) { return f.partner(k) == k; }

template <typename Svd>
void check_svd(const Svd& svd, std::size_t slice) {
  if (svd.info() != Eigen::Success) throw SliceSvdError(slice, "decomposition did not converge");
  if (!svd.singularValues().allFinite()) throw SliceSvdError(slice, "non-finite singular values");
}

// Self-conjugate slices (DC, and Nyquist for even n3) are real for real input;
// a real SVD keeps their factors exactly real.
struct SliceFactors {
  CMatrix u;
  Eigen::VectorXd sigma;
  CMatrix v;
};

SliceFactors factor_slice(const FourierStack& f, std::size_t k) {
  constexpr unsigned kFull = Eigen::ComputeFullU | Eigen::ComputeFullV;
  if (self_conjugate(f, k)) {
    Eigen::JacobiSVD<Matrix> svd(f.slices[k].real(), kFull);
    check_svd(svd, k);
    return {svd.matrixU().cast<Complex>(), svd.singularValues(), svd.matrixV().cast<Complex>()};
  }
  auto svd = decompose_slice(f.slices[k], k, kFull);
  return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

std::size_t slices_to_decompose(const FourierStack& f, SpectrumMode mode) {
  return mode == SpectrumMode::half ? f.half_count() : f.dims.n3;
}

}  // namespace

Eigen::JacobiSVD<CMatrix> decompose_slice(const CMatrix& m, std::size_t slice, unsigned options) {
  if (!m.allFinite()) throw SliceSvdError(slice, "non-finite input");
  Eigen::JacobiSVD<CMatrix> svd(m, options);
  check_svd(svd, slice);
  return svd;
}

FourierSvd fourier_svd(const FourierStack& f, SpectrumMode mode) {
  const std::size_t n3 = f.dims.n3;
  FourierSvd out;
  out.dims = f.dims;
  out.u.resize(n3);
  out.sigma.resize(n3);
  out.v.resize(n3);
  const std::size_t count = slices_to_decompose(f, mode);
  for (std::size_t k = 0; k < count; ++k) {
    auto [u, s, v] = factor_slice(f, k);
    out.u[k] = std::move(u);
    out.sigma[k] = std::move(s);
    out.v[k] = std::move(v);
  }
  out.svd_calls = count;
  for (std::size_t k = count; k < n3; ++k) {
    const std::size_t p = f.partner(k);
    out.u[k] = out.u[p].conjugate();
    out.sigma[k] = out.sigma[p];
    out.v[k] = out.v[p].conjugate();
  }
  return out;
}

std::vector<Eigen::VectorXd> fourier_singular_values(const FourierStack& f, SpectrumMode mode,
                                                     std::size_t* svd_calls) {
  const std::size_t n3 = f.dims.n3;
  std::vector<Eigen::VectorXd> out(n3);
  const std::size_t count = slices_to_decompose(f, mode);
  for (std::size_t k = 0; k < count; ++k) out[k] = decompose_slice(f.slices[k], k, 0).singularValues();
  for (std::size_t k = count; k < n3; ++k) out[k] = out[f.partner(k)];
  if (svd_calls) *svd_calls = count;
  return out;
}

TSvdFactors tsvd(const Tensor3& t, SpectrumMode mode) {
  const auto [n1, n2, n3] = t.dims();
  const FourierStack xf = fft_mode3(t);
  const FourierSvd svd = fourier_svd(xf, mode);

  FourierStack uf(Dims{n1, n1, n3}), sf(Dims{n1, n2, n3}), vf(Dims{n2, n2, n3});
  for (std::size_t k = 0; k < n3; ++k) {
    uf.slices[k] = svd.u[k];
    vf.slices[k] = svd.v[k];
    for (Eigen::Index i = 0; i < svd.sigma[k].size(); ++i) sf.slices[k](i, i) = svd.sigma[k](i);
  }

  TSvdFactors out;
  double ru = 0.0, rs = 0.0, rv = 0.0;
  out.u = ifft_mode3(uf, &ru);
  out.s = ifft_mode3(sf, &rs);
  out.v = ifft_mode3(vf, &rv);
  out.svd_calls = svd.svd_calls;
  out.imag_residue = std::max({ru, rs, rv});
  return out;
}

TSvdFactors tsvd(const Tensor3& t) { return tsvd(t, SpectrumMode::full); }

TSvdFactors tsvd_half(const Tensor3& t) { return tsvd(t, SpectrumMode::half); }

Tensor3 reconstruct(const TSvdFactors& f) {
  return t_product(t_product(f.u, f.s), tensor_transpose(f.v));
}

std::vector<std::size_t> multi_rank(const Tensor3& t, std::optional<double> rel_tol) {
  const auto [n1, n2, n3] = t.dims();
  const auto sigma = fourier_singular_values(fft_mode3(t), SpectrumMode::half);
  double sigma_max = 0.0;
  for (const auto& s : sigma)
    if (s.size() > 0) sigma_max = std::max(sigma_max, s.maxCoeff());
  const double tol =
      rel_tol.value_or(static_cast<double>(std::max(n1, n2)) * std::numeric_limits<double>::epsilon());
  const double threshold = tol * sigma_max;
  std::vector<std::size_t> ranks(n3, 0);
  if (sigma_max == 0.0) return ranks;
  for (std::size_t k = 0; k < n3; ++k) {
    ranks[k] = static_cast<std::size_t>((sigma[k].array() > threshold).count());
  }
  return ranks;
}

}  // namespace tnn
