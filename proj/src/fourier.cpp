#include "tnn/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include <unsupported/Eigen/FFT>

namespace tnn {

FourierStack::FourierStack(Dims d) : dims(d) {
  slices.assign(d.n3, CMatrix::Zero(static_cast<Eigen::Index>(d.n1), static_cast<Eigen::Index>(d.n2)));
}

void FourierStack::mirror_upper_half() {
  for (std::size_t k = half_count(); k < dims.n3; ++k) slices[k] = slices[partner(k)].conjugate();
}

double FourierStack::symmetry_defect() const {
  double worst = 0.0;
  for (std::size_t k = 1; k < dims.n3; ++k) {
    worst = std::max(worst, (slices[k] - slices[partner(k)].conjugate()).norm());
  }
  return worst / std::max(1.0, fro_norm(*this));
}

double fro_norm(const FourierStack& f) {
  double s = 0.0;
  for (const auto& m : f.slices) s += m.squaredNorm();
  return std::sqrt(s);
}

FourierStack fft_mode3(const Tensor3& t) {
  const Dims d = t.dims();
  FourierStack out(d);
  if (d.n3 == 1) {
    out.slices[0] = t.slice(0).cast<std::complex<double>>();
    return out;
  }
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> fiber(d.n3), spectrum(d.n3);
  const std::size_t keep = out.half_count();
  for (std::size_t j = 0; j < d.n2; ++j) {
    for (std::size_t i = 0; i < d.n1; ++i) {
      for (std::size_t k = 0; k < d.n3; ++k) fiber[k] = t(i, j, k);
      fft.fwd(spectrum, fiber);
      for (std::size_t k = 0; k < keep; ++k) out.slices[k](i, j) = spectrum[k];
    }
  }
  // Real input: the DC term (and Nyquist term for even n3) is real.
  out.slices[0] = out.slices[0].real().cast<std::complex<double>>();
  if (d.n3 % 2 == 0) {
    out.slices[d.n3 / 2] = out.slices[d.n3 / 2].real().cast<std::complex<double>>();
  }
  out.mirror_upper_half();
  return out;
}

Tensor3 ifft_mode3(const FourierStack& f, double* imag_residue) {
  const Dims d = f.dims;
  if (f.slices.size() != d.n3) throw DimensionError("Fourier stack slice count does not match n3");
  Tensor3 out(d);
  double max_im = 0.0;
  double max_re = 0.0;
  if (d.n3 == 1) {
    out.set_slice(0, f.slices[0].real());
    max_im = f.slices[0].imag().cwiseAbs().maxCoeff();
    max_re = f.slices[0].real().cwiseAbs().maxCoeff();
  } else {
    Eigen::FFT<double> fft;
    std::vector<std::complex<double>> spectrum(d.n3), fiber(d.n3);
    for (std::size_t j = 0; j < d.n2; ++j) {
      for (std::size_t i = 0; i < d.n1; ++i) {
        for (std::size_t k = 0; k < d.n3; ++k) spectrum[k] = f.slices[k](i, j);
        fft.inv(fiber, spectrum);
        for (std::size_t k = 0; k < d.n3; ++k) {
          out(i, j, k) = fiber[k].real();
          max_im = std::max(max_im, std::abs(fiber[k].imag()));
          max_re = std::max(max_re, std::abs(fiber[k].real()));
        }
      }
    }
  }
  if (imag_residue) *imag_residue = max_im / std::max(1.0, max_re);
  return out;
}

}  // namespace tnn
