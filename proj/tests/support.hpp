#pragma once

// Independent reference computations for the unit and acceptance tests.
// Nothing here calls the FFT path or the library's circulant builders.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/SVD>

#include "tnn/tensor.hpp"

namespace tnn::testing {

inline Tensor3 gaussian(Dims d, std::mt19937_64& gen) {
  std::normal_distribution<double> nd;
  Tensor3 t(d);
  for (double& v : t.data()) v = nd(gen);
  return t;
}

inline Dims random_dims(std::mt19937_64& gen, std::size_t lo, std::size_t hi) {
  std::uniform_int_distribution<std::size_t> u(lo, hi);
  const std::size_t a = u(gen), b = u(gen), c = u(gen);
  return {a, b, c};
}

inline double rel_diff(const Tensor3& a, const Tensor3& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) {
    num += (a.data()[n] - b.data()[n]) * (a.data()[n] - b.data()[n]);
    den += b.data()[n] * b.data()[n];
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

// X_f(i, j, k) = sum_t X(i, j, t) exp(-2 pi i k t / n3), summed term by term.
inline std::vector<Eigen::MatrixXcd> direct_dft(const Tensor3& t) {
  const Dims d = t.dims();
  std::vector<Eigen::MatrixXcd> out(d.n3, Eigen::MatrixXcd::Zero(d.n1, d.n2));
  for (std::size_t k = 0; k < d.n3; ++k)
    for (std::size_t m = 0; m < d.n3; ++m) {
      const double a = -2.0 * std::numbers::pi * static_cast<double>((k * m) % d.n3) / static_cast<double>(d.n3);
      const std::complex<double> w(std::cos(a), std::sin(a));
      for (std::size_t j = 0; j < d.n2; ++j)
        for (std::size_t i = 0; i < d.n1; ++i) out[k](i, j) += t(i, j, m) * w;
    }
  return out;
}

// Block-circulant matrix assembled entry by entry from its definition.
inline Eigen::MatrixXd naive_bcirc(const Tensor3& t) {
  const Dims d = t.dims();
  Eigen::MatrixXd b(d.n1 * d.n3, d.n2 * d.n3);
  for (std::size_t r = 0; r < d.n3; ++r)
    for (std::size_t c = 0; c < d.n3; ++c) {
      const std::size_t k = (r + d.n3 - c) % d.n3;
      for (std::size_t i = 0; i < d.n1; ++i)
        for (std::size_t j = 0; j < d.n2; ++j) b(r * d.n1 + i, c * d.n2 + j) = t(i, j, k);
    }
  return b;
}

// (A * B)(i, j, :) = sum_l A(i, l, :) o B(l, j, :) with o the cyclic convolution.
inline Tensor3 naive_t_product(const Tensor3& a, const Tensor3& b) {
  const Dims da = a.dims(), db = b.dims();
  Tensor3 c(Dims{da.n1, db.n2, da.n3});
  const std::size_t n = da.n3;
  for (std::size_t i = 0; i < da.n1; ++i)
    for (std::size_t j = 0; j < db.n2; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        double s = 0.0;
        for (std::size_t l = 0; l < da.n2; ++l)
          for (std::size_t m = 0; m < n; ++m) s += a(i, l, m) * b(l, j, (k + n - m) % n);
        c(i, j, k) = s;
      }
  return c;
}

inline double dense_nuclear(const Eigen::MatrixXd& m) {
  return Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues().sum();
}

// Sum of singular values of every Fourier slice, from the direct DFT.
inline double naive_gtnn(const Tensor3& t) {
  double s = 0.0;
  for (const auto& m : direct_dft(t)) s += Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues().sum();
  return s;
}

inline Tensor3 naive_twist(const Tensor3& t) {
  const Dims d = t.dims();
  Tensor3 out(Dims{d.n1, d.n3, d.n2});
  for (std::size_t i = 0; i < d.n1; ++i)
    for (std::size_t j = 0; j < d.n2; ++j)
      for (std::size_t k = 0; k < d.n3; ++k) out(i, k, j) = t(i, j, k);
  return out;
}

}  // namespace tnn::testing
