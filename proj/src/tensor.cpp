#include "tnn/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace tnn {

std::string to_string(const Dims& d) {
  return std::to_string(d.n1) + "x" + std::to_string(d.n2) + "x" + std::to_string(d.n3);
}

void require_same_dims(const Dims& a, const Dims& b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": dims " + to_string(a) + " vs " + to_string(b));
  }
}

namespace {

void check_positive(const Dims& d) {
  if (d.n1 == 0 || d.n2 == 0 || d.n3 == 0) {
    throw DimensionError("tensor dims must be positive, got " + to_string(d));
  }
}

}  // namespace

Tensor3::Tensor3(Dims dims) : dims_(dims) {
  check_positive(dims);
  data_.assign(dims.size(), 0.0);
}

Tensor3::Tensor3(Dims dims, std::vector<double> data) : dims_(dims), data_(std::move(data)) {
  check_positive(dims);
  if (data_.size() != dims.size()) {
    throw DimensionError("tensor data length " + std::to_string(data_.size()) +
                         " does not match dims " + to_string(dims));
  }
  const auto bad = std::find_if(data_.begin(), data_.end(), [](double v) { return !std::isfinite(v); });
  if (bad != data_.end()) {
    throw NumericalError("non-finite tensor entry at offset " +
                         std::to_string(std::distance(data_.begin(), bad)));
  }
}

void Tensor3::check_slice(std::size_t k) const {
  if (k >= dims_.n3) {
    throw std::out_of_range("frontal slice " + std::to_string(k) + " out of range for n3 = " +
                            std::to_string(dims_.n3));
  }
}

Tensor3::SliceMap Tensor3::slice(std::size_t k) {
  check_slice(k);
  return SliceMap(data_.data() + k * dims_.slice_size(), static_cast<Eigen::Index>(dims_.n1),
                  static_cast<Eigen::Index>(dims_.n2));
}

Tensor3::ConstSliceMap Tensor3::slice(std::size_t k) const {
  check_slice(k);
  return ConstSliceMap(data_.data() + k * dims_.slice_size(), static_cast<Eigen::Index>(dims_.n1),
                       static_cast<Eigen::Index>(dims_.n2));
}

void Tensor3::set_slice(std::size_t k, const Matrix& m) {
  if (static_cast<std::size_t>(m.rows()) != dims_.n1 || static_cast<std::size_t>(m.cols()) != dims_.n2) {
    throw DimensionError("slice shape mismatch");
  }
  slice(k) = m;
}

Tensor3& Tensor3::operator+=(const Tensor3& other) {
  require_same_dims(dims_, other.dims_, "tensor +=");
  for (std::size_t n = 0; n < data_.size(); ++n) data_[n] += other.data_[n];
  return *this;
}

Tensor3& Tensor3::operator-=(const Tensor3& other) {
  require_same_dims(dims_, other.dims_, "tensor -=");
  for (std::size_t n = 0; n < data_.size(); ++n) data_[n] -= other.data_[n];
  return *this;
}

Tensor3& Tensor3::operator*=(double s) noexcept {
  for (double& v : data_) v *= s;
  return *this;
}

Mask3::Mask3(Dims dims, bool value) : dims_(dims) {
  check_positive(dims);
  bits_.assign(dims.size(), value ? 1 : 0);
}

Mask3::Mask3(Dims dims, std::vector<std::uint8_t> bits) : dims_(dims), bits_(std::move(bits)) {
  check_positive(dims);
  if (bits_.size() != dims.size()) {
    throw DimensionError("mask length does not match dims " + to_string(dims));
  }
  for (auto& b : bits_) {
    if (b > 1) throw DimensionError("mask entries must be 0 or 1");
  }
}

std::size_t Mask3::observed_count() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

double Mask3::observed_fraction() const noexcept {
  return bits_.empty() ? 0.0 : static_cast<double>(observed_count()) / static_cast<double>(bits_.size());
}

Mask3 Mask3::complement() const {
  Mask3 out = *this;
  for (auto& b : out.bits_) b = b ? 0 : 1;
  return out;
}

Matrix frontal_slice(const Tensor3& t, std::size_t k) { return t.slice(k); }

Matrix mode_unfold(const Tensor3& t, int mode) {
  const auto [n1, n2, n3] = t.dims();
  Matrix out;
  switch (mode) {
    case 1:
      out.resize(n1, n2 * n3);
      for (std::size_t k = 0; k < n3; ++k)
        for (std::size_t j = 0; j < n2; ++j)
          for (std::size_t i = 0; i < n1; ++i) out(i, j + n2 * k) = t(i, j, k);
      break;
    case 2:
      out.resize(n2, n1 * n3);
      for (std::size_t k = 0; k < n3; ++k)
        for (std::size_t j = 0; j < n2; ++j)
          for (std::size_t i = 0; i < n1; ++i) out(j, i + n1 * k) = t(i, j, k);
      break;
    case 3:
      out.resize(n3, n1 * n2);
      for (std::size_t k = 0; k < n3; ++k)
        for (std::size_t j = 0; j < n2; ++j)
          for (std::size_t i = 0; i < n1; ++i) out(k, i + n1 * j) = t(i, j, k);
      break;
    default:
      throw DimensionError("unfolding mode must be 1, 2 or 3");
  }
  return out;
}

Tensor3 mode_fold(const Matrix& m, int mode, Dims dims) {
  Tensor3 t(dims);
  const auto [n1, n2, n3] = dims;
  auto expect = [&](std::size_t rows, std::size_t cols) {
    if (static_cast<std::size_t>(m.rows()) != rows || static_cast<std::size_t>(m.cols()) != cols) {
      throw DimensionError("fold: matrix shape does not match dims " + to_string(dims));
    }
  };
  switch (mode) {
    case 1:
      expect(n1, n2 * n3);
      for (std::size_t k = 0; k < n3; ++k)
        for (std::size_t j = 0; j < n2; ++j)
          for (std::size_t i = 0; i < n1; ++i) t(i, j, k) = m(i, j + n2 * k);
      break;
    case 2:
      expect(n2, n1 * n3);
      for (std::size_t k = 0; k < n3; ++k)
        for (std::size_t j = 0; j < n2; ++j)
          for (std::size_t i = 0; i < n1; ++i) t(i, j, k) = m(j, i + n1 * k);
      break;
    case 3:
      expect(n3, n1 * n2);
      for (std::size_t k = 0; k < n3; ++k)
        for (std::size_t j = 0; j < n2; ++j)
          for (std::size_t i = 0; i < n1; ++i) t(i, j, k) = m(k, i + n1 * j);
      break;
    default:
      throw DimensionError("folding mode must be 1, 2 or 3");
  }
  return t;
}

namespace {

// out(i, k, j) = in(i, j, k); the same index swap serves both directions.
Tensor3 swap_modes_23(const Tensor3& in) {
  const auto [n1, n2, n3] = in.dims();
  Tensor3 out(Dims{n1, n3, n2});
  for (std::size_t k = 0; k < n3; ++k)
    for (std::size_t j = 0; j < n2; ++j)
      for (std::size_t i = 0; i < n1; ++i) out(i, k, j) = in(i, j, k);
  return out;
}

}  // namespace

Tensor3 twist(const Tensor3& t) { return swap_modes_23(t); }

Tensor3 squeeze(const Tensor3& t) { return swap_modes_23(t); }

double fro_norm(const Tensor3& t) {
  double s = 0.0;
  for (double v : t.data()) s += v * v;
  return std::sqrt(s);
}

double l1_norm(const Tensor3& t) {
  double s = 0.0;
  for (double v : t.data()) s += std::abs(v);
  return s;
}

double inner(const Tensor3& a, const Tensor3& b) {
  require_same_dims(a.dims(), b.dims(), "inner");
  return std::inner_product(a.data().begin(), a.data().end(), b.data().begin(), 0.0);
}

Tensor3 project(const Tensor3& t, const Mask3& m) {
  require_same_dims(t.dims(), m.dims(), "project");
  Tensor3 out(t.dims());
  auto src = t.data();
  auto dst = out.data();
  auto bits = m.bits();
  for (std::size_t n = 0; n < src.size(); ++n) {
    if (bits[n]) dst[n] = src[n];
  }
  return out;
}

}  // namespace tnn
