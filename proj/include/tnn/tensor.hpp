#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "tnn/errors.hpp"

namespace tnn {

using Matrix = Eigen::MatrixXd;
using CMatrix = Eigen::MatrixXcd;

struct Dims {
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  std::size_t n3 = 0;

  std::size_t size() const noexcept { return n1 * n2 * n3; }
  std::size_t slice_size() const noexcept { return n1 * n2; }

  friend bool operator==(const Dims&, const Dims&) = default;
};

std::string to_string(const Dims& d);

/// Dense real n1 x n2 x n3 tensor.
///
/// Storage is frontal-slice major: the linear offset of (i, j, k) is
/// i + n1 * j + n1 * n2 * k. Each frontal slice is therefore a contiguous
/// column-major n1 x n2 block, and mode-3 fibers have stride n1 * n2.
/// All indices are zero-based.
class Tensor3 {
 public:
  using SliceMap = Eigen::Map<Matrix>;
  using ConstSliceMap = Eigen::Map<const Matrix>;

  Tensor3() = default;

  /// Zero tensor. Every dim must be positive.
  explicit Tensor3(Dims dims);

  /// Adopts `data` in storage order. Throws DimensionError on a length
  /// mismatch and NumericalError if any entry is not finite.
  Tensor3(Dims dims, std::vector<double> data);

  static Tensor3 zeros(Dims dims) { return Tensor3(dims); }

  const Dims& dims() const noexcept { return dims_; }
  std::size_t size() const noexcept { return data_.size(); }

  std::size_t offset(std::size_t i, std::size_t j, std::size_t k) const noexcept {
    return i + dims_.n1 * (j + dims_.n2 * k);
  }

  double operator()(std::size_t i, std::size_t j, std::size_t k) const noexcept {
    return data_[offset(i, j, k)];
  }
  double& operator()(std::size_t i, std::size_t j, std::size_t k) noexcept {
    return data_[offset(i, j, k)];
  }

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  /// View of frontal slice k. Writes through the mutable view land in the tensor.
  SliceMap slice(std::size_t k);
  ConstSliceMap slice(std::size_t k) const;

  void set_slice(std::size_t k, const Matrix& m);

  Tensor3& operator+=(const Tensor3& other);
  Tensor3& operator-=(const Tensor3& other);
  Tensor3& operator*=(double s) noexcept;

  friend Tensor3 operator+(Tensor3 a, const Tensor3& b) { return a += b; }
  friend Tensor3 operator-(Tensor3 a, const Tensor3& b) { return a -= b; }
  friend Tensor3 operator*(Tensor3 a, double s) { return a *= s; }
  friend Tensor3 operator*(double s, Tensor3 a) { return a *= s; }

  friend bool operator==(const Tensor3&, const Tensor3&) = default;

 private:
  void check_slice(std::size_t k) const;

  Dims dims_{};
  std::vector<double> data_;
};

/// Binary observation pattern; true marks an observed entry.
class Mask3 {
 public:
  Mask3() = default;
  Mask3(Dims dims, bool value);
  Mask3(Dims dims, std::vector<std::uint8_t> bits);

  const Dims& dims() const noexcept { return dims_; }
  std::size_t size() const noexcept { return bits_.size(); }

  bool operator()(std::size_t i, std::size_t j, std::size_t k) const noexcept {
    return bits_[i + dims_.n1 * (j + dims_.n2 * k)] != 0;
  }
  void set(std::size_t i, std::size_t j, std::size_t k, bool v) noexcept {
    bits_[i + dims_.n1 * (j + dims_.n2 * k)] = v ? 1 : 0;
  }

  std::span<const std::uint8_t> bits() const noexcept { return bits_; }

  std::size_t observed_count() const noexcept;
  double observed_fraction() const noexcept;
  Mask3 complement() const;

  friend bool operator==(const Mask3&, const Mask3&) = default;

 private:
  Dims dims_{};
  std::vector<std::uint8_t> bits_;
};

/// Copy of frontal slice k; throws std::out_of_range when k >= n3.
Matrix frontal_slice(const Tensor3& t, std::size_t k);

/// Mode-l unfolding for l in {1, 2, 3}.
///
/// Column orderings (zero-based):
///   mode 1: X_(1)(i, j + n2 * k)
///   mode 2: X_(2)(j, i + n1 * k)
///   mode 3: X_(3)(k, i + n1 * j)   -- row k is the column-major vec of slice k
Matrix mode_unfold(const Tensor3& t, int mode);
Tensor3 mode_fold(const Matrix& m, int mode, Dims dims);

/// n1 x n2 x n3 -> n1 x n3 x n2 with out(i, k, j) == in(i, j, k). Frontal
/// slice k of the input becomes lateral slice k of the output.
Tensor3 twist(const Tensor3& t);
/// Inverse of twist.
Tensor3 squeeze(const Tensor3& t);

double fro_norm(const Tensor3& t);
double l1_norm(const Tensor3& t);
double inner(const Tensor3& a, const Tensor3& b);

/// Keeps observed entries and zeroes the rest.
Tensor3 project(const Tensor3& t, const Mask3& m);

void require_same_dims(const Dims& a, const Dims& b, const char* what);

}  // namespace tnn
