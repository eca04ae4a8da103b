#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tnn {

// Shapes that do not fit together (mismatched dims, bad mode, bad block size).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// NaN/Inf input, SVD failure, solver divergence.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A decomposition failed on one Fourier-domain slice.
class SliceSvdError : public NumericalError {
 public:
  SliceSvdError(std::size_t slice, const std::string& what)
      : NumericalError("SVD failed on Fourier slice " + std::to_string(slice) + ": " + what),
        slice_(slice) {}

  std::size_t slice() const noexcept { return slice_; }

 private:
  std::size_t slice_;
};

// A dense oracle matrix would exceed the configured element budget.
class BudgetError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Malformed or unreadable files.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tnn
