#pragma once

#include <vector>

#include "tnn/tensor.hpp"

namespace tnn {

/// Frontal slices of a tensor after a DFT along every mode-3 fiber.
///
/// Slice k holds X_f(:, :, k). For real input, slice k and slice (n3 - k) mod n3
/// are exact complex conjugates; fft_mode3 writes the upper half by
/// conjugating the lower half so the symmetry is bitwise.
struct FourierStack {
  Dims dims{};
  std::vector<CMatrix> slices;

  FourierStack() = default;
  explicit FourierStack(Dims d);

  /// Index of the slice that mirrors slice k under conjugate symmetry.
  std::size_t partner(std::size_t k) const noexcept { return k == 0 ? 0 : dims.n3 - k; }

  /// Number of slices that carry independent information for real input.
  std::size_t half_count() const noexcept { return dims.n3 / 2 + 1; }

  /// Fills slices half_count()..n3-1 from their conjugate partners.
  void mirror_upper_half();

  /// max_k || slice(k) - conj(slice(partner(k))) ||_F / max(1, ||X_f||_F).
  double symmetry_defect() const;
};

/// Unnormalized forward DFT along mode 3: X_f(i,j,k) = sum_t X(i,j,t) exp(-2 pi i k t / n3).
FourierStack fft_mode3(const Tensor3& t);

/// Inverse DFT (with the 1/n3 factor) returning the real part. When
/// `imag_residue` is given it receives max |Im| / max(1, max |Re|).
Tensor3 ifft_mode3(const FourierStack& f, double* imag_residue = nullptr);

double fro_norm(const FourierStack& f);

}  // namespace tnn
