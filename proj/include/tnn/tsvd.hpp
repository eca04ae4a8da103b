#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SVD>

#include "tnn/fourier.hpp"
#include "tnn/tensor.hpp"

namespace tnn {

/// Which Fourier slices get their own SVD.
///
/// `full` decomposes all n3 slices independently. `half` decomposes slices
/// 0..floor(n3/2) and fills slice n3-k with the conjugated factors of slice k,
/// which is exact for real input.
enum class SpectrumMode { full, half };

/// Per-slice SVDs of a Fourier stack: slice k = u[k] * diag(sigma[k]) * v[k]^H.
struct FourierSvd {
  Dims dims{};
  std::vector<CMatrix> u;              // n1 x n1
  std::vector<Eigen::VectorXd> sigma;  // min(n1, n2), nonincreasing, >= 0
  std::vector<CMatrix> v;              // n2 x n2
  std::size_t svd_calls = 0;
};

FourierSvd fourier_svd(const FourierStack& f, SpectrumMode mode);

/// SVD of one Fourier slice. Throws SliceSvdError (carrying `slice`) on failure.
Eigen::JacobiSVD<CMatrix> decompose_slice(const CMatrix& m, std::size_t slice, unsigned options);

/// Singular values only (no vectors) of every slice, with the same slice coverage rules.
std::vector<Eigen::VectorXd> fourier_singular_values(const FourierStack& f, SpectrumMode mode,
                                                     std::size_t* svd_calls = nullptr);

/// X = U * S * V^T with U, V orthogonal and S f-diagonal.
struct TSvdFactors {
  Tensor3 u;  // n1 x n1 x n3
  Tensor3 s;  // n1 x n2 x n3
  Tensor3 v;  // n2 x n2 x n3
  std::size_t svd_calls = 0;
  /// Largest relative imaginary part discarded when returning to the spatial domain.
  double imag_residue = 0.0;
};

/// t-SVD with one SVD per Fourier slice.
TSvdFactors tsvd(const Tensor3& t);
/// t-SVD exploiting conjugate symmetry; floor(n3/2) + 1 SVDs.
TSvdFactors tsvd_half(const Tensor3& t);
TSvdFactors tsvd(const Tensor3& t, SpectrumMode mode);

/// U * S * V^T.
Tensor3 reconstruct(const TSvdFactors& f);

/// r(k) = number of singular values of X_f(:,:,k) above the threshold.
/// The threshold is rel_tol * sigma_max over all slices; rel_tol defaults to
/// max(n1, n2) * machine epsilon.
std::vector<std::size_t> multi_rank(const Tensor3& t, std::optional<double> rel_tol = std::nullopt);

}  // namespace tnn
