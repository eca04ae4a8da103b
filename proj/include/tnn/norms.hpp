#pragma once

#include <string_view>

#include "tnn/tensor.hpp"
#include "tnn/tsvd.hpp"

namespace tnn {

/// Sum of the singular values of every Fourier slice. Equals the nuclear
/// norm of bcirc(t) under the unnormalized transform.
double gtnn(const Tensor3& t);

/// gtnn(twist(t)).
double ttnn(const Tensor3& t);

/// Nuclear norm of the mode-3 unfolding.
double mnn_mode3(const Tensor3& t);

double nuclear_norm(const Matrix& m);

/// Singular value soft-thresholding: U diag((sigma - tau)_+) V^T, the
/// minimizer of tau ||Y||_* + 1/2 ||Y - m||_F^2.
Matrix svt(const Matrix& m, double tau);

/// How the shrinkage threshold is carried into the Fourier domain.
///
/// `paper_literal` shrinks each Fourier singular value by tau.
/// `parseval_scaled` shrinks by n3 * tau, which accounts for
/// ||bcirc(Y)||_F^2 = n3 ||Y||_F^2 and makes tsvc the exact prox of tau * gtnn.
enum class FourierScale { paper_literal, parseval_scaled };

/// The mode that wins the perturbation arbitration (see oracle suite).
inline constexpr FourierScale kDefaultFourierScale = FourierScale::parseval_scaled;

std::string_view to_string(FourierScale s);
/// Accepts "paper" / "paper_literal" and "parseval" / "parseval_scaled".
FourierScale parse_fourier_scale(std::string_view s);

struct ProxParams {
  double tau = 1.0;
  FourierScale fourier_scale = kDefaultFourierScale;
  SpectrumMode spectrum = SpectrumMode::half;
};

/// Threshold actually applied to the Fourier singular values of z.
double effective_threshold(const ProxParams& p, std::size_t n3);

/// Tensor singular value convoluting on an already-twisted argument z:
/// per Fourier slice, sigma -> (sigma - tau_eff)_+ with the singular vectors
/// kept; recomposed and transformed back. A zero singular value gets factor 0.
Tensor3 tsvc(const Tensor3& z, const ProxParams& p);

/// tsvc with its factors exposed: z = U * S * V^T and the result is
/// U * (S * J) * V^T with J f-diagonal.
struct TsvcFactors {
  TSvdFactors z;   // t-SVD of the argument
  Tensor3 shrunk;  // S * J, f-diagonal
  Tensor3 j;       // shrinkage tensor
};
TsvcFactors tsvc_factors(const Tensor3& z, const ProxParams& p);

/// Objective tau * ttnn(y) + 1/2 ||y - z||_F^2 (video-domain arguments).
double ttnn_prox_objective(const Tensor3& y, const Tensor3& z, double tau);
/// Objective tau * gtnn(y) + 1/2 ||y - z||_F^2.
double gtnn_prox_objective(const Tensor3& y, const Tensor3& z, double tau);

}  // namespace tnn
