#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tnn/tensor.hpp"

namespace tnn {

/// Counter-based generator: the n-th draw of stream s under seed is a pure
/// function of (seed, s, n), so results do not depend on platform, library
/// version, or call order.
///
///   key        = splitmix64(seed ^ (stream * 0xD1B54A32D192ED03))
///   bits(n)    = splitmix64(key + n)
///   uniform(n) = (bits(n) >> 11) * 2^-53              in [0, 1)
///   normal(n)  = sqrt(-2 ln(1 - u(2n))) * cos(2 pi u(2n+1))   (Box-Muller)
///
/// splitmix64(z): z += 0x9E3779B97F4A7C15;
///                z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;
///                z = (z ^ (z >> 27)) * 0x94D049BB133111EB;
///                return z ^ (z >> 31);
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t bits(std::uint64_t n) const noexcept;
  double uniform(std::uint64_t n) const noexcept;
  double normal(std::uint64_t n) const noexcept;

 private:
  std::uint64_t key_;
};

std::uint64_t splitmix64(std::uint64_t z) noexcept;

// Stream identifiers keep unrelated draws independent under one seed.
namespace streams {
inline constexpr std::uint64_t bernoulli = 1;
inline constexpr std::uint64_t occlusion = 2;
inline constexpr std::uint64_t factor_a = 3;
inline constexpr std::uint64_t factor_b = 4;
inline constexpr std::uint64_t panning = 5;
inline constexpr std::uint64_t noise = 6;
inline constexpr std::uint64_t uniform_tensor = 7;
}  // namespace streams

/// Entry n (storage order) is observed iff uniform(n) < p.
Mask3 bernoulli_mask(Dims dims, double p, std::uint64_t seed);

enum class OcclusionMode { area, side };

/// Block side lengths for one n1 x n2 frame. Area mode scales each side by
/// sqrt(fraction), side mode by fraction; both floor and then clamp to >= 1.
std::pair<std::size_t, std::size_t> occlusion_block(std::size_t n1, std::size_t n2, double fraction,
                                                   OcclusionMode mode);

/// One unobserved block per frame at a uniformly drawn admissible position;
/// frame k uses draws 2k (row) and 2k+1 (column).
Mask3 occlusion_mask(Dims dims, double fraction, std::uint64_t seed, OcclusionMode mode = OcclusionMode::area);

struct BernoulliSpec {
  double p = 0.5;
};
struct OcclusionSpec {
  double fraction = 0.3;
  OcclusionMode mode = OcclusionMode::area;
};

struct MaskSpec {
  std::variant<BernoulliSpec, OcclusionSpec> kind;
  std::uint64_t seed = 0;
};

/// Parses `bernoulli:p=0.3,seed=7` or `occlusion:frac=0.3,seed=7,mode=area`.
/// Throws std::invalid_argument on anything else.
MaskSpec parse_mask_spec(std::string_view text);
Mask3 make_mask(Dims dims, const MaskSpec& spec);

/// t_product(A, B) with A: n1 x r x n3, B: r x n2 x n3 of seeded standard normals.
Tensor3 synth_low_multirank(std::size_t n1, std::size_t n2, std::size_t n3, std::size_t r, std::uint64_t seed);

/// A seeded base frame translated cyclically along its rows, one column
/// per frame: frame k (i, j) = base(i, (j - k) mod n2), plus Gaussian noise
/// with standard deviation noise_level * rms(base).
Tensor3 synth_panning(std::size_t n1, std::size_t n2, std::size_t n3, double noise_level, std::uint64_t seed);

/// Entries drawn uniformly in [lo, hi).
Tensor3 random_tensor(Dims dims, std::uint64_t seed, double lo = -1.0, double hi = 1.0);

/// Sentinel reported when the reference is matched exactly (or has zero norm).
inline constexpr double kMinusInfinityDb = -std::numeric_limits<double>::infinity();

/// Per frame: 20 log10(||x_k - m_k||_F / ||m_k||_F). A zero-norm reference
/// frame gives -inf when the frame matches and +inf otherwise.
std::vector<double> rse_per_frame(const Tensor3& x, const Tensor3& m);

/// -20 log10(||x - m||_F / ||m||_F); +inf for an exact match.
double irse(const Tensor3& x, const Tensor3& m);

}  // namespace tnn
