#include "tnn/experiments.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tnn/circulant.hpp"

namespace tnn {

std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(splitmix64(seed ^ (stream * 0xD1B54A32D192ED03ULL))) {}

std::uint64_t CounterRng::bits(std::uint64_t n) const noexcept { return splitmix64(key_ + n); }

double CounterRng::uniform(std::uint64_t n) const noexcept {
  return static_cast<double>(bits(n) >> 11) * 0x1.0p-53;
}

double CounterRng::normal(std::uint64_t n) const noexcept {
  const double u1 = 1.0 - uniform(2 * n);  // (0, 1]
  const double u2 = uniform(2 * n + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Mask3 bernoulli_mask(Dims dims, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("bernoulli_mask: p must lie in [0, 1]");
  const CounterRng rng(seed, streams::bernoulli);
  std::vector<std::uint8_t> bits(dims.size());
  for (std::size_t n = 0; n < bits.size(); ++n) bits[n] = rng.uniform(n) < p ? 1 : 0;
  return Mask3(dims, std::move(bits));
}

std::pair<std::size_t, std::size_t> occlusion_block(std::size_t n1, std::size_t n2, double fraction,
                                                   OcclusionMode mode) {
  if (!(fraction > 0.0 && fraction < 1.0)) throw std::invalid_argument("occlusion fraction must lie in (0, 1)");
  const double scale = mode == OcclusionMode::area ? std::sqrt(fraction) : fraction;
  const auto side = [&](std::size_t n) {
    const auto s = static_cast<std::size_t>(std::floor(scale * static_cast<double>(n)));
    return s == 0 ? std::size_t{1} : s;
  };
  const auto h = side(n1), w = side(n2);
  if (h > n1 || w > n2) throw DimensionError("occlusion block larger than frame");
  return {h, w};
}

Mask3 occlusion_mask(Dims dims, double fraction, std::uint64_t seed, OcclusionMode mode) {
  const auto [h, w] = occlusion_block(dims.n1, dims.n2, fraction, mode);
  const CounterRng rng(seed, streams::occlusion);
  Mask3 m(dims, true);
  for (std::size_t k = 0; k < dims.n3; ++k) {
    const auto row_choices = static_cast<double>(dims.n1 - h + 1);
    const auto col_choices = static_cast<double>(dims.n2 - w + 1);
    const auto r0 = static_cast<std::size_t>(std::floor(rng.uniform(2 * k) * row_choices));
    const auto c0 = static_cast<std::size_t>(std::floor(rng.uniform(2 * k + 1) * col_choices));
    for (std::size_t j = c0; j < c0 + w; ++j)
      for (std::size_t i = r0; i < r0 + h; ++i) m.set(i, j, k, false);
  }
  return m;
}

namespace {

double parse_double(std::string_view s, std::string_view key) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument("mask spec: bad value for " + std::string(key));
  }
  return v;
}

std::uint64_t parse_u64(std::string_view s, std::string_view key) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument("mask spec: bad value for " + std::string(key));
  }
  return v;
}

}  // namespace

MaskSpec parse_mask_spec(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view kind = text.substr(0, colon);
  std::string_view rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);

  MaskSpec spec;
  BernoulliSpec bern;
  OcclusionSpec occ;
  bool have_p = false, have_frac = false;
  if (kind != "bernoulli" && kind != "occlusion") {
    throw std::invalid_argument("mask spec: unknown kind '" + std::string(kind) + "'");
  }
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw std::invalid_argument("mask spec: expected key=value");
    const auto key = item.substr(0, eq), value = item.substr(eq + 1);
    if (key == "seed") {
      spec.seed = parse_u64(value, key);
    } else if (kind == "bernoulli" && key == "p") {
      bern.p = parse_double(value, key);
      have_p = true;
    } else if (kind == "occlusion" && key == "frac") {
      occ.fraction = parse_double(value, key);
      have_frac = true;
    } else if (kind == "occlusion" && key == "mode") {
      if (value == "area") occ.mode = OcclusionMode::area;
      else if (value == "side") occ.mode = OcclusionMode::side;
      else throw std::invalid_argument("mask spec: mode must be area or side");
    } else {
      throw std::invalid_argument("mask spec: unknown key '" + std::string(key) + "'");
    }
  }
  if (kind == "bernoulli") {
    if (!have_p) throw std::invalid_argument("mask spec: bernoulli needs p");
    if (!(bern.p > 0.0 && bern.p < 1.0)) throw std::invalid_argument("mask spec: p must lie in (0, 1)");
    spec.kind = bern;
  } else {
    if (!have_frac) throw std::invalid_argument("mask spec: occlusion needs frac");
    if (!(occ.fraction > 0.0 && occ.fraction < 1.0)) throw std::invalid_argument("mask spec: frac must lie in (0, 1)");
    spec.kind = occ;
  }
  return spec;
}

Mask3 make_mask(Dims dims, const MaskSpec& spec) {
  if (const auto* b = std::get_if<BernoulliSpec>(&spec.kind)) return bernoulli_mask(dims, b->p, spec.seed);
  const auto& o = std::get<OcclusionSpec>(spec.kind);
  return occlusion_mask(dims, o.fraction, spec.seed, o.mode);
}

namespace {

Tensor3 normal_tensor(Dims dims, std::uint64_t seed, std::uint64_t stream) {
  const CounterRng rng(seed, stream);
  std::vector<double> v(dims.size());
  for (std::size_t n = 0; n < v.size(); ++n) v[n] = rng.normal(n);
  return Tensor3(dims, std::move(v));
}

}  // namespace

Tensor3 synth_low_multirank(std::size_t n1, std::size_t n2, std::size_t n3, std::size_t r, std::uint64_t seed) {
  if (r == 0) throw std::invalid_argument("synth_low_multirank: r must be positive");
  const Tensor3 a = normal_tensor(Dims{n1, r, n3}, seed, streams::factor_a);
  const Tensor3 b = normal_tensor(Dims{r, n2, n3}, seed, streams::factor_b);
  return t_product(a, b);
}

Tensor3 synth_panning(std::size_t n1, std::size_t n2, std::size_t n3, double noise_level, std::uint64_t seed) {
  const Tensor3 raw = normal_tensor(Dims{n1, n2, 1}, seed, streams::panning);
  // 3x3 cyclic box filter so the base frame has some spatial correlation.
  Matrix base(n1, n2);
  for (std::size_t j = 0; j < n2; ++j) {
    for (std::size_t i = 0; i < n1; ++i) {
      double s = 0.0;
      for (std::size_t di = 0; di < 3; ++di)
        for (std::size_t dj = 0; dj < 3; ++dj) s += raw((i + n1 + di - 1) % n1, (j + n2 + dj - 1) % n2, 0);
      base(i, j) = s / 9.0;
    }
  }
  const double rms = std::sqrt(base.squaredNorm() / static_cast<double>(base.size()));
  const CounterRng rng(seed, streams::noise);
  Tensor3 out(Dims{n1, n2, n3});
  for (std::size_t k = 0; k < n3; ++k)
    for (std::size_t j = 0; j < n2; ++j)
      for (std::size_t i = 0; i < n1; ++i)
        out(i, j, k) = base(i, (j + n2 * n3 - k) % n2) + noise_level * rms * rng.normal(out.offset(i, j, k));
  return out;
}

Tensor3 random_tensor(Dims dims, std::uint64_t seed, double lo, double hi) {
  const CounterRng rng(seed, streams::uniform_tensor);
  std::vector<double> v(dims.size());
  for (std::size_t n = 0; n < v.size(); ++n) v[n] = lo + (hi - lo) * rng.uniform(n);
  return Tensor3(dims, std::move(v));
}

namespace {

double ratio_db(double err, double ref) {
  if (ref == 0.0) {
    return err == 0.0 ? kMinusInfinityDb : std::numeric_limits<double>::infinity();
  }
  if (err == 0.0) return kMinusInfinityDb;
  return 20.0 * std::log10(err / ref);
}

}  // namespace

std::vector<double> rse_per_frame(const Tensor3& x, const Tensor3& m) {
  require_same_dims(x.dims(), m.dims(), "rse_per_frame");
  std::vector<double> out(m.dims().n3);
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = ratio_db((x.slice(k) - m.slice(k)).norm(), m.slice(k).norm());
  }
  return out;
}

double irse(const Tensor3& x, const Tensor3& m) {
  require_same_dims(x.dims(), m.dims(), "irse");
  return -ratio_db(fro_norm(x - m), fro_norm(m));
}

}  // namespace tnn
