#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>

#include "tnn/tensor.hpp"

namespace tnn::frames {

/// Netpbm raster (P2/P5 gray, P3/P6 color), samples scaled to [0, 1].
struct Image {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t channels = 1;
  std::vector<double> samples;  // row-major, channels interleaved

  double at(std::size_t r, std::size_t c, std::size_t ch = 0) const {
    return samples[(r * cols + c) * channels + ch];
  }
};

Image read_pnm(const std::filesystem::path& path);

/// 8-bit binary PGM (P5) of one frame; values are clamped to [0, 1].
void write_pgm(const std::filesystem::path& path, const Matrix& frame);
/// 8-bit binary PPM (P6) from three channel frames.
void write_ppm(const std::filesystem::path& path, const Matrix& r, const Matrix& g, const Matrix& b);

/// 0.299 R + 0.587 G + 0.114 B.
inline double luminance(double r, double g, double b) { return 0.299 * r + 0.587 * g + 0.114 * b; }

/// Frames as a length x width x frames tensor. `gray` always holds the
/// grayscale sequence; `rgb` holds per-channel tensors when every frame is color.
struct FrameSequence {
  Tensor3 gray;
  std::optional<std::array<Tensor3, 3>> rgb;
};

/// Reads every .pgm/.ppm/.pnm file in `dir` in lexicographic filename order.
/// Frame k becomes frontal slice k. Throws IoError on mixed sizes or no frames.
FrameSequence load_frames(const std::filesystem::path& dir);

/// Writes frame_0000.pgm, frame_0001.pgm, ... into `dir` (created if missing).
void save_frames(const std::filesystem::path& dir, const Tensor3& t);
void save_frames_rgb(const std::filesystem::path& dir, const std::array<Tensor3, 3>& rgb);

}  // namespace tnn::frames
