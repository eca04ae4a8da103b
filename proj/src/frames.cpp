#include "tnn/frames.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <vector>

namespace tnn::frames {

namespace {

// Reads the next header token, skipping whitespace and '#' comments.
std::string next_token(std::istream& is) {
  std::string tok;
  int c;
  while ((c = is.get()) != EOF) {
    if (c == '#') {
      while ((c = is.get()) != EOF && c != '\n') {}
      continue;
    }
    if (std::isspace(c)) {
      if (!tok.empty()) break;
      continue;
    }
    tok.push_back(static_cast<char>(c));
  }
  if (tok.empty()) throw IoError("truncated netpbm header");
  return tok;
}

std::size_t to_size(const std::string& s) {
  try {
    std::size_t pos = 0;
    const auto v = std::stoull(s, &pos);
    if (pos != s.size()) throw IoError("bad netpbm number '" + s + "'");
    return static_cast<std::size_t>(v);
  } catch (const std::logic_error&) {
    throw IoError("bad netpbm number '" + s + "'");
  }
}

unsigned char to_byte(double v) {
  return static_cast<unsigned char>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

bool is_raster(const std::filesystem::path& p) {
  auto ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".pgm" || ext == ".ppm" || ext == ".pnm";
}

}  // namespace

Image read_pnm(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path.string());
  const std::string magic = next_token(is);
  const bool binary = magic == "P5" || magic == "P6";
  const bool color = magic == "P3" || magic == "P6";
  if (!(magic == "P2" || magic == "P3" || magic == "P5" || magic == "P6")) {
    throw IoError(path.string() + ": unsupported netpbm type " + magic);
  }
  Image img;
  img.cols = to_size(next_token(is));
  img.rows = to_size(next_token(is));
  const std::size_t maxval = to_size(next_token(is));
  if (img.rows == 0 || img.cols == 0 || maxval == 0 || maxval > 65535) {
    throw IoError(path.string() + ": bad netpbm header");
  }
  img.channels = color ? 3 : 1;
  const std::size_t count = img.rows * img.cols * img.channels;
  img.samples.resize(count);
  const double scale = 1.0 / static_cast<double>(maxval);
  if (binary) {
    const std::size_t width = maxval > 255 ? 2 : 1;
    std::vector<unsigned char> raw(count * width);
    if (!is.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()))) {
      throw IoError(path.string() + ": truncated raster");
    }
    for (std::size_t n = 0; n < count; ++n) {
      const std::size_t v = width == 2 ? (std::size_t{raw[2 * n]} << 8) | raw[2 * n + 1] : raw[n];
      img.samples[n] = std::min(1.0, static_cast<double>(v) * scale);
    }
  } else {
    for (std::size_t n = 0; n < count; ++n) img.samples[n] = std::min(1.0, static_cast<double>(to_size(next_token(is))) * scale);
  }
  return img;
}

void write_pgm(const std::filesystem::path& path, const Matrix& frame) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  os << "P5\n" << frame.cols() << ' ' << frame.rows() << "\n255\n";
  for (Eigen::Index r = 0; r < frame.rows(); ++r)
    for (Eigen::Index c = 0; c < frame.cols(); ++c) os.put(static_cast<char>(to_byte(frame(r, c))));
  if (!os) throw IoError("write failed for " + path.string());
}

void write_ppm(const std::filesystem::path& path, const Matrix& r, const Matrix& g, const Matrix& b) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  os << "P6\n" << r.cols() << ' ' << r.rows() << "\n255\n";
  for (Eigen::Index i = 0; i < r.rows(); ++i)
    for (Eigen::Index j = 0; j < r.cols(); ++j) {
      os.put(static_cast<char>(to_byte(r(i, j))));
      os.put(static_cast<char>(to_byte(g(i, j))));
      os.put(static_cast<char>(to_byte(b(i, j))));
    }
  if (!os) throw IoError("write failed for " + path.string());
}

FrameSequence load_frames(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw IoError(dir.string() + " is not a directory");
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && is_raster(entry.path())) files.push_back(entry.path());
  }
  if (files.empty()) throw IoError("no .pgm/.ppm frames in " + dir.string());
  std::sort(files.begin(), files.end(),
            [](const auto& a, const auto& b) { return a.filename().string() < b.filename().string(); });

  std::vector<Image> images;
  images.reserve(files.size());
  for (const auto& f : files) images.push_back(read_pnm(f));
  const std::size_t rows = images.front().rows, cols = images.front().cols;
  bool all_color = true;
  for (std::size_t k = 0; k < images.size(); ++k) {
    if (images[k].rows != rows || images[k].cols != cols) {
      throw IoError("frame " + files[k].filename().string() + " has different dimensions");
    }
    all_color = all_color && images[k].channels == 3;
  }

  const Dims dims{rows, cols, images.size()};
  FrameSequence seq{Tensor3(dims), std::nullopt};
  if (all_color) seq.rgb = std::array<Tensor3, 3>{Tensor3(dims), Tensor3(dims), Tensor3(dims)};
  for (std::size_t k = 0; k < images.size(); ++k) {
    const Image& img = images[k];
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        if (img.channels == 3) {
          const double r = img.at(i, j, 0), g = img.at(i, j, 1), b = img.at(i, j, 2);
          seq.gray(i, j, k) = luminance(r, g, b);
          if (seq.rgb) {
            (*seq.rgb)[0](i, j, k) = r;
            (*seq.rgb)[1](i, j, k) = g;
            (*seq.rgb)[2](i, j, k) = b;
          }
        } else {
          seq.gray(i, j, k) = img.at(i, j);
        }
      }
    }
  }
  return seq;
}

namespace {

std::filesystem::path frame_name(const std::filesystem::path& dir, std::size_t k, const char* ext) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "frame_%04zu.%s", k, ext);
  return dir / buf;
}

}  // namespace

void save_frames(const std::filesystem::path& dir, const Tensor3& t) {
  std::filesystem::create_directories(dir);
  for (std::size_t k = 0; k < t.dims().n3; ++k) write_pgm(frame_name(dir, k, "pgm"), t.slice(k));
}

void save_frames_rgb(const std::filesystem::path& dir, const std::array<Tensor3, 3>& rgb) {
  std::filesystem::create_directories(dir);
  for (std::size_t k = 0; k < rgb[0].dims().n3; ++k) {
    write_ppm(frame_name(dir, k, "ppm"), rgb[0].slice(k), rgb[1].slice(k), rgb[2].slice(k));
  }
}

}  // namespace tnn::frames
