#include "tnn/io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>

namespace tnn::io {

namespace {

constexpr std::uint8_t kVersion = 0x01;

void put_u32(std::ostream& os, std::uint32_t v) {
  const std::array<char, 4> b{static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                              static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
  os.write(b.data(), b.size());
}

std::uint32_t get_u32(std::istream& is) {
  std::array<unsigned char, 4> b{};
  if (!is.read(reinterpret_cast<char*>(b.data()), b.size())) throw IoError("truncated header");
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

void put_f64(std::ostream& os, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  std::array<char, 8> b{};
  for (int n = 0; n < 8; ++n) b[n] = static_cast<char>((bits >> (8 * n)) & 0xff);
  os.write(b.data(), b.size());
}

double get_f64(const unsigned char* b) {
  std::uint64_t bits = 0;
  for (int n = 0; n < 8; ++n) bits |= static_cast<std::uint64_t>(b[n]) << (8 * n);
  return std::bit_cast<double>(bits);
}

void write_header(std::ostream& os, const char (&magic)[5], const Dims& d) {
  constexpr auto kMax = std::numeric_limits<std::uint32_t>::max();
  if (d.n1 > kMax || d.n2 > kMax || d.n3 > kMax) throw IoError("dims exceed 32-bit header range");
  os.write(magic, 4);
  os.put(static_cast<char>(kVersion));
  put_u32(os, static_cast<std::uint32_t>(d.n1));
  put_u32(os, static_cast<std::uint32_t>(d.n2));
  put_u32(os, static_cast<std::uint32_t>(d.n3));
}

Dims read_header(std::istream& is, const char (&magic)[5]) {
  std::array<char, 4> m{};
  if (!is.read(m.data(), m.size())) throw IoError("truncated header");
  if (std::memcmp(m.data(), magic, 4) != 0) {
    throw IoError(std::string("bad magic, expected ") + magic);
  }
  const int version = is.get();
  if (version != kVersion) throw IoError("unsupported format version " + std::to_string(version));
  Dims d;
  d.n1 = get_u32(is);
  d.n2 = get_u32(is);
  d.n3 = get_u32(is);
  if (d.n1 == 0 || d.n2 == 0 || d.n3 == 0) throw IoError("zero dimension in header");
  return d;
}

void expect_eof(std::istream& is) {
  if (is.peek() != std::char_traits<char>::eof()) throw IoError("trailing bytes after payload");
}

}  // namespace

void write_tensor(std::ostream& os, const Tensor3& t) {
  write_header(os, "TT3D", t.dims());
  for (double v : t.data()) put_f64(os, v);
  if (!os) throw IoError("write failed");
}

Tensor3 read_tensor(std::istream& is) {
  const Dims d = read_header(is, "TT3D");
  std::vector<unsigned char> raw(d.size() * 8);
  if (!is.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()))) {
    throw IoError("truncated tensor payload");
  }
  expect_eof(is);
  std::vector<double> values(d.size());
  for (std::size_t n = 0; n < values.size(); ++n) values[n] = get_f64(raw.data() + 8 * n);
  return Tensor3(d, std::move(values));
}

void write_mask(std::ostream& os, const Mask3& m) {
  write_header(os, "TTM1", m.dims());
  os.write(reinterpret_cast<const char*>(m.bits().data()), static_cast<std::streamsize>(m.size()));
  if (!os) throw IoError("write failed");
}

Mask3 read_mask(std::istream& is) {
  const Dims d = read_header(is, "TTM1");
  std::vector<std::uint8_t> bits(d.size());
  if (!is.read(reinterpret_cast<char*>(bits.data()), static_cast<std::streamsize>(bits.size()))) {
    throw IoError("truncated mask payload");
  }
  expect_eof(is);
  for (auto b : bits) {
    if (b > 1) throw IoError("mask byte other than 0/1");
  }
  return Mask3(d, std::move(bits));
}

void save_tensor(const std::filesystem::path& path, const Tensor3& t) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  write_tensor(os, t);
}

Tensor3 load_tensor(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path.string());
  return read_tensor(is);
}

void save_mask(const std::filesystem::path& path, const Mask3& m) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  write_mask(os, m);
}

Mask3 load_mask(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path.string());
  return read_mask(is);
}

}  // namespace tnn::io
