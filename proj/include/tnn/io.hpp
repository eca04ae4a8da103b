#pragma once

#include <filesystem>
#include <iosfwd>

#include "tnn/tensor.hpp"

namespace tnn::io {

// TT3D v1 layout (all integers little-endian):
//   "TT3D" | 0x01 | u32 n1 | u32 n2 | u32 n3 | n1*n2*n3 x f64 in Tensor3 storage order
// Masks use magic "TTM1" with the same header followed by one byte (0/1) per entry.

void write_tensor(std::ostream& os, const Tensor3& t);
Tensor3 read_tensor(std::istream& is);

void write_mask(std::ostream& os, const Mask3& m);
Mask3 read_mask(std::istream& is);

void save_tensor(const std::filesystem::path& path, const Tensor3& t);
Tensor3 load_tensor(const std::filesystem::path& path);

void save_mask(const std::filesystem::path& path, const Mask3& m);
Mask3 load_mask(const std::filesystem::path& path);

}  // namespace tnn::io
