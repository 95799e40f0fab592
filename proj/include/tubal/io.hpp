#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "tubal/freq.hpp"
#include "tubal/tensor3.hpp"

namespace tubal {

static_assert(std::endian::native == std::endian::little,
              "TUB3 I/O assumes a little-endian host");

// Binary tensor file:
//   magic "TUB3" | version u32 | n1 u64 | n2 u64 | n3 u64
//   | ordering u32 | fft convention u32
//   | n1*n2*n3 little-endian f64, slice-major (column-major within a slice)
inline constexpr std::uint32_t kTub3Version = 1;

inline void write_tub3(const std::filesystem::path& path, const Tensor3& t) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("write_tub3: cannot open " + path.string());
  auto put = [&out](const void* p, std::size_t n) {
    out.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
  };
  put("TUB3", 4);
  const std::uint32_t version = kTub3Version;
  put(&version, 4);
  const std::uint64_t dims[3] = {static_cast<std::uint64_t>(t.n1()),
                                 static_cast<std::uint64_t>(t.n2()),
                                 static_cast<std::uint64_t>(t.n3())};
  put(dims, sizeof(dims));
  const std::uint32_t layout[2] = {static_cast<std::uint32_t>(kLayout.ordering),
                                   static_cast<std::uint32_t>(kLayout.fft)};
  put(layout, sizeof(layout));
  for (Index k = 0; k < t.n3(); ++k)
    put(t.slice(k).data(), static_cast<std::size_t>(t.slice(k).size()) * sizeof(double));
  if (!out) throw IoError("write_tub3: short write to " + path.string());
}

inline Tensor3 read_tub3(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("read_tub3: cannot open " + path.string());
  auto get = [&in, &path](void* p, std::size_t n) {
    in.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
    if (!in) throw IoError("read_tub3: truncated file " + path.string());
  };
  char magic[4];
  get(magic, 4);
  if (std::memcmp(magic, "TUB3", 4) != 0) throw IoError("read_tub3: bad magic in " + path.string());
  std::uint32_t version = 0;
  get(&version, 4);
  if (version != kTub3Version) throw IoError("read_tub3: unsupported version");
  std::uint64_t dims[3];
  get(dims, sizeof(dims));
  std::uint32_t layout[2];
  get(layout, sizeof(layout));
  if (layout[0] != static_cast<std::uint32_t>(kLayout.ordering) ||
      layout[1] != static_cast<std::uint32_t>(kLayout.fft))
    throw IoError("read_tub3: unknown layout descriptor");
  Tensor3 t(static_cast<Index>(dims[0]), static_cast<Index>(dims[1]), static_cast<Index>(dims[2]));
  for (Index k = 0; k < t.n3(); ++k)
    get(t.slice(k).data(), static_cast<std::size_t>(t.slice(k).size()) * sizeof(double));
  return t;
}

}  // namespace tubal
