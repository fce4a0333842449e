#ifndef ORDEPTH_TENSOR_IO_HPP_
#define ORDEPTH_TENSOR_IO_HPP_

#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "ordepth/error.hpp"
#include "ordepth/tensor.hpp"

namespace ordepth {

// Portable binary tensor format:
//   magic "ORDT", u8 version=1, u8 dtype (0 = f32), u8 rank,
//   rank x little-endian u32 extents, then the payload as little-endian
//   IEEE-754 f32 in row-major order.
// Values are stored as f32 for compactness; loading widens back to f64,
// so a save/load round trip is exact only at f32 precision.

namespace detail {

inline void put_u32_le(std::ostream& os, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                        static_cast<unsigned char>((v >> 8) & 0xff),
                        static_cast<unsigned char>((v >> 16) & 0xff),
                        static_cast<unsigned char>((v >> 24) & 0xff)};
  os.write(reinterpret_cast<const char*>(b), 4);
}

inline std::uint32_t get_u32_le(std::istream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  return static_cast<std::uint32_t>(b[0]) |
         (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) |
         (static_cast<std::uint32_t>(b[3]) << 24);
}

inline std::uint32_t f32_bits(float f) {
  std::uint32_t u;
  std::memcpy(&u, &f, 4);
  return u;
}

inline float bits_f32(std::uint32_t u) {
  float f;
  std::memcpy(&f, &u, 4);
  return f;
}

}  // namespace detail

inline void write_ordt(std::ostream& os, const Tensor& t) {
  if (t.rank() > 255) throw ArgumentError("write_ordt: rank exceeds format limit");
  os.write("ORDT", 4);
  const unsigned char version = 1, dtype = 0,
                      rank = static_cast<unsigned char>(t.rank());
  os.put(static_cast<char>(version));
  os.put(static_cast<char>(dtype));
  os.put(static_cast<char>(rank));
  for (std::size_t d : t.dims()) {
    if (d > 0xffffffffULL) throw ArgumentError("write_ordt: extent exceeds u32");
    detail::put_u32_le(os, static_cast<std::uint32_t>(d));
  }
  for (std::size_t i = 0; i < t.size(); ++i)
    detail::put_u32_le(os, detail::f32_bits(static_cast<float>(t[i])));
  if (!os) throw StateError("write_ordt: stream write failed");
}

inline Tensor read_ordt(std::istream& is) {
  char magic[4];
  is.read(magic, 4);
  if (!is || std::string(magic, 4) != "ORDT")
    throw ArgumentError("read_ordt: bad magic");
  const int version = is.get();
  const int dtype = is.get();
  const int rank = is.get();
  if (version != 1) throw ArgumentError("read_ordt: unsupported version");
  if (dtype != 0) throw ArgumentError("read_ordt: unsupported dtype tag");
  if (rank < 0) throw ArgumentError("read_ordt: truncated header");
  Shape dims(static_cast<std::size_t>(rank));
  for (auto& d : dims) d = detail::get_u32_le(is);
  if (!is) throw ArgumentError("read_ordt: truncated header");
  Tensor t(dims);
  for (std::size_t i = 0; i < t.size(); ++i)
    t[i] = static_cast<double>(detail::bits_f32(detail::get_u32_le(is)));
  if (!is) throw ArgumentError("read_ordt: truncated payload");
  return t;
}

inline void save_ordt(const std::string& path, const Tensor& t) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw StateError("save_ordt: cannot open " + path);
  write_ordt(os, t);
}

inline Tensor load_ordt(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw StateError("load_ordt: cannot open " + path);
  return read_ordt(is);
}

}  // namespace ordepth

#endif  // ORDEPTH_TENSOR_IO_HPP_
