#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>

#include "nerf/dense_matrix.hpp"
#include "nerf/types.hpp"

namespace nerf {

// Binary layout: magic "NERF", version u32, rows u64, cols u64, field u8
// (0 real, 1 complex), then row-major little-endian f64 payload, complex
// entries as (re, im) pairs.

namespace detail {

inline constexpr std::uint32_t kMatrixFormatVersion = 1;

inline void put_u64(std::ostream& os, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = (unsigned char)((v >> (8 * i)) & 0xff);
  os.write(reinterpret_cast<const char*>(b), 8);
}

inline std::uint64_t get_u64(std::istream& is) {
  unsigned char b[8];
  is.read(reinterpret_cast<char*>(b), 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= std::uint64_t(b[i]) << (8 * i);
  return v;
}

inline void put_u32(std::ostream& os, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = (unsigned char)((v >> (8 * i)) & 0xff);
  os.write(reinterpret_cast<const char*>(b), 4);
}

inline std::uint32_t get_u32(std::istream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= std::uint32_t(b[i]) << (8 * i);
  return v;
}

}  // namespace detail

inline void dump_matrix(const DenseMatrix& m, std::ostream& os) {
  os.write("NERF", 4);
  detail::put_u32(os, detail::kMatrixFormatVersion);
  detail::put_u64(os, std::uint64_t(m.rows()));
  detail::put_u64(os, std::uint64_t(m.cols()));
  unsigned char f = m.field() == Field::Complex ? 1 : 0;
  os.write(reinterpret_cast<const char*>(&f), 1);
  const double* d = m.data();
  for (std::size_t i = 0; i < m.value_count(); ++i)
    detail::put_u64(os, std::bit_cast<std::uint64_t>(d[i]));
}

inline DenseMatrix load_matrix(std::istream& is) {
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "NERF", 4) != 0)
    throw DomainError("load_matrix: bad magic");
  std::uint32_t version = detail::get_u32(is);
  if (version != detail::kMatrixFormatVersion)
    throw DomainError("load_matrix: unsupported version");
  std::uint64_t rows = detail::get_u64(is);
  std::uint64_t cols = detail::get_u64(is);
  unsigned char f = 0;
  is.read(reinterpret_cast<char*>(&f), 1);
  if (!is || f > 1) throw DomainError("load_matrix: bad field tag");
  // guards the allocation against garbage headers
  if (rows > (1ULL << 32) || cols > (1ULL << 32) ||
      (rows != 0 && cols > (1ULL << 44) / rows))
    throw DomainError("load_matrix: implausible shape");
  DenseMatrix m(std::int64_t(rows), std::int64_t(cols), f ? Field::Complex : Field::Real);
  double* d = m.data();
  for (std::size_t i = 0; i < m.value_count(); ++i)
    d[i] = std::bit_cast<double>(detail::get_u64(is));
  if (!is) throw DomainError("load_matrix: truncated payload");
  return m;
}

}  // namespace nerf
