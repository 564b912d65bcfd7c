// Disk cache for transition matrices, keyed by (kind, n, alpha). Versioned
// format: one plain-text header line, a binary payload of sign-length-prefixed
// big integers (numerator/denominator pairs in row-major order), and a
// trailing FNV-1a checksum. Any anomaly on load means recompute.
#pragma once

#include "zs/matrix.hpp"
#include "zs/numbers.hpp"
#include "zs/partition.hpp"
#include "zs/symfunc.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace zs {

namespace cache_detail {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

inline void fnv_absorb(std::uint64_t& h, const unsigned char* data, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) {
    h ^= data[i];
    h *= kFnvPrime;
  }
}

inline void append_int(std::vector<unsigned char>& buf, const Int& value) {
  std::vector<unsigned char> mag;
  if (value != 0) boost::multiprecision::export_bits(Int(boost::multiprecision::abs(value)), std::back_inserter(mag), 8);
  std::int64_t sizeField = static_cast<std::int64_t>(mag.size());
  if (value < 0) sizeField = -sizeField;
  for (int b = 0; b < 8; ++b)
    buf.push_back(static_cast<unsigned char>((static_cast<std::uint64_t>(sizeField) >> (8 * b)) & 0xff));
  buf.insert(buf.end(), mag.begin(), mag.end());
}

inline bool read_int(const std::vector<unsigned char>& buf, std::size_t& pos, Int& out) {
  if (pos + 8 > buf.size()) return false;
  std::uint64_t raw = 0;
  for (int b = 0; b < 8; ++b) raw |= static_cast<std::uint64_t>(buf[pos + static_cast<std::size_t>(b)]) << (8 * b);
  pos += 8;
  const std::int64_t sizeField = static_cast<std::int64_t>(raw);
  const std::size_t len = static_cast<std::size_t>(sizeField < 0 ? -sizeField : sizeField);
  if (len > (1u << 20) || pos + len > buf.size()) return false;
  if (!len) {
    out = 0;
    return true;
  }
  Int mag;
  boost::multiprecision::import_bits(mag, buf.begin() + static_cast<std::ptrdiff_t>(pos),
                                     buf.begin() + static_cast<std::ptrdiff_t>(pos + len), 8);
  pos += len;
  out = sizeField < 0 ? Int(-mag) : mag;
  return true;
}

inline std::string header_line(const std::string& kind, int n, const std::optional<Rat>& alpha,
                               int rows, int cols) {
  std::ostringstream h;
  h << "zsmat 1 " << kind << " " << n << " " << (alpha ? rat_string(*alpha) : "-") << " " << rows
    << " " << cols << "\n";
  return h.str();
}

}  // namespace cache_detail

inline std::filesystem::path cache_file(const std::filesystem::path& dir, const std::string& kind,
                                        int n, const std::optional<Rat>& alpha) {
  std::string name = "zs_" + kind + "_n" + std::to_string(n);
  if (alpha) {
    std::string a = rat_string(*alpha);
    for (char& c : a)
      if (c == '/') c = '_';
    name += "_a" + a;
  }
  return dir / (name + ".zsmat");
}

inline bool cache_store(const std::filesystem::path& file, const std::string& kind, int n,
                        const std::optional<Rat>& alpha, const RationalMatrix& m) {
  namespace cd = cache_detail;
  std::vector<unsigned char> payload;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      const Rat& e = m.at(i, j);
      cd::append_int(payload, boost::multiprecision::numerator(e));
      cd::append_int(payload, boost::multiprecision::denominator(e));
    }
  std::uint64_t checksum = cd::kFnvOffset;
  cd::fnv_absorb(checksum, payload.data(), payload.size());
  std::error_code ec;
  std::filesystem::create_directories(file.parent_path(), ec);
  const std::filesystem::path tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return false;
    const std::string header = cd::header_line(kind, n, alpha, m.rows(), m.cols());
    out.write(header.data(), static_cast<std::streamsize>(header.size()));
    out.write(reinterpret_cast<const char*>(payload.data()), static_cast<std::streamsize>(payload.size()));
    for (int b = 0; b < 8; ++b) {
      const char byte = static_cast<char>((checksum >> (8 * b)) & 0xff);
      out.write(&byte, 1);
    }
    if (!out) return false;
  }
  std::filesystem::rename(tmp, file, ec);
  return !ec;
}

inline std::optional<RationalMatrix> cache_load(const std::filesystem::path& file,
                                                const std::string& kind, int n,
                                                const std::optional<Rat>& alpha) {
  namespace cd = cache_detail;
  std::ifstream in(file, std::ios::binary);
  if (!in) return std::nullopt;
  std::string header;
  if (!std::getline(in, header)) return std::nullopt;
  const std::vector<Partition> labels = enumerate_partitions(n);
  const int p = static_cast<int>(labels.size());
  if (header + "\n" != cd::header_line(kind, n, alpha, p, p)) return std::nullopt;
  std::vector<unsigned char> rest((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (rest.size() < 8) return std::nullopt;
  std::uint64_t stored = 0;
  for (int b = 0; b < 8; ++b)
    stored |= static_cast<std::uint64_t>(rest[rest.size() - 8 + static_cast<std::size_t>(b)]) << (8 * b);
  rest.resize(rest.size() - 8);
  std::uint64_t checksum = cd::kFnvOffset;
  cd::fnv_absorb(checksum, rest.data(), rest.size());
  if (checksum != stored) return std::nullopt;
  RationalMatrix m(labels, labels);
  std::size_t pos = 0;
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) {
      Int num, den;
      if (!cd::read_int(rest, pos, num) || !cd::read_int(rest, pos, den)) return std::nullopt;
      if (den <= 0) return std::nullopt;
      m.at(i, j) = Rat(num, den);
    }
  if (pos != rest.size()) return std::nullopt;
  return m;
}

// Build-or-load for the named transition matrix. An empty dir disables disk
// caching. Store failures are silent: the computed matrix is still returned.
inline RationalMatrix cached_transition_matrix(const std::filesystem::path& dir,
                                               const std::string& kind, int n,
                                               const std::optional<Rat>& alpha) {
  const bool wantsAlpha = kind == "alpha-kostka";
  if (wantsAlpha && !alpha) throw domain_error("cached_transition_matrix: alpha required");
  const std::optional<Rat> key = wantsAlpha ? alpha : std::nullopt;
  if (!dir.empty())
    if (auto hit = cache_load(cache_file(dir, kind, n, key), kind, n, key)) return *hit;
  RationalMatrix m = [&] {
    if (kind == "perm") return perm_char_matrix(n);
    if (kind == "kostka") return kostka_matrix(n);
    if (kind == "alpha-kostka") return alpha_kostka_matrix(n, *alpha);
    if (kind == "zonal") return zonal_character_table(n);
    if (kind == "char") return sym_char_table(n);
    throw domain_error("cached_transition_matrix: unknown kind \"" + kind + "\"");
  }();
  if (!dir.empty()) cache_store(cache_file(dir, kind, n, key), kind, n, key, m);
  return m;
}

}  // namespace zs
