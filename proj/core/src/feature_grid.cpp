#include "sftok/feature_grid.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <memory>
#include <ostream>

#include "sftok/error.hpp"

namespace sftok {
namespace {

void put_u32(std::byte* out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out[i] = static_cast<std::byte>((v >> (8 * i)) & 0xFFu);
}

std::uint32_t get_u32(const std::byte* in) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(in[i]) << (8 * i);
  return v;
}

std::uint32_t checked_u32(std::size_t v, const char* what) {
  if (v > std::numeric_limits<std::uint32_t>::max())
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + " does not fit in u32");
  return static_cast<std::uint32_t>(v);
}

std::array<std::byte, kVfgfHeaderSize> make_header(const GridShape& s) {
  std::array<std::byte, kVfgfHeaderSize> h{};
  std::memcpy(h.data(), kVfgfMagic, sizeof(kVfgfMagic));
  put_u32(h.data() + 8, kVfgfVersion);
  put_u32(h.data() + 12, checked_u32(s.n_frames, "n_frames"));
  put_u32(h.data() + 16, checked_u32(s.height, "height"));
  put_u32(h.data() + 20, checked_u32(s.width, "width"));
  put_u32(h.data() + 24, checked_u32(s.channels, "channels"));
  return h;
}

void encode_payload(std::span<const float> values, std::byte* out) {
  for (std::size_t i = 0; i < values.size(); ++i)
    put_u32(out + 4 * i, std::bit_cast<std::uint32_t>(values[i]));
}

// Validates magic and version, returns the declared shape.
GridShape parse_header(std::span<const std::byte> header) {
  if (header.size() < sizeof(kVfgfMagic) ||
      std::memcmp(header.data(), kVfgfMagic, sizeof(kVfgfMagic)) != 0)
    throw Error(ErrorCode::BadMagic, "stream does not start with VFGF0001");
  if (header.size() < kVfgfHeaderSize)
    throw Error(ErrorCode::TruncatedPayload, "header is " + std::to_string(header.size()) +
                                                 " bytes, expected " +
                                                 std::to_string(kVfgfHeaderSize));
  const std::uint32_t version = get_u32(header.data() + 8);
  if (version != kVfgfVersion)
    throw Error(ErrorCode::UnsupportedVersion, "version " + std::to_string(version));
  GridShape s;
  s.n_frames = get_u32(header.data() + 12);
  s.height = get_u32(header.data() + 16);
  s.width = get_u32(header.data() + 20);
  s.channels = get_u32(header.data() + 24);
  std::size_t total = 1;
  for (std::size_t d : {s.n_frames, s.height, s.width, s.channels}) {
    if (d != 0 && total > std::numeric_limits<std::size_t>::max() / 4 / d)
      throw Error(ErrorCode::TruncatedPayload, "declared payload exceeds addressable size");
    total *= d;
  }
  return s;
}

std::vector<float> decode_payload(std::span<const std::byte> bytes) {
  std::vector<float> out(bytes.size() / 4);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = std::bit_cast<float>(get_u32(bytes.data() + 4 * i));
  return out;
}

}  // namespace

FeatureGrid::FeatureGrid(GridShape shape, std::vector<float> data)
    : shape_(shape), data_(std::move(data)) {
  if (shape_.n_frames == 0 || shape_.height == 0 || shape_.width == 0 || shape_.channels == 0)
    throw Error(ErrorCode::DimensionMismatch, "all dimensions must be >= 1");
  if (data_.size() != shape_.elements())
    throw Error(ErrorCode::DimensionMismatch,
                "data length " + std::to_string(data_.size()) + " != " +
                    std::to_string(shape_.elements()));
  const auto bad = std::find_if(data_.begin(), data_.end(), [](float v) { return !std::isfinite(v); });
  if (bad != data_.end())
    throw Error(ErrorCode::NonFiniteValue,
                "non-finite value at index " + std::to_string(bad - data_.begin()));
}

bool operator==(const FeatureGrid& a, const FeatureGrid& b) {
  if (a.shape_ != b.shape_) return false;
  // Bitwise comparison so -0.0f and 0.0f are distinguished, matching the file format.
  return std::memcmp(a.data_.data(), b.data_.data(), a.data_.size() * sizeof(float)) == 0;
}

FeatureGrid new_grid(std::size_t n_frames, std::size_t height, std::size_t width,
                     std::size_t channels, std::vector<float> data) {
  return FeatureGrid(GridShape{n_frames, height, width, channels}, std::move(data));
}

TokenSequence::TokenSequence(std::size_t channels, std::vector<float> values)
    : channels_(channels), values_(std::move(values)) {
  if (channels_ == 0) throw Error(ErrorCode::DimensionMismatch, "token width must be >= 1");
  if (values_.size() % channels_ != 0)
    throw Error(ErrorCode::DimensionMismatch, "values are not a whole number of tokens");
}

std::vector<std::byte> encode_vfgf(const FeatureGrid& grid) {
  const auto header = make_header(grid.shape());
  std::vector<std::byte> out(kVfgfHeaderSize + 4 * grid.data().size());
  std::memcpy(out.data(), header.data(), header.size());
  encode_payload(grid.data(), out.data() + kVfgfHeaderSize);
  return out;
}

FeatureGrid decode_vfgf(std::span<const std::byte> bytes) {
  const GridShape s = parse_header(bytes);
  const std::size_t payload = bytes.size() - kVfgfHeaderSize;
  if (payload / 4 < s.elements())
    throw Error(ErrorCode::TruncatedPayload, "payload has " + std::to_string(payload) +
                                                 " bytes, expected " +
                                                 std::to_string(4 * s.elements()));
  return FeatureGrid(s, decode_payload(bytes.subspan(kVfgfHeaderSize, 4 * s.elements())));
}

std::size_t write_vfgf(const FeatureGrid& grid, std::ostream& sink) {
  const auto header = make_header(grid.shape());
  sink.write(reinterpret_cast<const char*>(header.data()), header.size());

  constexpr std::size_t kChunk = 1 << 16;
  std::vector<std::byte> buf(4 * kChunk);
  const auto values = grid.data();
  for (std::size_t pos = 0; pos < values.size() && sink; pos += kChunk) {
    const std::size_t n = std::min(kChunk, values.size() - pos);
    encode_payload(values.subspan(pos, n), buf.data());
    sink.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(4 * n));
  }
  if (!sink) throw Error(ErrorCode::IoFailure, "write to sink failed");
  return kVfgfHeaderSize + 4 * values.size();
}

FeatureGrid read_vfgf(std::istream& source) {
  std::array<std::byte, kVfgfHeaderSize> header{};
  source.read(reinterpret_cast<char*>(header.data()), header.size());
  const GridShape s = parse_header(std::span<const std::byte>(header.data(), source.gcount()));

  // Read incrementally so a corrupt header cannot force one huge allocation.
  const std::size_t expected = s.elements();
  std::vector<float> values;
  constexpr std::size_t kChunk = 1 << 16;
  std::vector<std::byte> buf(4 * kChunk);
  while (values.size() < expected) {
    const std::size_t want = std::min(kChunk, expected - values.size());
    source.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(4 * want));
    const auto got = static_cast<std::size_t>(source.gcount());
    if (got != 4 * want)
      throw Error(ErrorCode::TruncatedPayload,
                  "payload ended after " + std::to_string(4 * values.size() + got) + " of " +
                      std::to_string(4 * expected) + " bytes");
    const auto chunk = decode_payload(std::span<const std::byte>(buf.data(), got));
    values.insert(values.end(), chunk.begin(), chunk.end());
  }
  return FeatureGrid(s, std::move(values));
}

void save_vfgf(const FeatureGrid& grid, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot open " + path + " for writing");
  write_vfgf(grid, out);
  out.close();
  if (!out) throw Error(ErrorCode::IoFailure, "cannot finish writing " + path);
}

FeatureGrid load_vfgf(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path);
  return read_vfgf(in);
}

bool is_vfgf_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  char magic[sizeof(kVfgfMagic)] = {};
  if (!in.read(magic, sizeof(magic))) return false;
  return std::memcmp(magic, kVfgfMagic, sizeof(magic)) == 0;
}

std::string checksum(const FeatureGrid& grid) {
  const auto bytes = encode_vfgf(grid);
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1)
    throw Error(ErrorCode::IoFailure, "sha256 failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    hex.push_back(kHex[digest[i] >> 4]);
    hex.push_back(kHex[digest[i] & 0x0F]);
  }
  return hex;
}

}  // namespace sftok
