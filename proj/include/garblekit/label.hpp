#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace garblekit {

using Bytes = std::vector<std::uint8_t>;
using BitVec = std::vector<std::uint8_t>;  // one 0/1 value per element

constexpr std::size_t kMaxLabelBytes = 16;

/// A k-bit wire label / masking value, k a multiple of 8 in [8, 128].
/// Bit 0 is the least significant bit of byte 0; bytes past size() stay zero,
/// so whole-array comparison is value comparison.
class Label {
 public:
  Label() = default;
  explicit Label(std::size_t nbytes) : len_(static_cast<std::uint8_t>(nbytes)) {
    check_len(nbytes);
  }
  Label(std::span<const std::uint8_t> bytes) : len_(static_cast<std::uint8_t>(bytes.size())) {
    check_len(bytes.size());
    std::memcpy(b_.data(), bytes.data(), bytes.size());
  }

  static Label zero(std::size_t nbytes) { return Label(nbytes); }

  std::size_t size() const { return len_; }
  std::size_t bits() const { return std::size_t{len_} * 8; }
  std::uint8_t* data() { return b_.data(); }
  const std::uint8_t* data() const { return b_.data(); }
  std::span<const std::uint8_t> bytes() const { return {b_.data(), len_}; }

  int lsb() const { return b_[0] & 1; }
  void set_lsb(int v) { b_[0] = static_cast<std::uint8_t>((b_[0] & ~1u) | (v & 1)); }

  bool is_zero() const {
    for (std::size_t i = 0; i < len_; ++i)
      if (b_[i]) return false;
    return true;
  }

  Label& operator^=(const Label& o) {
    for (std::size_t i = 0; i < kMaxLabelBytes; ++i) b_[i] ^= o.b_[i];
    return *this;
  }
  friend Label operator^(Label a, const Label& b) { return a ^= b; }

  bool operator==(const Label&) const = default;

  std::string hex() const {
    static const char* d = "0123456789abcdef";
    std::string s;
    for (std::size_t i = 0; i < len_; ++i) {
      s.push_back(d[b_[i] >> 4]);
      s.push_back(d[b_[i] & 15]);
    }
    return s;
  }

  // little-endian 64-bit views, for field arithmetic
  std::uint64_t word(int i) const {
    std::uint64_t w;
    std::memcpy(&w, b_.data() + 8 * i, 8);
    return w;
  }
  void set_word(int i, std::uint64_t w) { std::memcpy(b_.data() + 8 * i, &w, 8); }

 private:
  static void check_len(std::size_t n) {
    if (n == 0 || n > kMaxLabelBytes)
      throw std::invalid_argument("label length must be 1..16 bytes");
  }
  std::array<std::uint8_t, kMaxLabelBytes> b_{};
  std::uint8_t len_ = kMaxLabelBytes;
};

inline void append_bytes(Bytes& out, std::span<const std::uint8_t> s) {
  out.insert(out.end(), s.begin(), s.end());
}

inline void append_u32(Bytes& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

inline void append_u64(Bytes& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

/// Little-endian cursor over a received byte payload.
class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> s) : s_(s) {}
  std::uint8_t u8() { return take(1)[0]; }
  std::uint32_t u32() {
    auto b = take(4);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
  }
  std::uint64_t u64() {
    std::uint64_t v = 0;
    auto b = take(8);
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
  }
  Label label(std::size_t nbytes) { return Label(take(nbytes)); }
  std::span<const std::uint8_t> take(std::size_t n) {
    if (n > s_.size()) throw std::runtime_error("malformed payload: truncated");
    auto r = s_.first(n);
    s_ = s_.subspan(n);
    return r;
  }
  bool empty() const { return s_.empty(); }
  std::size_t remaining() const { return s_.size(); }

 private:
  std::span<const std::uint8_t> s_;
};

}  // namespace garblekit
