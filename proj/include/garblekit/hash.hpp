#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>

#include "garblekit/label.hpp"

namespace garblekit {

/// Per-encryption tweak: 8-byte big-endian gate id followed by one byte of
/// position bits. Unique per DKC call within one garbled circuit.
struct Tweak {
  std::uint64_t gate_id = 0;
  std::uint8_t pos_bits = 0;  // 0..2 bits used

  std::array<std::uint8_t, 9> encode() const {
    std::array<std::uint8_t, 9> e{};
    for (int i = 0; i < 8; ++i) e[i] = static_cast<std::uint8_t>(gate_id >> (8 * (7 - i)));
    e[8] = pos_bits;
    return e;
  }
};

/// SHA-256 over the concatenation of the given parts.
void sha256(std::initializer_list<std::span<const std::uint8_t>> parts,
            std::uint8_t out[32]);

struct KdfOut {
  Label v;      // first k bits
  int bit = 0;  // the (k+1)-th bit; meaningful only when out_bits == k+1
};

/// Random-oracle style key derivation used by the hash-based gate
/// constructions: H(a [, b], tweak) truncated to out_bits, where
/// out_bits is k or k+1 and k is the label width.
KdfOut hash_kdf(const Label& a, const Label* b, Tweak tweak, std::size_t out_bits);

inline KdfOut hash_kdf(const Label& a, Tweak tweak, std::size_t out_bits) {
  return hash_kdf(a, nullptr, tweak, out_bits);
}
inline KdfOut hash_kdf(const Label& a, const Label& b, Tweak tweak, std::size_t out_bits) {
  return hash_kdf(a, &b, tweak, out_bits);
}

}  // namespace garblekit
