#pragma once

#include <cstdint>

#include "garblekit/hash.hpp"
#include "garblekit/label.hpp"

namespace garblekit {

/// The four dual-key cipher constructions. All are mask-then-XOR, so
/// decryption equals encryption under the same keys and tweak.
///
///   TwoPrf       PRF(A,T) ^ PRF(B,T) ^ C          (PRF = keyed hash)
///   SingleHash   H(A||B||T) ^ C
///   KeyedAes256  AES256_{A||B}(T) ^ C             (key schedule per call)
///   FixedKeyAes  AES128_{kc}(K) ^ K ^ C,  K = 2A ^ 4B ^ T
///
/// The block-cipher variants are the real thing only at k=128 (the AES
/// block size); below that a hash-based surrogate permutation stands in
/// and dkc_is_secure reports false.
enum class DkcVariant : std::uint8_t {
  TwoPrf = 0,
  SingleHash = 1,
  KeyedAes256 = 2,
  FixedKeyAes = 3,
};

const char* dkc_variant_name(DkcVariant v);

Label dkc_encrypt(DkcVariant v, const Label& key_a, const Label& key_b, Tweak tweak,
                  const Label& payload);
Label dkc_decrypt(DkcVariant v, const Label& key_a, const Label& key_b, Tweak tweak,
                  const Label& ciphertext);

/// k "secure" needs >= 64 bits and, for the AES-backed variants, exactly 128.
bool dkc_is_secure(DkcVariant v, std::size_t k_bits);

/// Doubling in GF(2^k), used by the fixed-key construction's K = 2A ^ 4B ^ T.
Label gf_double_label(const Label& x);
Label gf_quadruple_label(const Label& x);

/// Number of times the fixed-key AES key schedule has been run (it is set up
/// once per thread and reused; the counter lets tests observe that).
std::uint64_t fixed_key_schedule_count();

}  // namespace garblekit
