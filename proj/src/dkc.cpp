#include "garblekit/dkc.hpp"

#include <openssl/evp.h>

#include <atomic>
#include <cstring>
#include <stdexcept>

#include "garblekit/gf2k.hpp"

namespace garblekit {

namespace {

std::atomic<std::uint64_t> g_fixed_key_schedules{0};

// All-zero fixed key k_c; the key schedule runs once per thread.
struct FixedKeyAesCtx {
  EVP_CIPHER_CTX* ctx;
  FixedKeyAesCtx() : ctx(EVP_CIPHER_CTX_new()) {
    static const std::uint8_t kc[16] = {};
    if (!ctx || EVP_EncryptInit_ex(ctx, EVP_aes_128_ecb(), nullptr, kc, nullptr) != 1)
      throw std::runtime_error("dkc: fixed-key AES init failed");
    EVP_CIPHER_CTX_set_padding(ctx, 0);
    g_fixed_key_schedules.fetch_add(1, std::memory_order_relaxed);
  }
  ~FixedKeyAesCtx() { EVP_CIPHER_CTX_free(ctx); }
};

void aes128_fixed(const std::uint8_t in[16], std::uint8_t out[16]) {
  thread_local FixedKeyAesCtx fk;
  int outl = 0;
  if (EVP_EncryptUpdate(fk.ctx, out, &outl, in, 16) != 1 || outl != 16)
    throw std::runtime_error("dkc: AES block failed");
}

struct EvpCtx {
  EVP_CIPHER_CTX* ctx;
  EvpCtx() : ctx(EVP_CIPHER_CTX_new()) {}
  ~EvpCtx() { EVP_CIPHER_CTX_free(ctx); }
};

void aes256_block(const std::uint8_t key[32], const std::uint8_t in[16], std::uint8_t out[16]) {
  thread_local EvpCtx c;
  EVP_CIPHER_CTX* ctx = c.ctx;
  if (EVP_EncryptInit_ex(ctx, EVP_aes_256_ecb(), nullptr, key, nullptr) != 1)
    throw std::runtime_error("dkc: AES-256 init failed");
  EVP_CIPHER_CTX_set_padding(ctx, 0);
  int outl = 0;
  if (EVP_EncryptUpdate(ctx, out, &outl, in, 16) != 1 || outl != 16)
    throw std::runtime_error("dkc: AES-256 block failed");
}

Label truncated_hash(std::initializer_list<std::span<const std::uint8_t>> parts, std::size_t nbytes) {
  std::uint8_t digest[32];
  sha256(parts, digest);
  return Label(std::span<const std::uint8_t>(digest, nbytes));
}

// tweak as a k-bit block: the 9-byte canonical encoding zero-padded
Label tweak_block(Tweak t, std::size_t nbytes) {
  auto e = t.encode();
  Label l(nbytes);
  std::memcpy(l.data(), e.data(), nbytes < e.size() ? nbytes : e.size());
  return l;
}

Label dkc_mask(DkcVariant v, const Label& a, const Label& b, Tweak tweak) {
  const std::size_t nbytes = a.size();
  const auto t = tweak.encode();
  const std::span<const std::uint8_t> ts(t);
  switch (v) {
    case DkcVariant::TwoPrf: {
      Label pa = truncated_hash({a.bytes(), ts}, nbytes);
      Label pb = truncated_hash({b.bytes(), ts}, nbytes);
      return pa ^ pb;
    }
    case DkcVariant::SingleHash:
      return truncated_hash({a.bytes(), b.bytes(), ts}, nbytes);
    case DkcVariant::KeyedAes256: {
      if (nbytes == 16) {
        std::uint8_t key[32];
        std::memcpy(key, a.data(), 16);
        std::memcpy(key + 16, b.data(), 16);
        std::uint8_t out[16];
        auto blk = tweak_block(tweak, 16);
        aes256_block(key, blk.data(), out);
        return Label(std::span<const std::uint8_t>(out, 16));
      }
      static const std::uint8_t tag[] = {'a', 'e', 's', '2', '5', '6', '-', 's', 'u', 'r'};
      return truncated_hash({std::span<const std::uint8_t>(tag, sizeof tag), a.bytes(), b.bytes(), ts},
                            nbytes);
    }
    case DkcVariant::FixedKeyAes: {
      Label k = gf_double_label(a) ^ gf_quadruple_label(b) ^ tweak_block(tweak, nbytes);
      if (nbytes == 16) {
        std::uint8_t out[16];
        aes128_fixed(k.data(), out);
        return Label(std::span<const std::uint8_t>(out, 16)) ^ k;
      }
      static const std::uint8_t tag[] = {'f', 'k', 'p', 'e', 'r', 'm', '-', 's', 'u', 'r'};
      return truncated_hash({std::span<const std::uint8_t>(tag, sizeof tag), k.bytes()}, nbytes) ^ k;
    }
  }
  throw std::invalid_argument("dkc: unknown variant");
}

}  // namespace

const char* dkc_variant_name(DkcVariant v) {
  switch (v) {
    case DkcVariant::TwoPrf: return "two-prf";
    case DkcVariant::SingleHash: return "single-hash";
    case DkcVariant::KeyedAes256: return "keyed-aes256";
    case DkcVariant::FixedKeyAes: return "fixed-key-aes";
  }
  return "?";
}

Label dkc_encrypt(DkcVariant v, const Label& key_a, const Label& key_b, Tweak tweak,
                  const Label& payload) {
  if (key_a.size() != key_b.size() || key_a.size() != payload.size())
    throw std::invalid_argument("dkc: key/payload length mismatch");
  return dkc_mask(v, key_a, key_b, tweak) ^ payload;
}

Label dkc_decrypt(DkcVariant v, const Label& key_a, const Label& key_b, Tweak tweak,
                  const Label& ciphertext) {
  return dkc_encrypt(v, key_a, key_b, tweak, ciphertext);
}

bool dkc_is_secure(DkcVariant v, std::size_t k_bits) {
  if (k_bits < 64) return false;
  if (v == DkcVariant::KeyedAes256 || v == DkcVariant::FixedKeyAes) return k_bits == 128;
  return true;
}

Label gf_double_label(const Label& x) { return gf_double(FieldElem(x)).bits; }
Label gf_quadruple_label(const Label& x) { return gf_quadruple(FieldElem(x)).bits; }

std::uint64_t fixed_key_schedule_count() {
  return g_fixed_key_schedules.load(std::memory_order_relaxed);
}

}  // namespace garblekit
