#include "garblekit/prg.hpp"

#include <openssl/evp.h>

#include <cstring>
#include <stdexcept>

#include "garblekit/hash.hpp"

namespace garblekit {

struct Prg::Impl {
  EVP_CIPHER_CTX* ctx = nullptr;
  std::uint64_t counter = 0;
  std::uint8_t buf[16];
  std::size_t avail = 0;

  explicit Impl(std::uint64_t seed) {
    std::uint8_t seed_bytes[8];
    for (int i = 0; i < 8; ++i) seed_bytes[i] = static_cast<std::uint8_t>(seed >> (8 * i));
    std::uint8_t digest[32];
    sha256({std::span<const std::uint8_t>(seed_bytes, 8)}, digest);
    ctx = EVP_CIPHER_CTX_new();
    if (!ctx || EVP_EncryptInit_ex(ctx, EVP_aes_128_ecb(), nullptr, digest, nullptr) != 1)
      throw std::runtime_error("prg: AES init failed");
    EVP_CIPHER_CTX_set_padding(ctx, 0);
  }
  ~Impl() {
    if (ctx) EVP_CIPHER_CTX_free(ctx);
  }

  void refill() {
    std::uint8_t block[16] = {};
    std::memcpy(block, &counter, 8);
    counter++;
    int outl = 0;
    if (EVP_EncryptUpdate(ctx, buf, &outl, block, 16) != 1 || outl != 16)
      throw std::runtime_error("prg: AES block failed");
    avail = 16;
  }
};

Prg::Prg(std::uint64_t seed) : impl_(std::make_unique<Impl>(seed)) {}
Prg::~Prg() = default;
Prg::Prg(Prg&&) noexcept = default;
Prg& Prg::operator=(Prg&&) noexcept = default;

void Prg::fill(std::uint8_t* out, std::size_t n) {
  while (n > 0) {
    if (impl_->avail == 0) impl_->refill();
    std::size_t take = n < impl_->avail ? n : impl_->avail;
    std::memcpy(out, impl_->buf + (16 - impl_->avail), take);
    impl_->avail -= take;
    out += take;
    n -= take;
  }
}

std::uint64_t Prg::u64() {
  std::uint64_t v;
  fill(reinterpret_cast<std::uint8_t*>(&v), 8);
  return v;
}

std::uint64_t Prg::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("prg: zero bound");
  // rejection sampling keeps the draw uniform
  std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  for (;;) {
    std::uint64_t v = u64();
    if (v < limit) return v % bound;
  }
}

}  // namespace garblekit
