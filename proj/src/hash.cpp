#include "garblekit/hash.hpp"

#include <openssl/evp.h>

#include <cstring>
#include <stdexcept>

namespace garblekit {

namespace {

struct MdCtx {
  EVP_MD_CTX* ctx;
  MdCtx() : ctx(EVP_MD_CTX_new()) {}
  ~MdCtx() { EVP_MD_CTX_free(ctx); }
};

}  // namespace

void sha256(std::initializer_list<std::span<const std::uint8_t>> parts,
            std::uint8_t out[32]) {
  thread_local MdCtx md;
  if (EVP_DigestInit_ex(md.ctx, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 init failed");
  for (const auto& p : parts)
    if (!p.empty() && EVP_DigestUpdate(md.ctx, p.data(), p.size()) != 1)
      throw std::runtime_error("sha256 update failed");
  unsigned int len = 0;
  if (EVP_DigestFinal_ex(md.ctx, out, &len) != 1 || len != 32)
    throw std::runtime_error("sha256 final failed");
}

KdfOut hash_kdf(const Label& a, const Label* b, Tweak tweak, std::size_t out_bits) {
  const std::size_t k = a.bits();
  if (out_bits != k && out_bits != k + 1)
    throw std::invalid_argument("hash_kdf: out_bits must be k or k+1");
  if (b && b->size() != a.size())
    throw std::invalid_argument("hash_kdf: input width mismatch");

  auto t = tweak.encode();
  std::uint8_t digest[32];
  if (b)
    sha256({a.bytes(), b->bytes(), std::span<const std::uint8_t>(t)}, digest);
  else
    sha256({a.bytes(), std::span<const std::uint8_t>(t)}, digest);

  KdfOut out;
  out.v = Label(std::span<const std::uint8_t>(digest, a.size()));
  if (out_bits == k + 1) out.bit = digest[a.size()] & 1;
  return out;
}

}  // namespace garblekit
