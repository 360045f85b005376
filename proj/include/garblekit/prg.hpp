#pragma once

#include <cstdint>
#include <memory>

#include "garblekit/label.hpp"

namespace garblekit {

/// Deterministic pseudo-random generator: AES-128 in counter mode, the key
/// derived from the seed by hashing. The same seed always yields the same
/// stream on every platform, which is what makes garbling replayable.
class Prg {
 public:
  explicit Prg(std::uint64_t seed);
  ~Prg();
  Prg(Prg&&) noexcept;
  Prg& operator=(Prg&&) noexcept;
  Prg(const Prg&) = delete;
  Prg& operator=(const Prg&) = delete;

  void fill(std::uint8_t* out, std::size_t n);
  Bytes bytes(std::size_t n) {
    Bytes b(n);
    fill(b.data(), n);
    return b;
  }
  Label label(std::size_t nbytes) {
    Label l(nbytes);
    fill(l.data(), nbytes);
    return l;
  }
  std::uint64_t u64();
  int bit() { return static_cast<int>(u64() & 1); }
  /// uniform value in [0, bound)
  std::uint64_t below(std::uint64_t bound);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace garblekit
