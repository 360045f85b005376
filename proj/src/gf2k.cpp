#include "garblekit/gf2k.hpp"

#include <stdexcept>

namespace garblekit {

std::uint64_t gf_reduction_low(std::size_t k) {
  switch (k) {
    case 8: return 0x1b;    // x^8+x^4+x^3+x+1
    case 16: return 0x2b;   // x^16+x^5+x^3+x+1
    case 24: return 0x1b;
    case 32: return 0x8d;   // x^32+x^7+x^3+x^2+1
    case 40: return 0x39;
    case 48: return 0x2d;
    case 56: return 0x95;
    case 64: return 0x1b;   // x^64+x^4+x^3+x+1
    case 72: return 0x609;
    case 80: return 0x215;
    case 88: return 0xc5;
    case 96: return 0x641;
    case 104: return 0x1b;
    case 112: return 0x39;
    case 120: return 0x1b;
    case 128: return 0x87;  // x^128+x^7+x^2+x+1
    default: throw std::invalid_argument("gf2k: unsupported field size k=" + std::to_string(k));
  }
}

FieldElem fe_from_u64(std::size_t k, std::uint64_t v) {
  Label l(k / 8);
  for (std::size_t i = 0; i < l.size() && i < 8; ++i)
    l.data()[i] = static_cast<std::uint8_t>(v >> (8 * i));
  if (k < 64 && (v >> k) != 0) throw std::invalid_argument("gf2k: value does not fit in k bits");
  return FieldElem(l);
}

namespace {

void check_same_field(const FieldElem& a, const FieldElem& b) {
  if (a.k() != b.k()) throw std::invalid_argument("gf2k: field size mismatch");
}

struct W128 {
  std::uint64_t lo = 0, hi = 0;
};

W128 load(const FieldElem& a) { return {a.bits.word(0), a.bits.word(1)}; }

FieldElem store(std::size_t k, W128 w) {
  if (k < 64) w.lo &= (1ull << k) - 1;
  if (k <= 64)
    w.hi = 0;
  else if (k < 128)
    w.hi &= (1ull << (k - 64)) - 1;
  Label l(k / 8);
  l.set_word(0, w.lo);
  l.set_word(1, w.hi);
  return FieldElem(l);
}

inline int bit_at(const W128& w, std::size_t i) {
  return static_cast<int>((i < 64 ? (w.lo >> i) : (w.hi >> (i - 64))) & 1);
}

// one shift left by 1 with reduction mod the field polynomial
inline void shift_reduce(W128& w, std::size_t k, std::uint64_t red) {
  int carry = bit_at(w, k - 1);
  w.hi = (w.hi << 1) | (w.lo >> 63);
  w.lo <<= 1;
  if (k <= 64) {
    w.lo &= (k == 64) ? ~0ull : ((1ull << k) - 1);
    w.hi = 0;
  } else if (k < 128) {
    w.hi &= (1ull << (k - 64)) - 1;
  }
  if (carry) w.lo ^= red;
}

}  // namespace

FieldElem gf_add(const FieldElem& a, const FieldElem& b) {
  check_same_field(a, b);
  FieldElem r = a;
  r.bits ^= b.bits;
  return r;
}

FieldElem gf_mul(const FieldElem& a, const FieldElem& b) {
  check_same_field(a, b);
  const std::size_t k = a.k();
  const std::uint64_t red = gf_reduction_low(k);
  W128 acc{};
  W128 shifted = load(a);
  W128 bb = load(b);
  for (std::size_t i = 0; i < k; ++i) {
    if (bit_at(bb, i)) {
      acc.lo ^= shifted.lo;
      acc.hi ^= shifted.hi;
    }
    shift_reduce(shifted, k, red);
  }
  return store(k, acc);
}

FieldElem gf_double(const FieldElem& a) {
  const std::size_t k = a.k();
  W128 w = load(a);
  shift_reduce(w, k, gf_reduction_low(k));
  return store(k, w);
}

FieldElem gf_quadruple(const FieldElem& a) { return gf_double(gf_double(a)); }

FieldElem gf_inv(const FieldElem& a) {
  if (a.is_zero()) throw std::invalid_argument("gf2k: zero has no inverse");
  // a^(2^k - 2) by square-and-multiply
  const std::size_t k = a.k();
  FieldElem result = fe_from_u64(k, 1);
  FieldElem sq = a;
  for (std::size_t i = 1; i < k; ++i) {
    sq = gf_mul(sq, sq);
    result = gf_mul(result, sq);
  }
  return result;
}

Poly interpolate(std::span<const std::pair<FieldElem, FieldElem>> points) {
  if (points.size() < 2 || points.size() > 3)
    throw std::invalid_argument("interpolate: need 2 or 3 points");
  const std::size_t k = points[0].first.k();
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i].first == points[j].first)
        throw std::invalid_argument("interpolate: duplicate x-coordinate");

  const FieldElem zero = fe_from_u64(k, 0);
  Poly p;
  p.coeffs.assign(points.size(), zero);
  for (std::size_t i = 0; i < points.size(); ++i) {
    // basis_i(x) = prod_{j!=i} (x - x_j) / (x_i - x_j), expanded to coefficients
    std::vector<FieldElem> basis{fe_from_u64(k, 1)};
    FieldElem denom = fe_from_u64(k, 1);
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (j == i) continue;
      const FieldElem& xj = points[j].first;
      std::vector<FieldElem> next(basis.size() + 1, zero);
      for (std::size_t d = 0; d < basis.size(); ++d) {
        next[d + 1] = gf_add(next[d + 1], basis[d]);          // * x
        next[d] = gf_add(next[d], gf_mul(basis[d], xj));      // * x_j  (char 2: minus = plus)
      }
      basis = std::move(next);
      denom = gf_mul(denom, gf_add(points[i].first, xj));
    }
    FieldElem scale = gf_mul(points[i].second, gf_inv(denom));
    for (std::size_t d = 0; d < basis.size(); ++d)
      p.coeffs[d] = gf_add(p.coeffs[d], gf_mul(basis[d], scale));
  }
  return p;
}

FieldElem poly_eval(const Poly& p, const FieldElem& x) {
  if (p.coeffs.empty()) throw std::invalid_argument("poly_eval: empty polynomial");
  FieldElem acc = p.coeffs.back();
  for (std::size_t i = p.coeffs.size() - 1; i-- > 0;)
    acc = gf_add(gf_mul(acc, x), p.coeffs[i]);
  return acc;
}

}  // namespace garblekit
