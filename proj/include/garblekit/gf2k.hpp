#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "garblekit/label.hpp"

namespace garblekit {

/// Element of GF(2^k), k a multiple of 8 in [8, 128]. The bits live in a
/// Label; bit i is the coefficient of x^i. Reduction polynomials are fixed
/// low-weight irreducibles per k (x^128+x^7+x^2+x+1, x^64+x^4+x^3+x+1,
/// x^8+x^4+x^3+x+1, and table entries for the remaining byte widths).
struct FieldElem {
  Label bits;

  FieldElem() = default;
  explicit FieldElem(Label l) : bits(std::move(l)) {}
  std::size_t k() const { return bits.bits(); }
  bool operator==(const FieldElem&) const = default;
  bool is_zero() const { return bits.is_zero(); }
};

/// Low 64 bits of the reduction polynomial for GF(2^k) (the x^k term is
/// implicit). Throws for unsupported k.
std::uint64_t gf_reduction_low(std::size_t k);

FieldElem fe_from_u64(std::size_t k, std::uint64_t v);

FieldElem gf_add(const FieldElem& a, const FieldElem& b);
FieldElem gf_mul(const FieldElem& a, const FieldElem& b);
FieldElem gf_double(const FieldElem& a);  // multiplication by x
FieldElem gf_quadruple(const FieldElem& a);
FieldElem gf_inv(const FieldElem& a);

/// Polynomial over GF(2^k) of degree <= 2, coeffs[i] the coefficient of x^i.
struct Poly {
  std::vector<FieldElem> coeffs;
  std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
};

/// Lagrange interpolation through 2 or 3 points with pairwise-distinct
/// x-coordinates. The returned polynomial passes through every input point
/// exactly (field equality).
Poly interpolate(std::span<const std::pair<FieldElem, FieldElem>> points);

FieldElem poly_eval(const Poly& p, const FieldElem& x);

}  // namespace garblekit
