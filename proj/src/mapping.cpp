#include "garblekit/mapping.hpp"

#include <gmpxx.h>

namespace garblekit {

CircuitMapping circuit_mapping(const Circuit& c) {
  validate(c);
  CircuitMapping map;
  map.M = c.n + c.q() - c.m;
  map.N = 2 * c.q();
  map.inv.reserve(map.N);
  map.targets.assign(map.M, {});
  for (std::uint32_t t = 0; t < c.q(); ++t) {
    const GateSpec& g = c.gates[t];
    // outgoing-wire indices coincide with wire numbers: ow_i = x_i for
    // inputs, ow_{n+t} = output of non-output gate t
    for (std::uint32_t src : {g.in_a - 1, g.in_b - 1}) {
      map.targets[src].push_back(static_cast<std::uint32_t>(map.inv.size()));
      map.inv.push_back(src);
    }
  }
  return map;
}

std::string count_mappings(std::uint32_t M, std::uint32_t N) {
  if (M == 0) return N == 0 ? "1" : "0";
  mpz_class total = 0;
  for (std::uint32_t i = 0; i <= M; ++i) {
    mpz_class term;
    mpz_bin_uiui(term.get_mpz_t(), M, i);
    mpz_class pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), M - i, N);
    term *= pw;
    if (i % 2 == 0)
      total += term;
    else
      total -= term;
  }
  return total.get_str();
}

}  // namespace garblekit
