#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "garblekit/label.hpp"

namespace garblekit {

/// One 2-input gate. Wires are numbered from 1; the gate producing wire g
/// has inputs A(g)=in_a and B(g)=in_b with in_a <= in_b < g (equality only
/// for degenerate truth tables). truth_table bit (2i+j) holds G(g,(i,j)).
struct GateSpec {
  std::uint32_t out = 0;
  std::uint32_t in_a = 0;
  std::uint32_t in_b = 0;
  std::uint8_t truth_table = 0;  // 4 bits

  int value(int i, int j) const { return (truth_table >> (2 * i + j)) & 1; }
  bool operator==(const GateSpec&) const = default;
};

enum class GateClass : std::uint8_t { Xor, Xnor, And, OtherOdd, Trivial };

/// Pure function of the 4 truth-table bits. "Even" nontrivial gates are
/// exactly XOR and XNOR; "odd" gates have a 3-1 output split; everything
/// that depends on at most one input is trivial.
GateClass classify_gate(std::uint8_t truth_table);

inline bool is_even_gate(GateClass c) { return c == GateClass::Xor || c == GateClass::Xnor; }
inline bool is_odd_gate(GateClass c) { return c == GateClass::And || c == GateClass::OtherOdd; }

/// Which inputs the truth table actually reads.
bool tt_depends_on_a(std::uint8_t truth_table);
bool tt_depends_on_b(std::uint8_t truth_table);

struct GateStats {
  std::uint64_t xor_count = 0;
  std::uint64_t xnor_count = 0;
  std::uint64_t and_count = 0;
  std::uint64_t other_odd_count = 0;
  std::uint64_t trivial_count = 0;

  std::uint64_t total() const {
    return xor_count + xnor_count + and_count + other_odd_count + trivial_count;
  }
  std::uint64_t odd() const { return and_count + other_odd_count; }
  std::uint64_t even() const { return xor_count + xnor_count; }
};

/// Boolean circuit f = (n, m, q, A, B, G). Wires 1..n are inputs, wire n+g
/// is the output of gate g, and the last m wires are the circuit outputs.
/// Immutable after construction; safe to share across threads.
struct Circuit {
  std::uint32_t n = 0;  // input wires
  std::uint32_t m = 0;  // output wires
  std::vector<GateSpec> gates;  // indexed so gates[i].out == n + 1 + i

  std::uint32_t q() const { return static_cast<std::uint32_t>(gates.size()); }
  std::uint32_t wires() const { return n + q(); }
  std::uint32_t first_output_wire() const { return n + q() - m + 1; }
  bool is_output_wire(std::uint32_t w) const { return w >= first_output_wire(); }
  const GateSpec& gate_for_wire(std::uint32_t w) const { return gates[w - n - 1]; }
};

struct ScdParseError : std::runtime_error {
  int line;
  int column;
  ScdParseError(int l, int c, const std::string& msg)
      : std::runtime_error("line " + std::to_string(l) + ", col " + std::to_string(c) +
                           ": " + msg),
        line(l),
        column(c) {}
};

struct CircuitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parses the SCD text form:
///   SCD1 <n> <m> <q>
///   <out> <A> <B> <tttt>      (q lines, tt = G(0,0) G(0,1) G(1,0) G(1,1))
/// '#' starts a comment. The result is validated.
Circuit parse_scd(std::string_view text);

/// Canonical text form: gates sorted by output index, single spaces, LF.
/// parse_scd(serialize_scd(c)) == c.
std::string serialize_scd(const Circuit& c);

/// Checks every structural invariant; throws CircuitError naming the first
/// offending gate. Returns human-readable warnings (e.g. fewer than 2
/// inputs, which the wire numbering permits but the protocol literature
/// assumes away).
std::vector<std::string> validate(const Circuit& c);

/// Plain truth-table evaluation in topological order; the ground truth the
/// garbling schemes are tested against.
BitVec evaluate_plain(const Circuit& c, const BitVec& x);

GateStats gate_stats(const Circuit& c);

}  // namespace garblekit
