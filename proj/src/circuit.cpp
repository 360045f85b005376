#include "garblekit/circuit.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace garblekit {

GateClass classify_gate(std::uint8_t tt) {
  tt &= 0xf;
  bool dep_a = tt_depends_on_a(tt);
  bool dep_b = tt_depends_on_b(tt);
  if (!dep_a || !dep_b) return GateClass::Trivial;
  switch (tt) {
    case 0b0110: return GateClass::Xor;   // bits (2i+j): G(0,1)=G(1,0)=1
    case 0b1001: return GateClass::Xnor;
    case 0b1000: return GateClass::And;   // only G(1,1)=1
    default: return GateClass::OtherOdd;
  }
}

bool tt_depends_on_a(std::uint8_t tt) {
  // G(0,j) != G(1,j) for some j
  return (((tt >> 0) ^ (tt >> 2)) & 1) || (((tt >> 1) ^ (tt >> 3)) & 1);
}

bool tt_depends_on_b(std::uint8_t tt) {
  return (((tt >> 0) ^ (tt >> 1)) & 1) || (((tt >> 2) ^ (tt >> 3)) & 1);
}

namespace {

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;
  int line = 1;
  int col = 1;

  bool eof() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }
  void advance() {
    if (text[pos] == '\n') {
      line++;
      col = 1;
    } else {
      col++;
    }
    pos++;
  }
  void skip_ws_and_comments() {
    while (!eof()) {
      char c = peek();
      if (c == '#') {
        while (!eof() && peek() != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else {
        return;
      }
    }
  }
  std::string_view token() {
    skip_ws_and_comments();
    std::size_t start = pos;
    while (!eof()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '#') break;
      advance();
    }
    return text.substr(start, pos - start);
  }
  std::uint32_t number(const char* what) {
    skip_ws_and_comments();
    int l = line, c = col;
    auto tok = token();
    if (tok.empty()) throw ScdParseError(l, c, std::string("expected ") + what);
    std::uint32_t v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size())
      throw ScdParseError(l, c, std::string("bad ") + what + " '" + std::string(tok) + "'");
    return v;
  }
};

}  // namespace

Circuit parse_scd(std::string_view text) {
  Cursor cur{text};
  cur.skip_ws_and_comments();
  int l = cur.line, c = cur.col;
  if (cur.token() != "SCD1") throw ScdParseError(l, c, "expected 'SCD1' header");

  Circuit circ;
  circ.n = cur.number("input count n");
  circ.m = cur.number("output count m");
  std::uint32_t q = cur.number("gate count q");

  circ.gates.reserve(q);
  for (std::uint32_t i = 0; i < q; ++i) {
    GateSpec g;
    g.out = cur.number("gate output wire");
    g.in_a = cur.number("gate input A");
    g.in_b = cur.number("gate input B");
    cur.skip_ws_and_comments();
    int tl = cur.line, tc = cur.col;
    auto tt = cur.token();
    if (tt.size() != 4 || tt.find_first_not_of("01") != std::string_view::npos)
      throw ScdParseError(tl, tc, "truth table must be 4 bits of 0/1");
    for (int b = 0; b < 4; ++b)
      g.truth_table |= static_cast<std::uint8_t>((tt[b] - '0') << b);
    circ.gates.push_back(g);
  }
  cur.skip_ws_and_comments();
  if (!cur.eof()) throw ScdParseError(cur.line, cur.col, "trailing input after last gate");

  std::sort(circ.gates.begin(), circ.gates.end(),
            [](const GateSpec& a, const GateSpec& b) { return a.out < b.out; });
  validate(circ);
  return circ;
}

std::string serialize_scd(const Circuit& c) {
  std::ostringstream os;
  os << "SCD1 " << c.n << ' ' << c.m << ' ' << c.q() << '\n';
  std::vector<GateSpec> sorted = c.gates;
  std::sort(sorted.begin(), sorted.end(),
            [](const GateSpec& a, const GateSpec& b) { return a.out < b.out; });
  for (const auto& g : sorted) {
    os << g.out << ' ' << g.in_a << ' ' << g.in_b << ' ';
    for (int b = 0; b < 4; ++b) os << ((g.truth_table >> b) & 1);
    os << '\n';
  }
  return os.str();
}

std::vector<std::string> validate(const Circuit& c) {
  std::vector<std::string> warnings;
  if (c.n < 1) throw CircuitError("circuit needs at least 1 input wire");
  if (c.n < 2) warnings.push_back("fewer than 2 input wires; conventional circuits assume n >= 2");
  if (c.m < 1) throw CircuitError("circuit needs at least 1 output wire");
  if (c.q() < 1) throw CircuitError("circuit needs at least 1 gate");
  if (c.m > c.q())
    throw CircuitError("output count exceeds gate count; output wires must be gate outputs");

  const std::uint32_t first_out = c.first_output_wire();
  for (std::uint32_t i = 0; i < c.q(); ++i) {
    const GateSpec& g = c.gates[i];
    const std::uint32_t want = c.n + 1 + i;
    if (g.out != want)
      throw CircuitError("gate " + std::to_string(want) +
                         ": wire is not the output of exactly one gate (got gate output " +
                         std::to_string(g.out) + ")");
    if (g.in_a == 0 || g.in_b == 0)
      throw CircuitError("gate " + std::to_string(g.out) + ": wires are numbered from 1");
    if (g.in_a > g.in_b)
      throw CircuitError("gate " + std::to_string(g.out) + ": A(g)<B(g) violated");
    if (g.in_b >= g.out)
      throw CircuitError("gate " + std::to_string(g.out) +
                         ": B(g)<g violated (reads a future or own wire)");
    if (g.in_a == g.in_b && is_even_gate(classify_gate(g.truth_table)))
      throw CircuitError("gate " + std::to_string(g.out) +
                         ": A(g)<B(g) violated for an XOR/XNOR gate");
    if (g.in_a >= first_out || g.in_b >= first_out)
      throw CircuitError("gate " + std::to_string(g.out) +
                         ": reads circuit output wire " +
                         std::to_string(std::max(g.in_a, g.in_b)));
  }
  return warnings;
}

BitVec evaluate_plain(const Circuit& c, const BitVec& x) {
  if (x.size() != c.n) throw CircuitError("input length mismatch");
  std::vector<std::int8_t> value(c.wires() + 1, -1);
  for (std::uint32_t i = 0; i < c.n; ++i) value[i + 1] = static_cast<std::int8_t>(x[i] & 1);
  for (const auto& g : c.gates) {
    // topological order n+1..n+q is valid because both inputs precede the gate
    if (value[g.in_a] < 0 || value[g.in_b] < 0)
      throw CircuitError("gate " + std::to_string(g.out) + ": input wire unassigned");
    value[g.out] = static_cast<std::int8_t>(g.value(value[g.in_a], value[g.in_b]));
  }
  BitVec y(c.m);
  for (std::uint32_t i = 0; i < c.m; ++i)
    y[i] = static_cast<std::uint8_t>(value[c.first_output_wire() + i]);
  return y;
}

GateStats gate_stats(const Circuit& c) {
  GateStats s;
  for (const auto& g : c.gates) {
    switch (classify_gate(g.truth_table)) {
      case GateClass::Xor: s.xor_count++; break;
      case GateClass::Xnor: s.xnor_count++; break;
      case GateClass::And: s.and_count++; break;
      case GateClass::OtherOdd: s.other_odd_count++; break;
      case GateClass::Trivial: s.trivial_count++; break;
    }
  }
  return s;
}

}  // namespace garblekit
