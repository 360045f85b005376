#pragma once

#include "garblekit/circuit.hpp"
#include "garblekit/gf2k.hpp"
#include "garblekit/prg.hpp"
#include "garblekit/scheme.hpp"

namespace garblekit::detail {

/// Shared garbler state. Wire label pairs are drawn or derived in wire
/// order, which is what makes garbling deterministic per seed.
struct GbState {
  const Circuit* c = nullptr;
  SchemeOptions opt;
  std::size_t kb = 16;  // label bytes
  Prg prg;
  GlobalParams gp;
  std::vector<WireLabelPair> pair;   // 1-based
  BitVec ext0;                       // GRR2 family: external value of w0, 1-based
  FlexorPlan fxplan;                 // FlexorGrr2 only

  GbState(const Circuit& circ, std::uint64_t seed, SchemeOptions o)
      : c(&circ), opt(o), kb(o.k_bits / 8), prg(seed) {
    gp.k_bits = o.k_bits;
    gp.seed = seed;
    pair.resize(circ.wires() + 1);
    ext0.assign(circ.wires() + 1, 0);
  }

  Label rand_label() { return prg.label(kb); }
  /// fresh pair with distinct label bits, the first bit drawn at random
  WireLabelPair rand_pair_pp() {
    WireLabelPair p{rand_label(), rand_label()};
    p.w1.set_lsb(p.w0.lsb() ^ 1);
    return p;
  }
};

/// Trivial-gate helpers: which input the table reads (constants read a) and
/// the output value as a function of that input.
inline bool trivial_uses_b(std::uint8_t tt) {
  return tt_depends_on_b(tt) && !tt_depends_on_a(tt);
}
inline int trivial_out(std::uint8_t tt, bool uses_b, int v) {
  int i = uses_b ? 0 : v;
  int j = uses_b ? v : 0;
  return (tt >> (2 * i + j)) & 1;
}

// per-scheme init (input-wire labels and any global values)
void init_classic(GbState& st);   // also Grr3
void init_freexor(GbState& st);   // also HalfGates
void init_grr2(GbState& st);
void init_flexor(GbState& st);

// per-scheme gate garbling; appends the out-wire pair to st.pair
GateBlob gate_classic(GbState& st, const GateSpec& g);
GateBlob gate_grr3(GbState& st, const GateSpec& g);
GateBlob gate_freexor(GbState& st, const GateSpec& g);
GateBlob gate_grr2(GbState& st, const GateSpec& g);
GateBlob gate_flexor(GbState& st, const GateSpec& g);
GateBlob gate_halfgates(GbState& st, const GateSpec& g);

/// Shared evaluator state.
struct EvState {
  const GarbledCircuit* F = nullptr;
  std::size_t kb = 16;
  std::vector<Label> label;  // 1-based
  BitVec ext;                // 1-based point bits (GRR2 family)
  std::uint32_t next = 0;    // gates consumed
};

void eval_gate(EvState& st, std::uint32_t gate_wire, const GcGate& g, const GateBlob& blob);

// GRR2 interpolation-node plan: node encodings 0..6 and cached
// evaluate-at-target Lagrange coefficients for every node subset the
// schemes use. Built once per field size.
struct InterpPlan {
  std::size_t k = 0;
  std::array<FieldElem, 7> node;
  // key: target*128 + node mask (bits 1..6); value: coeffs in ascending node order
  std::vector<std::vector<FieldElem>> coeff;
  std::vector<int> key;

  const std::vector<FieldElem>& coeffs_for(int mask, int target) const;
};

const InterpPlan& interp_plan(std::size_t k_bits);

/// Evaluate the unique polynomial through (nodes[i], ys[i]) at node `target`.
FieldElem interp_at(const InterpPlan& plan, std::span<const int> nodes,
                    std::span<const FieldElem> ys, int target);

}  // namespace garblekit::detail
