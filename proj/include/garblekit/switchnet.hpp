#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "garblekit/mapping.hpp"

namespace garblekit {

enum class SwitchKind : std::uint8_t { One, Two };

/// A 1-switch routes (in0,in1) straight or crossed by one selection bit.
/// A 2-switch has two selection bits (s0,s1) and outputs y0=in[s0], y1=in[s1].
struct Switch {
  SwitchKind kind;
  std::uint32_t in0, in1;
  std::uint32_t out0, out1;
};

/// Selection per switch, aligned with SwitchingNetwork::switches.
/// 1-switch: 0 straight / 1 crossed. 2-switch: (s0<<1)|s1.
using Selections = std::vector<std::uint8_t>;

struct SwitchingNetwork {
  std::uint32_t n_wires = 0;
  std::vector<std::uint32_t> inputs;
  std::vector<std::uint32_t> outputs;
  std::vector<Switch> switches;  // topological order

  std::uint64_t count(SwitchKind k) const {
    std::uint64_t c = 0;
    for (const auto& s : switches)
      if (s.kind == k) c++;
    return c;
  }
  /// switch layers on the longest input-to-output path
  std::uint32_t depth() const;
};

/// Waksman permutation network on N = 2^t inputs: N log2(N) - N + 1
/// 1-switches, depth 2 log2(N) - 1.
SwitchingNetwork waksman_build(std::uint32_t n);

/// Selection bits so that output perm[i] carries input i. perm must be a
/// bijection on [0, N).
Selections waksman_program(std::uint32_t n, std::span<const std::uint32_t> perm);

/// Plain evaluation; the oracle for the oblivious protocol.
template <typename T>
std::vector<T> sn_eval(const SwitchingNetwork& net, const Selections& sel,
                       std::span<const T> in) {
  if (in.size() != net.inputs.size()) throw std::invalid_argument("sn_eval: input arity");
  if (sel.size() != net.switches.size()) throw std::invalid_argument("sn_eval: selection count");
  std::vector<T> wire(net.n_wires);
  for (std::size_t i = 0; i < in.size(); ++i) wire[net.inputs[i]] = in[i];
  for (std::size_t u = 0; u < net.switches.size(); ++u) {
    const Switch& s = net.switches[u];
    int s0, s1;
    if (s.kind == SwitchKind::One) {
      s0 = sel[u] & 1;
      s1 = s0 ^ 1;
    } else {
      s0 = (sel[u] >> 1) & 1;
      s1 = sel[u] & 1;
    }
    wire[s.out0] = wire[s0 ? s.in1 : s.in0];
    wire[s.out1] = wire[s1 ? s.in1 : s.in0];
  }
  std::vector<T> out;
  out.reserve(net.outputs.size());
  for (auto w : net.outputs) out.push_back(wire[w]);
  return out;
}

/// The three-component network realizing any extended permutation with N
/// sinks: dummy-value placement (Waksman), replication (a chain of
/// 2-switches), permutation (Waksman). Sub-power-of-two N is padded with
/// pass-through slots inside the Waksman stages; the padding never shows
/// in the logical outputs.
struct EpNetwork {
  std::uint32_t N = 0;       // logical sink count
  std::uint32_t padded = 0;  // internal power-of-two width
  SwitchingNetwork net;      // outputs: padded wires, the first N are logical
  std::uint32_t dummy_end = 0;  // switches [0,dummy_end): placement stage
  std::uint32_t repl_end = 0;   // [dummy_end,repl_end): replication stage
};

EpNetwork ep_network_build(std::uint32_t n_sinks);

/// Selections realizing ep on the padded network: feeding it
/// (x_0..x_{M-1}, anything...) yields (x_{ep.source[0]}, ..., x_{ep.source[N-1]}, ...).
/// Replication-stage selections come out as (0,0) or (0,1) only.
Selections ep_program(const EpNetwork& net, const ExtendedPermutation& ep);

template <typename T>
std::vector<T> ep_apply(const ExtendedPermutation& ep, std::span<const T> in) {
  if (in.size() != ep.M) throw std::invalid_argument("ep_apply: source count");
  std::vector<T> out;
  out.reserve(ep.N);
  for (std::uint32_t j = 0; j < ep.N; ++j) out.push_back(in[ep.source[j]]);
  return out;
}

}  // namespace garblekit
