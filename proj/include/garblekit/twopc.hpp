#pragma once

#include <cstdint>

#include "garblekit/channel.hpp"
#include "garblekit/circuit.hpp"
#include "garblekit/scheme.hpp"

namespace garblekit {

enum class Party : std::uint8_t { Garbler = 0, Evaluator = 1 };

/// Who supplies each of the circuit's n input bits.
struct InputOwnership {
  BitVec owner;  // per input wire: 0 = garbler, 1 = evaluator

  std::uint32_t count(Party p) const {
    std::uint32_t c = 0;
    for (auto o : owner)
      if (o == static_cast<std::uint8_t>(p)) c++;
    return c;
  }
  static InputOwnership split_first(std::uint32_t n, std::uint32_t garbler_bits) {
    InputOwnership io;
    io.owner.assign(n, 1);
    for (std::uint32_t i = 0; i < garbler_bits && i < n; ++i) io.owner[i] = 0;
    return io;
  }
};

struct TwoPcOptions {
  SchemeId scheme = SchemeId::HalfGates;
  SchemeOptions sopt;
  std::uint64_t seed = 1;
  bool pipelined = false;
  /// Step-5 alternative: ship the decoding info to the evaluator, who then
  /// decodes and reports y, instead of sending output labels to the garbler.
  bool ship_decoding_to_evaluator = false;
};

struct TwoPcResult {
  BitVec y;
  std::uint64_t garbled_bytes = 0;           // ciphertext bytes + packed aux bits
  std::uint32_t peak_retained_gate_blobs = 0;
};

/// The five-phase semi-honest flow: garble, input transfer (evaluator inputs
/// via 1-out-of-2 OT), evaluate, output reveal. x holds the party's own bits,
/// in ascending order of its owned input wires. Both parties return f(x).
TwoPcResult run_2pc(Party role, const Circuit& c, const BitVec& x,
                    const InputOwnership& ownership, Channel& ch, const TwoPcOptions& opt);

struct LocalRunResult {
  TwoPcResult garbler;
  TwoPcResult evaluator;
  SessionTranscript garbler_transcript;
  SessionTranscript evaluator_transcript;
};

/// Runs both parties on an in-process channel pair (two threads).
LocalRunResult run_2pc_local(const Circuit& c, const BitVec& x_garbler,
                             const BitVec& x_evaluator, const InputOwnership& ownership,
                             const TwoPcOptions& opt);

}  // namespace garblekit
