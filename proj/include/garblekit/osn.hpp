#pragma once

#include <cstdint>

#include "garblekit/channel.hpp"
#include "garblekit/switchnet.hpp"

namespace garblekit {

/// Oblivious evaluation of a programmed switching network. The holder has
/// the selection bits and an output blinding vector; the owner has the
/// payloads. The owner ends up with the network's output, each element
/// XORed with the holder's blinding, and neither side learns more: the
/// holder only ever sees one-time-masked values, the owner only mask
/// deltas inside OT messages.
///
/// The optional pair-swap stage is the PFE protocol's depth-1 layer: after
/// blinding, the two designated payload halves of every logical output are
/// swapped (or not) under a holder-private bit, again obliviously.
struct OsnConfig {
  std::uint32_t payload_bytes = 16;
  bool pair_swap = false;
  std::uint32_t swap_offset = 0;  // byte offset of the first half
  std::uint32_t swap_half = 0;    // bytes per half
};

struct OsnHolderInput {
  Selections selections;        // per network switch
  std::vector<Bytes> blinding;  // per logical output, payload_bytes each
  BitVec swap_bits;             // per logical output, when pair_swap
};

/// Owner role: supplies the real payloads (padded internally), runs the
/// offline OT phase as sender, and returns the blinded outputs.
std::vector<Bytes> osn_run_owner(const EpNetwork& net, const OsnConfig& cfg,
                                 std::span<const Bytes> inputs, std::uint64_t mask_seed,
                                 Channel& ch);

/// Holder role: receives per-switch mask deltas by OT, walks the network
/// over the masked inputs in topological order, applies the blinding, and
/// returns the masked outputs to the owner. Learns nothing.
void osn_run_holder(const EpNetwork& net, const OsnConfig& cfg, const OsnHolderInput& in,
                    Channel& ch);

}  // namespace garblekit
