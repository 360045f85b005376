#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "garblekit/channel.hpp"
#include "garblekit/label.hpp"

namespace garblekit {

/// A batch of parallel 1-out-of-m transfers. The whole batch costs one
/// request frame and one response frame regardless of count.
struct OtBatch {
  std::uint32_t m = 2;          // choices per transfer (2 or 4)
  std::uint32_t count = 0;      // parallel transfers
  std::uint32_t msg_len = 128;  // bits per message, multiple of 8

  std::size_t msg_bytes() const { return msg_len / 8; }
};

/// Sender side. messages[t][i] is the i-th candidate of transfer t. The
/// reference implementation is an ideal functionality: the receiver's choice
/// frame is consumed here and never surfaced, and only chosen messages ever
/// appear in a frame delivered to the receiver.
void ot_send(Channel& ch, const OtBatch& batch,
             const std::vector<std::vector<Bytes>>& messages);

/// Receiver side; returns messages[t][indices[t]] for each transfer.
std::vector<Bytes> ot_receive(Channel& ch, const OtBatch& batch,
                              std::span<const std::uint8_t> indices);

}  // namespace garblekit
