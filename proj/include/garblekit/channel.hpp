#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "garblekit/label.hpp"

namespace garblekit {

enum class FrameTag : std::uint8_t {
  GcGate = 1,
  GcBulk = 2,
  InputLabels = 3,
  OtReq = 4,
  OtResp = 5,
  OutputLabels = 6,
  OutputPlain = 7,
  Abort = 8,
  OsnOffline = 9,
  OsnBlindIn = 10,
  OsnBlindOut = 11,
  PfeGrouping = 12,
};

const char* frame_tag_name(FrameTag t);

struct Frame {
  FrameTag tag;
  Bytes payload;
};

struct ProtocolError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The peer sent an Abort frame (or the transport failed mid-protocol).
struct ProtocolAbort : ProtocolError {
  explicit ProtocolAbort(const std::string& reason)
      : ProtocolError("protocol abort: " + reason), reason(reason) {}
  std::string reason;
};

/// Decoding returned bottom: an output label was not recognized.
struct DecodeFailure : ProtocolError {
  DecodeFailure() : ProtocolError("garbled output failed to decode") {}
};

/// One transcript entry per frame: direction, tag, payload length. Payloads
/// are deliberately excluded; obliviousness checks compare length sequences.
struct TranscriptEntry {
  bool outgoing;
  std::uint8_t tag;
  std::uint64_t length;
  bool operator==(const TranscriptEntry&) const = default;
};

using SessionTranscript = std::vector<TranscriptEntry>;

/// Ordered reliable frame transport between exactly two endpoints. FIFO per
/// direction. Each endpoint records its own transcript.
class Channel {
 public:
  virtual ~Channel() = default;

  void send(FrameTag tag, std::span<const std::uint8_t> payload);
  void send(FrameTag tag, const Bytes& payload) {
    send(tag, std::span<const std::uint8_t>(payload));
  }
  Frame recv();

  /// recv() that insists on a tag; an Abort frame raises ProtocolAbort.
  Frame expect(FrameTag tag);

  void abort(const std::string& reason);

  const SessionTranscript& transcript() const { return log_; }

 protected:
  virtual void send_impl(const Frame& f) = 0;
  virtual Frame recv_impl() = 0;

 private:
  SessionTranscript log_;
};

/// In-process duplex queue pair with bounded capacity per direction, so a
/// streaming sender observes backpressure like it would on a socket.
std::pair<std::unique_ptr<Channel>, std::unique_ptr<Channel>> make_inproc_pair(
    std::size_t capacity = 64);

/// Length-prefixed byte stream over a local TCP socket; identical framing.
std::unique_ptr<Channel> channel_listen(std::uint16_t port);
std::unique_ptr<Channel> channel_connect(const std::string& host, std::uint16_t port);

}  // namespace garblekit
