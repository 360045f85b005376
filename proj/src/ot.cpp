#include "garblekit/ot.hpp"

namespace garblekit {

namespace {

void check_batch(const OtBatch& b) {
  if (b.m != 2 && b.m != 4) throw std::invalid_argument("ot: m must be 2 or 4");
  if (b.msg_len % 8 != 0) throw std::invalid_argument("ot: message length must be whole bytes");
}

}  // namespace

void ot_send(Channel& ch, const OtBatch& batch, const std::vector<std::vector<Bytes>>& messages) {
  check_batch(batch);
  if (messages.size() != batch.count) throw std::invalid_argument("ot: transfer count mismatch");
  for (const auto& row : messages) {
    if (row.size() != batch.m) throw std::invalid_argument("ot: choice count mismatch");
    for (const auto& msg : row)
      if (msg.size() != batch.msg_bytes())
        throw std::invalid_argument("ot: message length mismatch");
  }

  Frame req = ch.expect(FrameTag::OtReq);
  ByteReader rd(req.payload);
  if (rd.u32() != batch.count || rd.u8() != batch.m || rd.u32() != batch.msg_len)
    throw ProtocolError("ot: receiver batch shape disagrees");
  auto indices = rd.take(batch.count);
  if (!rd.empty()) throw ProtocolError("ot: malformed request");

  Bytes resp;
  append_u32(resp, batch.count);
  for (std::uint32_t t = 0; t < batch.count; ++t) {
    if (indices[t] >= batch.m) throw ProtocolError("ot: choice index out of range");
    append_bytes(resp, messages[t][indices[t]]);
  }
  ch.send(FrameTag::OtResp, resp);
}

std::vector<Bytes> ot_receive(Channel& ch, const OtBatch& batch,
                              std::span<const std::uint8_t> indices) {
  check_batch(batch);
  if (indices.size() != batch.count) throw std::invalid_argument("ot: index count mismatch");
  for (auto i : indices)
    if (i >= batch.m) throw std::invalid_argument("ot: choice index out of range");

  Bytes req;
  append_u32(req, batch.count);
  req.push_back(static_cast<std::uint8_t>(batch.m));
  append_u32(req, batch.msg_len);
  append_bytes(req, indices);
  ch.send(FrameTag::OtReq, req);

  Frame resp = ch.expect(FrameTag::OtResp);
  ByteReader rd(resp.payload);
  if (rd.u32() != batch.count) throw ProtocolError("ot: response count mismatch");
  std::vector<Bytes> out;
  out.reserve(batch.count);
  for (std::uint32_t t = 0; t < batch.count; ++t) {
    auto m = rd.take(batch.msg_bytes());
    out.emplace_back(m.begin(), m.end());
  }
  if (!rd.empty()) throw ProtocolError("ot: malformed response");
  return out;
}

}  // namespace garblekit
