#include "garblekit/osn.hpp"

#include "garblekit/ot.hpp"
#include "garblekit/prg.hpp"

namespace garblekit {

namespace {

void xor_into(Bytes& dst, std::span<const std::uint8_t> src) {
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] ^= src[i];
}

Bytes xored(const Bytes& a, const Bytes& b) {
  Bytes r = a;
  xor_into(r, b);
  return r;
}

Bytes concat(const Bytes& a, const Bytes& b) {
  Bytes r = a;
  append_bytes(r, b);
  return r;
}

struct Shape {
  std::uint32_t padded;
  std::uint32_t n_logical;
  std::uint32_t payload;
  std::uint32_t one_switches;
  std::uint32_t two_switches;
  std::uint8_t pair_swap;
};

Bytes encode_shape(const Shape& s) {
  Bytes b;
  append_u32(b, s.padded);
  append_u32(b, s.n_logical);
  append_u32(b, s.payload);
  append_u32(b, s.one_switches);
  append_u32(b, s.two_switches);
  b.push_back(s.pair_swap);
  return b;
}

Shape shape_of(const EpNetwork& net, const OsnConfig& cfg) {
  return {net.padded,
          net.N,
          cfg.payload_bytes,
          static_cast<std::uint32_t>(net.net.count(SwitchKind::One)),
          static_cast<std::uint32_t>(net.net.count(SwitchKind::Two)),
          static_cast<std::uint8_t>(cfg.pair_swap ? 1 : 0)};
}

void check_config(const OsnConfig& cfg) {
  if (cfg.pair_swap &&
      (cfg.swap_offset + 2ull * cfg.swap_half > cfg.payload_bytes || cfg.swap_half == 0))
    throw std::invalid_argument("osn: pair-swap region out of payload bounds");
}

}  // namespace

std::vector<Bytes> osn_run_owner(const EpNetwork& net, const OsnConfig& cfg,
                                 std::span<const Bytes> inputs, std::uint64_t mask_seed,
                                 Channel& ch) {
  check_config(cfg);
  if (inputs.size() > net.padded) throw std::invalid_argument("osn: too many inputs");
  for (const auto& x : inputs)
    if (x.size() != cfg.payload_bytes) throw std::invalid_argument("osn: payload width");

  Frame shape_frame = ch.expect(FrameTag::OsnOffline);
  if (shape_frame.payload != encode_shape(shape_of(net, cfg)))
    throw ProtocolError("osn: network shape disagreement");

  // one fresh mask per network wire, plus post-swap half masks per output
  Prg prg(mask_seed);
  const std::uint32_t payload = cfg.payload_bytes;
  std::vector<Bytes> mask(net.net.n_wires);
  for (auto& m : mask) m = prg.bytes(payload);
  std::vector<Bytes> swap_mask0(net.N), swap_mask1(net.N);
  if (cfg.pair_swap) {
    for (std::uint32_t j = 0; j < net.N; ++j) {
      swap_mask0[j] = prg.bytes(cfg.swap_half);
      swap_mask1[j] = prg.bytes(cfg.swap_half);
    }
  }

  // offline phase: one OT per switch, message = the two mask deltas of the
  // row the holder's selection picks
  std::vector<std::vector<Bytes>> one_msgs, two_msgs;
  for (const auto& sw : net.net.switches) {
    const Bytes& ri = mask[sw.in0];
    const Bytes& rj = mask[sw.in1];
    const Bytes& rk = mask[sw.out0];
    const Bytes& rl = mask[sw.out1];
    if (sw.kind == SwitchKind::One) {
      one_msgs.push_back({concat(xored(ri, rk), xored(rj, rl)),
                          concat(xored(rj, rk), xored(ri, rl))});
    } else {
      std::vector<Bytes> rows;
      for (int s0 = 0; s0 < 2; ++s0)
        for (int s1 = 0; s1 < 2; ++s1)
          rows.push_back(concat(xored(s0 ? rj : ri, rk), xored(s1 ? rj : ri, rl)));
      two_msgs.push_back(std::move(rows));
    }
  }
  if (!one_msgs.empty())
    ot_send(ch, {2, static_cast<std::uint32_t>(one_msgs.size()), 2 * payload * 8}, one_msgs);
  if (!two_msgs.empty())
    ot_send(ch, {4, static_cast<std::uint32_t>(two_msgs.size()), 2 * payload * 8}, two_msgs);
  if (cfg.pair_swap) {
    std::vector<std::vector<Bytes>> swap_msgs;
    for (std::uint32_t j = 0; j < net.N; ++j) {
      Bytes alpha(mask[net.net.outputs[j]].begin() + cfg.swap_offset,
                  mask[net.net.outputs[j]].begin() + cfg.swap_offset + cfg.swap_half);
      Bytes beta(mask[net.net.outputs[j]].begin() + cfg.swap_offset + cfg.swap_half,
                 mask[net.net.outputs[j]].begin() + cfg.swap_offset + 2 * cfg.swap_half);
      swap_msgs.push_back({concat(xored(alpha, swap_mask0[j]), xored(beta, swap_mask1[j])),
                           concat(xored(beta, swap_mask0[j]), xored(alpha, swap_mask1[j]))});
    }
    ot_send(ch, {2, net.N, 2 * cfg.swap_half * 8}, swap_msgs);
  }

  // online phase: one blinded-input message out, one blinded-output message in
  Bytes blind_in;
  for (std::uint32_t u = 0; u < net.padded; ++u) {
    Bytes v = u < inputs.size() ? inputs[u] : Bytes(payload, 0);
    xor_into(v, mask[net.net.inputs[u]]);
    append_bytes(blind_in, v);
  }
  ch.send(FrameTag::OsnBlindIn, blind_in);

  Frame outf = ch.expect(FrameTag::OsnBlindOut);
  ByteReader rd(outf.payload);
  std::vector<Bytes> result;
  result.reserve(net.N);
  for (std::uint32_t j = 0; j < net.N; ++j) {
    auto span = rd.take(payload);
    Bytes v(span.begin(), span.end());
    if (cfg.pair_swap) {
      Bytes residual = mask[net.net.outputs[j]];
      std::copy(swap_mask0[j].begin(), swap_mask0[j].end(), residual.begin() + cfg.swap_offset);
      std::copy(swap_mask1[j].begin(), swap_mask1[j].end(),
                residual.begin() + cfg.swap_offset + cfg.swap_half);
      xor_into(v, residual);
    } else {
      xor_into(v, mask[net.net.outputs[j]]);
    }
    result.push_back(std::move(v));
  }
  if (!rd.empty()) throw ProtocolError("osn: oversized output frame");
  return result;
}

void osn_run_holder(const EpNetwork& net, const OsnConfig& cfg, const OsnHolderInput& in,
                    Channel& ch) {
  check_config(cfg);
  if (in.selections.size() != net.net.switches.size())
    throw std::invalid_argument("osn: selection count mismatch");
  if (in.blinding.size() != net.N) throw std::invalid_argument("osn: blinding count mismatch");
  if (cfg.pair_swap && in.swap_bits.size() != net.N)
    throw std::invalid_argument("osn: swap bit count mismatch");

  ch.send(FrameTag::OsnOffline, encode_shape(shape_of(net, cfg)));

  // offline: fetch the mask-delta row of every switch
  BitVec one_idx, two_idx;
  for (std::size_t u = 0; u < net.net.switches.size(); ++u) {
    if (net.net.switches[u].kind == SwitchKind::One)
      one_idx.push_back(in.selections[u] & 1);
    else
      two_idx.push_back(in.selections[u] & 3);
  }
  const std::uint32_t payload = cfg.payload_bytes;
  std::vector<Bytes> one_rows, two_rows, swap_rows;
  if (!one_idx.empty())
    one_rows = ot_receive(ch, {2, static_cast<std::uint32_t>(one_idx.size()), 2 * payload * 8},
                          one_idx);
  if (!two_idx.empty())
    two_rows = ot_receive(ch, {4, static_cast<std::uint32_t>(two_idx.size()), 2 * payload * 8},
                          two_idx);
  if (cfg.pair_swap)
    swap_rows = ot_receive(ch, {2, net.N, 2 * cfg.swap_half * 8}, in.swap_bits);

  // online: sequential XOR walk in topological order
  Frame inf = ch.expect(FrameTag::OsnBlindIn);
  ByteReader rd(inf.payload);
  std::vector<Bytes> wire(net.net.n_wires);
  for (std::uint32_t u = 0; u < net.padded; ++u) {
    auto s = rd.take(payload);
    wire[net.net.inputs[u]] = Bytes(s.begin(), s.end());
  }
  if (!rd.empty()) throw ProtocolError("osn: oversized input frame");

  std::size_t i1 = 0, i2 = 0;
  for (std::size_t u = 0; u < net.net.switches.size(); ++u) {
    const Switch& sw = net.net.switches[u];
    int s0, s1;
    const Bytes* row;
    if (sw.kind == SwitchKind::One) {
      s0 = in.selections[u] & 1;
      s1 = s0 ^ 1;
      row = &one_rows[i1++];
    } else {
      s0 = (in.selections[u] >> 1) & 1;
      s1 = in.selections[u] & 1;
      row = &two_rows[i2++];
    }
    Bytes o0 = s0 ? wire[sw.in1] : wire[sw.in0];
    Bytes o1 = s1 ? wire[sw.in1] : wire[sw.in0];
    xor_into(o0, std::span<const std::uint8_t>(row->data(), payload));
    xor_into(o1, std::span<const std::uint8_t>(row->data() + payload, payload));
    wire[sw.out0] = std::move(o0);
    wire[sw.out1] = std::move(o1);
  }

  Bytes out;
  for (std::uint32_t j = 0; j < net.N; ++j) {
    Bytes v = wire[net.net.outputs[j]];
    xor_into(v, in.blinding[j]);
    if (cfg.pair_swap) {
      auto half0 = v.begin() + cfg.swap_offset;
      auto half1 = half0 + cfg.swap_half;
      if (in.swap_bits[j]) std::swap_ranges(half0, half1, half1);
      const Bytes& urow = swap_rows[j];
      for (std::uint32_t i = 0; i < cfg.swap_half; ++i) {
        *(half0 + i) ^= urow[i];
        *(half1 + i) ^= urow[cfg.swap_half + i];
      }
    }
    append_bytes(out, v);
  }
  ch.send(FrameTag::OsnBlindOut, out);
}

}  // namespace garblekit
