#include <cstring>
#include <stdexcept>

#include "garblekit/scheme.hpp"

namespace garblekit {

// GCF1 layout, all integers little-endian:
//   "GCF1"
//   u8 scheme, u8 flags(bit0 auth), u8 dkc, u8 zero
//   u16 k_bits, u16 zero
//   u32 n, u32 m, u32 q
//   q * { u32 a, u32 b, u8 rule, u8 aux }
//   q * { u32 len, blob }                      blob = u8 ct_count, u8 ext, cts
// The decoding info is a separate GKD1 container.

Bytes blob_to_bytes(const GateBlob& blob, std::size_t k_bytes) {
  Bytes out;
  out.push_back(static_cast<std::uint8_t>(blob.cts.size()));
  out.push_back(blob.ext_bits);
  for (const auto& ct : blob.cts) {
    if (ct.size() != k_bytes) throw std::invalid_argument("blob: ciphertext width mismatch");
    append_bytes(out, ct.bytes());
  }
  return out;
}

GateBlob blob_from_bytes(std::span<const std::uint8_t> bytes, std::size_t k_bytes) {
  ByteReader rd(bytes);
  GateBlob blob;
  const std::uint8_t count = rd.u8();
  blob.ext_bits = rd.u8();
  for (std::uint8_t i = 0; i < count; ++i) blob.cts.push_back(rd.label(k_bytes));
  if (!rd.empty()) throw std::runtime_error("blob: trailing bytes");
  return blob;
}

Bytes serialize_gcf(const GarbledCircuit& F) {
  Bytes out;
  append_bytes(out, std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>("GCF1"), 4));
  out.push_back(static_cast<std::uint8_t>(F.scheme));
  out.push_back(F.auth_decode ? 1 : 0);
  out.push_back(static_cast<std::uint8_t>(F.dkc));
  out.push_back(0);
  out.push_back(static_cast<std::uint8_t>(F.k_bits & 0xff));
  out.push_back(static_cast<std::uint8_t>(F.k_bits >> 8));
  out.push_back(0);
  out.push_back(0);
  append_u32(out, F.n);
  append_u32(out, F.m);
  append_u32(out, F.q());
  for (const auto& t : F.topo) {
    append_u32(out, t.a);
    append_u32(out, t.b);
    out.push_back(static_cast<std::uint8_t>(t.rule));
    out.push_back(t.aux);
  }
  if (F.blobs.size() != F.topo.size())
    throw std::invalid_argument("gcf: garbled circuit is missing gate blobs");
  for (const auto& b : F.blobs) {
    Bytes bb = blob_to_bytes(b, F.k_bytes());
    append_u32(out, static_cast<std::uint32_t>(bb.size()));
    append_bytes(out, bb);
  }
  return out;
}

GarbledCircuit parse_gcf(std::span<const std::uint8_t> bytes) {
  ByteReader rd(bytes);
  auto magic = rd.take(4);
  if (std::memcmp(magic.data(), "GCF1", 4) != 0) throw std::runtime_error("gcf: bad magic");
  GarbledCircuit F;
  F.scheme = static_cast<SchemeId>(rd.u8());
  F.auth_decode = rd.u8() & 1;
  F.dkc = static_cast<DkcVariant>(rd.u8());
  rd.u8();
  F.k_bits = static_cast<std::uint16_t>(rd.u8() | (rd.u8() << 8));
  rd.u8();
  rd.u8();
  if (F.k_bits % 8 != 0 || F.k_bits < 16 || F.k_bits > 128)
    throw std::runtime_error("gcf: bad label width");
  F.n = rd.u32();
  F.m = rd.u32();
  const std::uint32_t q = rd.u32();
  F.topo.reserve(q);
  for (std::uint32_t i = 0; i < q; ++i) {
    GcGate t;
    t.a = rd.u32();
    t.b = rd.u32();
    t.rule = static_cast<GateRule>(rd.u8());
    t.aux = rd.u8();
    F.topo.push_back(t);
  }
  F.blobs.reserve(q);
  for (std::uint32_t i = 0; i < q; ++i) {
    const std::uint32_t len = rd.u32();
    F.blobs.push_back(blob_from_bytes(rd.take(len), F.k_bytes()));
  }
  if (!rd.empty()) throw std::runtime_error("gcf: trailing bytes");
  return F;
}

Bytes serialize_decoding(const DecodingInfo& d) {
  Bytes out;
  append_bytes(out, std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>("GKD1"), 4));
  out.push_back(static_cast<std::uint8_t>(d.kind));
  out.push_back(0);
  out.push_back(static_cast<std::uint8_t>(d.k_bits & 0xff));
  out.push_back(static_cast<std::uint8_t>(d.k_bits >> 8));
  const std::uint32_t m = static_cast<std::uint32_t>(
      d.kind == DecodeKind::LsbBits ? d.lsb.size() : d.pairs.size());
  append_u32(out, m);
  append_u64(out, d.hash_index_base);
  if (d.kind == DecodeKind::LsbBits) {
    for (auto b : d.lsb) out.push_back(b & 1);
  } else {
    for (const auto& p : d.pairs) {
      append_bytes(out, p.w0.bytes());
      append_bytes(out, p.w1.bytes());
    }
  }
  return out;
}

DecodingInfo parse_decoding(std::span<const std::uint8_t> bytes) {
  ByteReader rd(bytes);
  auto magic = rd.take(4);
  if (std::memcmp(magic.data(), "GKD1", 4) != 0) throw std::runtime_error("gkd: bad magic");
  DecodingInfo d;
  d.kind = static_cast<DecodeKind>(rd.u8());
  rd.u8();
  d.k_bits = static_cast<std::size_t>(rd.u8() | (rd.u8() << 8));
  const std::uint32_t m = rd.u32();
  d.hash_index_base = rd.u64();
  if (d.kind == DecodeKind::LsbBits) {
    for (std::uint32_t i = 0; i < m; ++i) d.lsb.push_back(rd.u8() & 1);
  } else {
    for (std::uint32_t i = 0; i < m; ++i) {
      WireLabelPair p;
      p.w0 = rd.label(d.k_bits / 8);
      p.w1 = rd.label(d.k_bits / 8);
      d.pairs.push_back(p);
    }
  }
  if (!rd.empty()) throw std::runtime_error("gkd: trailing bytes");
  return d;
}

}  // namespace garblekit
