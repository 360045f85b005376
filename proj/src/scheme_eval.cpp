#include <stdexcept>

#include "scheme_internal.hpp"

namespace garblekit::detail {

namespace {

struct MalformedBlob : std::runtime_error {
  explicit MalformedBlob(std::uint32_t wire)
      : std::runtime_error("gate " + std::to_string(wire) + ": malformed garbled blob") {}
};

void need_cts(const GateBlob& b, std::size_t n, std::uint32_t wire) {
  if (b.cts.size() != n) throw MalformedBlob(wire);
}

}  // namespace

void eval_gate(EvState& st, std::uint32_t wire, const GcGate& g, const GateBlob& blob) {
  const std::size_t k = st.kb * 8;
  const DkcVariant dkc = st.F->dkc;
  const Label& wa = st.label[g.a];
  const Label& wb = st.label[g.b];
  Label w;
  std::uint8_t e = 0;

  switch (g.rule) {
    case GateRule::FreeXor:
    case GateRule::FxFree: {
      if (!blob.cts.empty()) throw MalformedBlob(wire);
      w = wa ^ wb;
      e = static_cast<std::uint8_t>(st.ext[g.a] ^ st.ext[g.b]);
      break;
    }
    case GateRule::Rows4: {
      need_cts(blob, 4, wire);
      const int s = (wa.lsb() << 1) | wb.lsb();
      w = dkc_decrypt(dkc, wa, wb, Tweak{wire, static_cast<std::uint8_t>(s)}, blob.cts[s]);
      e = static_cast<std::uint8_t>(w.lsb());
      break;
    }
    case GateRule::Rows3: {
      need_cts(blob, 3, wire);
      const int s = (wa.lsb() << 1) | wb.lsb();
      const Label ct = s == 0 ? Label(st.kb) : blob.cts[s - 1];
      w = dkc_decrypt(dkc, wa, wb, Tweak{wire, static_cast<std::uint8_t>(s)}, ct);
      e = static_cast<std::uint8_t>(w.lsb());
      break;
    }
    case GateRule::Rows1: {
      need_cts(blob, 1, wire);
      const Label& rel = (g.aux & 1) ? wb : wa;
      const int s = rel.lsb();
      const Label ct = s == 0 ? Label(st.kb) : blob.cts[0];
      w = dkc_decrypt(dkc, rel, rel, Tweak{wire, static_cast<std::uint8_t>(s)}, ct);
      e = static_cast<std::uint8_t>(w.lsb());
      break;
    }
    case GateRule::Grr2Odd: {
      need_cts(blob, 2, wire);
      const auto& plan = interp_plan(k);
      const int r = (st.ext[g.a] << 1) | st.ext[g.b];
      FieldElem kv(dkc_decrypt(dkc, wa, wb, Tweak{wire, static_cast<std::uint8_t>(r)},
                               Label(st.kb)));
      const int nodes[3] = {r + 1, 5, 6};
      const FieldElem ys[3] = {kv, FieldElem(blob.cts[0]), FieldElem(blob.cts[1])};
      w = interp_at(plan, nodes, ys, 0).bits;
      e = static_cast<std::uint8_t>(((blob.ext_bits >> r) & 1) ^ wa.lsb() ^ wb.lsb());
      break;
    }
    case GateRule::Grr2Even: {
      need_cts(blob, 2, wire);
      const auto& plan = interp_plan(k);
      const int r = (st.ext[g.a] << 1) | st.ext[g.b];
      FieldElem kv(dkc_decrypt(dkc, wa, wb, Tweak{wire, static_cast<std::uint8_t>(r)},
                               Label(st.kb)));
      e = static_cast<std::uint8_t>(((blob.ext_bits >> r) & 1) ^ wa.lsb() ^ wb.lsb());
      const int nodes[2] = {r + 1, 5};
      const FieldElem ys[2] = {kv, FieldElem(blob.cts[e])};
      w = interp_at(plan, nodes, ys, 0).bits;
      break;
    }
    case GateRule::Grr2Trivial: {
      need_cts(blob, 1, wire);
      const std::uint32_t relw = (g.aux & 1) ? g.b : g.a;
      const Label& rel = st.label[relw];
      const int s = st.ext[relw];
      const Label ct = s == 0 ? Label(st.kb) : blob.cts[0];
      w = dkc_decrypt(dkc, rel, rel, Tweak{wire, static_cast<std::uint8_t>(s)}, ct);
      e = static_cast<std::uint8_t>(((blob.ext_bits >> s) & 1) ^ rel.lsb());
      break;
    }
    case GateRule::FxBuf: {
      need_cts(blob, 1, wire);
      Label rebased = hash_kdf(wb, Tweak{wire, 0}, k).v;
      if (st.ext[g.b]) rebased ^= blob.cts[0];
      w = wa ^ rebased;
      e = static_cast<std::uint8_t>(st.ext[g.a] ^ st.ext[g.b]);
      break;
    }
    case GateRule::FxOdd: {
      need_cts(blob, 2, wire);
      const auto& plan = interp_plan(k);
      const int r = (st.ext[g.a] << 1) | st.ext[g.b];
      KdfOut kd = hash_kdf(wa, wb, Tweak{wire, static_cast<std::uint8_t>(r)}, k + 1);
      const int nodes[3] = {r + 1, 5, 6};
      const FieldElem ys[3] = {FieldElem(kd.v), FieldElem(blob.cts[0]), FieldElem(blob.cts[1])};
      w = interp_at(plan, nodes, ys, 0).bits;
      e = static_cast<std::uint8_t>(((blob.ext_bits >> r) & 1) ^ kd.bit);
      break;
    }
    case GateRule::FxTrivial: {
      need_cts(blob, 1, wire);
      const std::uint32_t relw = (g.aux & 1) ? g.b : g.a;
      const int s = st.ext[relw];
      KdfOut kd = hash_kdf(st.label[relw], Tweak{wire, static_cast<std::uint8_t>(s)}, k + 1);
      w = s ? (kd.v ^ blob.cts[0]) : kd.v;
      e = static_cast<std::uint8_t>(((blob.ext_bits >> s) & 1) ^ kd.bit);
      break;
    }
    case GateRule::HalfAnd: {
      need_cts(blob, 2, wire);
      const int sa = wa.lsb();
      const int sb = wb.lsb();
      Label wg = hash_kdf(wa, Tweak{2ull * wire, 0}, k).v;
      if (sa) wg ^= blob.cts[0];
      Label we = hash_kdf(wb, Tweak{2ull * wire + 1, 0}, k).v;
      if (sb) we ^= blob.cts[1] ^ wa;
      w = wg ^ we;
      e = static_cast<std::uint8_t>(w.lsb());
      break;
    }
    case GateRule::HgTrivial: {
      need_cts(blob, 1, wire);
      const Label& rel = (g.aux & 1) ? wb : wa;
      const int s = rel.lsb();
      Label h = hash_kdf(rel, Tweak{2ull * wire, static_cast<std::uint8_t>(s)}, k).v;
      w = s ? (h ^ blob.cts[0]) : h;
      e = static_cast<std::uint8_t>(w.lsb());
      break;
    }
  }

  st.label[wire] = w;
  st.ext[wire] = e;
}

}  // namespace garblekit::detail
