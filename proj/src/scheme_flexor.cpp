#include "scheme_internal.hpp"

namespace garblekit::detail {

void init_flexor(GbState& st) {
  st.fxplan = flexor_offset_classes(*st.c);
  for (std::uint32_t w = 1; w <= st.c->n; ++w) {
    st.pair[w] = st.rand_pair_pp();
    st.ext0[w] = static_cast<std::uint8_t>(st.pair[w].w0.lsb());
  }
}

namespace {

GateBlob flexor_even(GbState& st, const GateSpec& g, bool needs_buffer) {
  const GateClass cls = classify_gate(g.truth_table);
  const WireLabelPair& ap = st.pair[g.in_a];
  const WireLabelPair& bp = st.pair[g.in_b];

  GateBlob blob;
  Label b0 = bp.w0;
  Label b1 = bp.w1;
  if (needs_buffer) {
    // one imaginary buffer rebases input b onto input a's offset
    const Label delta_a = ap.w0 ^ ap.w1;
    const Tweak tw{g.out, 0};
    if (st.ext0[g.in_b] == 0) {
      b0 = hash_kdf(bp.w0, tw, st.opt.k_bits).v;
      b1 = b0 ^ delta_a;
      blob.cts.push_back(hash_kdf(bp.w1, tw, st.opt.k_bits).v ^ b1);
    } else {
      b1 = hash_kdf(bp.w1, tw, st.opt.k_bits).v;
      b0 = b1 ^ delta_a;
      blob.cts.push_back(hash_kdf(bp.w0, tw, st.opt.k_bits).v ^ b0);
    }
  }

  WireLabelPair out;
  if (cls == GateClass::Xor) {
    out.w0 = ap.w0 ^ b0;
    out.w1 = ap.w0 ^ b1;
  } else {
    out.w0 = ap.w0 ^ b1;
    out.w1 = ap.w0 ^ b0;
  }
  st.pair[g.out] = out;
  std::uint8_t e = static_cast<std::uint8_t>(st.ext0[g.in_a] ^ st.ext0[g.in_b]);
  if (cls == GateClass::Xnor) e ^= 1;
  st.ext0[g.out] = e;
  return blob;
}

GateBlob flexor_trivial(GbState& st, const GateSpec& g) {
  const bool use_b = trivial_uses_b(g.truth_table);
  const std::uint32_t rel = use_b ? g.in_b : g.in_a;
  const WireLabelPair& rp = st.pair[rel];
  const int e0 = st.ext0[rel];

  KdfOut row[2];
  int out_v[2];
  for (int s = 0; s < 2; ++s) {
    const int v = s ^ e0;
    row[s] = hash_kdf(v ? rp.w1 : rp.w0, Tweak{g.out, static_cast<std::uint8_t>(s)},
                      st.opt.k_bits + 1);
    out_v[s] = trivial_out(g.truth_table, use_b, v);
  }

  WireLabelPair out;
  Label other = st.rand_label();
  (out_v[0] ? out.w1 : out.w0) = row[0].v;
  (out_v[0] ? out.w0 : out.w1) = other;
  st.pair[g.out] = out;
  st.ext0[g.out] = static_cast<std::uint8_t>(st.prg.bit());

  GateBlob blob;
  blob.cts.push_back(row[1].v ^ (out_v[1] ? out.w1 : out.w0));
  for (int s = 0; s < 2; ++s) {
    const int ext_out = st.ext0[g.out] ^ out_v[s];
    blob.ext_bits |= static_cast<std::uint8_t>((ext_out ^ row[s].bit) << s);
  }
  return blob;
}

GateBlob flexor_odd(GbState& st, const GateSpec& g) {
  const auto& plan = interp_plan(st.opt.k_bits);
  const WireLabelPair& ap = st.pair[g.in_a];
  const WireLabelPair& bp = st.pair[g.in_b];
  const int ea = st.ext0[g.in_a];
  const int eb = st.ext0[g.in_b];

  FieldElem kval[4];
  int mbit[4];
  int out_v[4];
  int ones = 0;
  for (int r = 0; r < 4; ++r) {
    const int i = (r >> 1) ^ ea;
    const int j = (r & 1) ^ eb;
    KdfOut kd = hash_kdf(i ? ap.w1 : ap.w0, j ? bp.w1 : bp.w0,
                         Tweak{g.out, static_cast<std::uint8_t>(r)}, st.opt.k_bits + 1);
    kval[r] = FieldElem(kd.v);
    mbit[r] = kd.bit;
    out_v[r] = g.value(i, j);
    ones += out_v[r];
  }

  const int v_min = (ones == 1) ? 1 : 0;
  int nodes_maj[3], node_min = 0;
  FieldElem y_maj[3], y_min;
  int idx = 0;
  for (int r = 0; r < 4; ++r) {
    if (out_v[r] == v_min) {
      node_min = r + 1;
      y_min = kval[r];
    } else {
      nodes_maj[idx] = r + 1;
      y_maj[idx++] = kval[r];
    }
  }
  FieldElem t5 = interp_at(plan, std::span<const int>(nodes_maj, 3),
                           std::span<const FieldElem>(y_maj, 3), 5);
  FieldElem t6 = interp_at(plan, std::span<const int>(nodes_maj, 3),
                           std::span<const FieldElem>(y_maj, 3), 6);
  FieldElem w_maj = interp_at(plan, std::span<const int>(nodes_maj, 3),
                              std::span<const FieldElem>(y_maj, 3), 0);
  const int nodes_min[3] = {node_min, 5, 6};
  const FieldElem ys_min[3] = {y_min, t5, t6};
  FieldElem w_min = interp_at(plan, nodes_min, ys_min, 0);

  WireLabelPair out;
  (v_min ? out.w1 : out.w0) = w_min.bits;
  (v_min ? out.w0 : out.w1) = w_maj.bits;
  st.pair[g.out] = out;
  st.ext0[g.out] = static_cast<std::uint8_t>(st.prg.bit());

  GateBlob blob;
  blob.cts = {t5.bits, t6.bits};
  for (int r = 0; r < 4; ++r) {
    const int ext_out = st.ext0[g.out] ^ out_v[r];
    blob.ext_bits |= static_cast<std::uint8_t>((ext_out ^ mbit[r]) << r);
  }
  return blob;
}

}  // namespace

GateBlob gate_flexor(GbState& st, const GateSpec& g) {
  const GateClass cls = classify_gate(g.truth_table);
  if (is_even_gate(cls)) {
    const std::uint32_t idx = g.out - st.c->n - 1;
    return flexor_even(st, g, st.fxplan.xor_cost[idx] != 0);
  }
  if (cls == GateClass::Trivial) return flexor_trivial(st, g);
  return flexor_odd(st, g);
}

}  // namespace garblekit::detail
