#include "scheme_internal.hpp"

namespace garblekit::detail {

void init_grr2(GbState& st) {
  for (std::uint32_t w = 1; w <= st.c->n; ++w) {
    st.pair[w] = st.rand_pair_pp();
    // input labels are chosen, so their label bit doubles as the external value
    st.ext0[w] = static_cast<std::uint8_t>(st.pair[w].w0.lsb());
  }
}

namespace {

struct RowView {
  const Label* key_a;
  const Label* key_b;
  int out;  // truth value of the gate output on this row
};

// rows indexed by the pair of input external values
std::array<RowView, 4> gate_rows(const GbState& st, const GateSpec& g) {
  const WireLabelPair& ap = st.pair[g.in_a];
  const WireLabelPair& bp = st.pair[g.in_b];
  const int ea = st.ext0[g.in_a];
  const int eb = st.ext0[g.in_b];
  std::array<RowView, 4> rows;
  for (int r = 0; r < 4; ++r) {
    const int i = (r >> 1) ^ ea;
    const int j = (r & 1) ^ eb;
    rows[r] = {i ? &ap.w1 : &ap.w0, j ? &bp.w1 : &bp.w0, g.value(i, j)};
  }
  return rows;
}

GateBlob grr2_trivial(GbState& st, const GateSpec& g) {
  const bool use_b = trivial_uses_b(g.truth_table);
  const std::uint32_t rel = use_b ? g.in_b : g.in_a;
  const WireLabelPair& rp = st.pair[rel];
  const int e0 = st.ext0[rel];

  // row s: the key whose external value is s
  const Label* key[2];
  int out_v[2];
  for (int s = 0; s < 2; ++s) {
    const int v = s ^ e0;
    key[s] = v ? &rp.w1 : &rp.w0;
    out_v[s] = trivial_out(g.truth_table, use_b, v);
  }

  Label derived = dkc_decrypt(st.opt.dkc, *key[0], *key[0], Tweak{g.out, 0}, Label(st.kb));
  WireLabelPair out;
  Label other = st.rand_label();
  (out_v[0] ? out.w1 : out.w0) = derived;
  (out_v[0] ? out.w0 : out.w1) = other;
  st.pair[g.out] = out;
  st.ext0[g.out] = static_cast<std::uint8_t>(st.prg.bit());

  GateBlob blob;
  blob.cts.push_back(dkc_encrypt(st.opt.dkc, *key[1], *key[1], Tweak{g.out, 1},
                                 out_v[1] ? out.w1 : out.w0));
  for (int s = 0; s < 2; ++s) {
    const int ext_out = st.ext0[g.out] ^ out_v[s];
    blob.ext_bits |= static_cast<std::uint8_t>((ext_out ^ key[s]->lsb()) << s);
  }
  return blob;
}

}  // namespace

GateBlob gate_grr2(GbState& st, const GateSpec& g) {
  const GateClass cls = classify_gate(g.truth_table);
  if (cls == GateClass::Trivial) return grr2_trivial(st, g);

  const auto& plan = interp_plan(st.opt.k_bits);
  const auto rows = gate_rows(st, g);
  FieldElem kval[4];
  for (int r = 0; r < 4; ++r)
    kval[r] = FieldElem(dkc_decrypt(st.opt.dkc, *rows[r].key_a, *rows[r].key_b,
                                    Tweak{g.out, static_cast<std::uint8_t>(r)}, Label(st.kb)));

  WireLabelPair out;
  GateBlob blob;
  st.ext0[g.out] = static_cast<std::uint8_t>(st.prg.bit());

  if (is_odd_gate(cls)) {
    // 3 same-output rows pin the degree-2 polynomial; ship its values at 5 and 6
    int ones = rows[0].out + rows[1].out + rows[2].out + rows[3].out;
    const int v_min = (ones == 1) ? 1 : 0;
    int nodes_maj[3], node_min = 0;
    FieldElem y_maj[3];
    FieldElem y_min;
    int idx = 0;
    for (int r = 0; r < 4; ++r) {
      if (rows[r].out == v_min) {
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
    (v_min ? out.w1 : out.w0) = w_min.bits;
    (v_min ? out.w0 : out.w1) = w_maj.bits;
    blob.cts = {t5.bits, t6.bits};
  } else {
    // even gate: one line per output value, the transmitted points ordered
    // by the output external value
    blob.cts.assign(2, Label(st.kb));
    for (int v = 0; v < 2; ++v) {
      int nodes[2];
      FieldElem ys[2];
      int idx = 0;
      for (int r = 0; r < 4; ++r) {
        if (rows[r].out != v) continue;
        nodes[idx] = r + 1;
        ys[idx++] = kval[r];
      }
      FieldElem w = interp_at(plan, std::span<const int>(nodes, 2),
                              std::span<const FieldElem>(ys, 2), 0);
      FieldElem t = interp_at(plan, std::span<const int>(nodes, 2),
                              std::span<const FieldElem>(ys, 2), 5);
      (v ? out.w1 : out.w0) = w.bits;
      blob.cts[st.ext0[g.out] ^ v] = t.bits;
    }
  }

  st.pair[g.out] = out;
  for (int r = 0; r < 4; ++r) {
    const int ext_out = st.ext0[g.out] ^ rows[r].out;
    const int mask = rows[r].key_a->lsb() ^ rows[r].key_b->lsb();
    blob.ext_bits |= static_cast<std::uint8_t>((ext_out ^ mask) << r);
  }
  return blob;
}

}  // namespace garblekit::detail
