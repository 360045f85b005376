#include "scheme_internal.hpp"

namespace garblekit::detail {

void init_classic(GbState& st) {
  for (std::uint32_t w = 1; w <= st.c->n; ++w) st.pair[w] = st.rand_pair_pp();
}

void init_freexor(GbState& st) {
  st.gp.R = st.rand_label();
  st.gp.R.set_lsb(1);
  for (std::uint32_t w = 1; w <= st.c->n; ++w) {
    WireLabelPair p;
    p.w0 = st.rand_label();
    p.w1 = p.w0 ^ st.gp.R;
    st.pair[w] = p;
  }
}

GateBlob trivial_rows1(GbState& st, const GateSpec& g, const Label* R) {
  const bool use_b = trivial_uses_b(g.truth_table);
  const WireLabelPair& rp = st.pair[use_b ? g.in_b : g.in_a];
  const int p = rp.w0.lsb();
  // row s holds the key whose label bit is s, i.e. truth value s^p
  const Label& k0 = p ? rp.w1 : rp.w0;
  const Label& k1 = p ? rp.w0 : rp.w1;
  const int o0 = trivial_out(g.truth_table, use_b, p);
  const int o1 = trivial_out(g.truth_table, use_b, p ^ 1);

  Label derived = dkc_decrypt(st.opt.dkc, k0, k0, Tweak{g.out, 0}, Label(st.kb));
  WireLabelPair out;
  Label other = R ? (derived ^ *R) : st.rand_label();
  if (!R) other.set_lsb(derived.lsb() ^ 1);
  (o0 ? out.w1 : out.w0) = derived;
  (o0 ? out.w0 : out.w1) = other;
  st.pair[g.out] = out;

  GateBlob b;
  b.cts.push_back(dkc_encrypt(st.opt.dkc, k1, k1, Tweak{g.out, 1}, o1 ? out.w1 : out.w0));
  return b;
}

GateBlob gate_classic(GbState& st, const GateSpec& g) {
  if (classify_gate(g.truth_table) == GateClass::Trivial) return trivial_rows1(st, g, nullptr);
  const WireLabelPair& ap = st.pair[g.in_a];
  const WireLabelPair& bp = st.pair[g.in_b];
  WireLabelPair out = st.rand_pair_pp();
  st.pair[g.out] = out;

  GateBlob blob;
  blob.cts.assign(4, Label(st.kb));
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const Label& a = i ? ap.w1 : ap.w0;
      const Label& b = j ? bp.w1 : bp.w0;
      // point-and-permute: the row index is a function of label bits only
      const int s = (a.lsb() << 1) | b.lsb();
      const Label& c = g.value(i, j) ? out.w1 : out.w0;
      blob.cts[s] = dkc_encrypt(st.opt.dkc, a, b, Tweak{g.out, static_cast<std::uint8_t>(s)}, c);
    }
  }
  return blob;
}

GateBlob grr3_rows(GbState& st, const GateSpec& g, const Label* R) {
  const WireLabelPair& ap = st.pair[g.in_a];
  const WireLabelPair& bp = st.pair[g.in_b];
  const int pa = ap.w0.lsb();
  const int pb = bp.w0.lsb();

  // the permuted-first row decrypts the all-zero ciphertext
  const Label& ka = pa ? ap.w1 : ap.w0;
  const Label& kb = pb ? bp.w1 : bp.w0;
  Label derived = dkc_decrypt(st.opt.dkc, ka, kb, Tweak{g.out, 0}, Label(st.kb));
  const int o00 = g.value(pa, pb);

  WireLabelPair out;
  Label other = R ? (derived ^ *R) : st.rand_label();
  if (!R) other.set_lsb(derived.lsb() ^ 1);
  (o00 ? out.w1 : out.w0) = derived;
  (o00 ? out.w0 : out.w1) = other;
  st.pair[g.out] = out;

  GateBlob blob;
  for (int s = 1; s < 4; ++s) {
    const int i = (s >> 1) ^ pa;
    const int j = (s & 1) ^ pb;
    const Label& a = i ? ap.w1 : ap.w0;
    const Label& b = j ? bp.w1 : bp.w0;
    const Label& c = g.value(i, j) ? out.w1 : out.w0;
    blob.cts.push_back(
        dkc_encrypt(st.opt.dkc, a, b, Tweak{g.out, static_cast<std::uint8_t>(s)}, c));
  }
  return blob;
}

GateBlob gate_grr3(GbState& st, const GateSpec& g) {
  if (classify_gate(g.truth_table) == GateClass::Trivial) return trivial_rows1(st, g, nullptr);
  return grr3_rows(st, g, nullptr);
}

GateBlob gate_freexor(GbState& st, const GateSpec& g) {
  const GateClass cls = classify_gate(g.truth_table);
  if (cls == GateClass::Xor || cls == GateClass::Xnor) {
    WireLabelPair out;
    out.w0 = st.pair[g.in_a].w0 ^ st.pair[g.in_b].w0;
    if (cls == GateClass::Xnor) out.w0 ^= st.gp.R;
    out.w1 = out.w0 ^ st.gp.R;
    st.pair[g.out] = out;
    return GateBlob{};
  }
  if (cls == GateClass::Trivial) return trivial_rows1(st, g, &st.gp.R);
  return grr3_rows(st, g, &st.gp.R);
}

}  // namespace garblekit::detail
