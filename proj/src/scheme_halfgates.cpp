#include "scheme_internal.hpp"

namespace garblekit::detail {

namespace {

// every odd gate is (v_a ^ alpha_a)(v_b ^ alpha_b) ^ alpha_c for constants
// alpha; AND is all-FALSE, OR all-TRUE
struct OddForm {
  int aa, ab, ac;
};

OddForm odd_form(const GateSpec& g) {
  int ones = 0;
  for (int r = 0; r < 4; ++r) ones += (g.truth_table >> r) & 1;
  const int minority = (ones == 1) ? 1 : 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (g.value(i, j) == minority) return {i ^ 1, j ^ 1, minority ^ 1};
  return {0, 0, 0};
}

GateBlob halfgates_odd(GbState& st, const GateSpec& g) {
  const auto [aa, ab, ac] = odd_form(g);
  const WireLabelPair& ap = st.pair[g.in_a];
  const WireLabelPair& bp = st.pair[g.in_b];
  const int pa = ap.w0.lsb();
  const int pb = bp.w0.lsb();
  const std::uint64_t j1 = 2ull * g.out;
  const std::uint64_t j2 = 2ull * g.out + 1;
  const std::size_t k = st.opt.k_bits;

  const Label ha0 = hash_kdf(ap.w0, Tweak{j1, 0}, k).v;
  const Label ha1 = hash_kdf(ap.w1, Tweak{j1, 0}, k).v;
  const Label hb0 = hash_kdf(bp.w0, Tweak{j2, 0}, k).v;
  const Label hb1 = hash_kdf(bp.w1, Tweak{j2, 0}, k).v;

  // generator half gate
  Label tg = ha0 ^ ha1;
  if ((pb ^ ab) & 1) tg ^= st.gp.R;
  Label wg0 = pa ? ha1 : ha0;
  if ((((pa ^ aa) & (pb ^ ab)) ^ ac) & 1) wg0 ^= st.gp.R;
  // evaluator half gate
  Label te = hb0 ^ hb1 ^ (aa ? ap.w1 : ap.w0);
  Label we0 = pb ? hb1 : hb0;

  WireLabelPair out;
  out.w0 = wg0 ^ we0;
  out.w1 = out.w0 ^ st.gp.R;
  st.pair[g.out] = out;

  GateBlob blob;
  blob.cts = {tg, te};
  return blob;
}

GateBlob halfgates_trivial(GbState& st, const GateSpec& g) {
  const bool use_b = trivial_uses_b(g.truth_table);
  const WireLabelPair& rp = st.pair[use_b ? g.in_b : g.in_a];
  const int p = rp.w0.lsb();
  const std::uint64_t j1 = 2ull * g.out;
  const int o0 = trivial_out(g.truth_table, use_b, p);
  const int o1 = trivial_out(g.truth_table, use_b, p ^ 1);

  Label derived = hash_kdf(p ? rp.w1 : rp.w0, Tweak{j1, 0}, st.opt.k_bits).v;
  WireLabelPair out;
  (o0 ? out.w1 : out.w0) = derived;
  (o0 ? out.w0 : out.w1) = derived ^ st.gp.R;
  st.pair[g.out] = out;

  GateBlob blob;
  blob.cts.push_back(hash_kdf(p ? rp.w0 : rp.w1, Tweak{j1, 1}, st.opt.k_bits).v ^
                     (o1 ? out.w1 : out.w0));
  return blob;
}

}  // namespace

GateBlob gate_halfgates(GbState& st, const GateSpec& g) {
  const GateClass cls = classify_gate(g.truth_table);
  if (cls == GateClass::Xor || cls == GateClass::Xnor) {
    WireLabelPair out;
    out.w0 = st.pair[g.in_a].w0 ^ st.pair[g.in_b].w0;
    if (cls == GateClass::Xnor) out.w0 ^= st.gp.R;
    out.w1 = out.w0 ^ st.gp.R;
    st.pair[g.out] = out;
    return GateBlob{};
  }
  if (cls == GateClass::Trivial) return halfgates_trivial(st, g);
  return halfgates_odd(st, g);
}

}  // namespace garblekit::detail
