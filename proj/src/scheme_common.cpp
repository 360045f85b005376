#include <algorithm>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

#include "garblekit/scheme.hpp"
#include "scheme_internal.hpp"

namespace garblekit {

const char* scheme_name(SchemeId s) {
  switch (s) {
    case SchemeId::ClassicPP: return "classic-pp";
    case SchemeId::Grr3: return "grr3";
    case SchemeId::FreeXor: return "free-xor";
    case SchemeId::Grr2: return "grr2";
    case SchemeId::FlexorGrr2: return "flexor-grr2";
    case SchemeId::HalfGates: return "half-gates";
  }
  return "?";
}

std::optional<SchemeId> scheme_from_name(std::string_view name) {
  for (int i = 0; i <= 5; ++i) {
    auto s = static_cast<SchemeId>(i);
    if (name == scheme_name(s)) return s;
  }
  return std::nullopt;
}

bool techniques_compatible(Technique a, Technique b) {
  if (a == b) return true;
  if (static_cast<int>(a) > static_cast<int>(b)) std::swap(a, b);
  using T = Technique;
  // upper triangle of the compatibility table; P&P pairs with the row-reduced
  // schemes through external values, which still counts as compatible
  switch (a) {
    case T::PP:
      return true;
    case T::Grr3:
      return b != T::Grr2;
    case T::FreeXor:
      return b == T::HalfGates;
    case T::Grr2:
      return b == T::Flexor;
    case T::Flexor:
      return false;  // only HalfGates remains, and they conflict
    case T::HalfGates:
      return true;   // unreachable: a < b
  }
  return false;
}

bool compatible(std::span<const Technique> ts) {
  for (std::size_t i = 0; i < ts.size(); ++i)
    for (std::size_t j = i + 1; j < ts.size(); ++j)
      if (!techniques_compatible(ts[i], ts[j])) return false;
  return true;
}

FlexorPlan flexor_offset_classes(const Circuit& c) {
  FlexorPlan plan;
  plan.wire_class.assign(c.wires() + 1, 0);
  plan.xor_cost.assign(c.q(), 0);
  std::uint32_t next_class = 0;
  for (std::uint32_t w = 1; w <= c.n; ++w) plan.wire_class[w] = next_class++;
  for (std::uint32_t i = 0; i < c.q(); ++i) {
    const GateSpec& g = c.gates[i];
    if (is_even_gate(classify_gate(g.truth_table))) {
      std::uint32_t ca = plan.wire_class[g.in_a];
      std::uint32_t cb = plan.wire_class[g.in_b];
      plan.wire_class[g.out] = ca;
      plan.xor_cost[i] = (ca == cb) ? 0 : 1;
      plan.total_xor_ciphertexts += plan.xor_cost[i];
    } else {
      plan.wire_class[g.out] = next_class++;  // derived labels, fresh offset
    }
  }
  return plan;
}

namespace detail {

namespace {

void build_coeffs(InterpPlan& plan, int mask, int target) {
  std::vector<int> nodes;
  for (int v = 1; v <= 6; ++v)
    if (mask & (1 << v)) nodes.push_back(v);
  std::vector<FieldElem> cs;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    FieldElem num = fe_from_u64(plan.k, 1);
    FieldElem den = fe_from_u64(plan.k, 1);
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      if (j == i) continue;
      num = gf_mul(num, gf_add(plan.node[target], plan.node[nodes[j]]));
      den = gf_mul(den, gf_add(plan.node[nodes[i]], plan.node[nodes[j]]));
    }
    cs.push_back(gf_mul(num, gf_inv(den)));
  }
  plan.key.push_back(target * 128 + mask);
  plan.coeff.push_back(std::move(cs));
}

}  // namespace

const std::vector<FieldElem>& InterpPlan::coeffs_for(int mask, int target) const {
  int k = target * 128 + mask;
  for (std::size_t i = 0; i < key.size(); ++i)
    if (key[i] == k) return coeff[i];
  throw std::logic_error("interp plan: uncached node set");
}

const InterpPlan& interp_plan(std::size_t k_bits) {
  static std::mutex mu;
  static std::unordered_map<std::size_t, std::unique_ptr<InterpPlan>> plans;
  std::lock_guard<std::mutex> lock(mu);
  auto it = plans.find(k_bits);
  if (it != plans.end()) return *it->second;

  auto plan = std::make_unique<InterpPlan>();
  plan->k = k_bits;
  for (int v = 0; v <= 6; ++v) plan->node[v] = fe_from_u64(k_bits, static_cast<std::uint64_t>(v));
  // every 2- or 3-node subset of {1..6} the schemes interpolate through,
  // evaluated at 0, 5 or 6 (only targets outside the subset)
  for (int mask = 0; mask < 128; mask += 2) {
    int pc = __builtin_popcount(static_cast<unsigned>(mask));
    if (pc != 2 && pc != 3) continue;
    for (int target : {0, 5, 6}) {
      if (mask & (1 << target)) continue;
      build_coeffs(*plan, mask, target);
    }
  }
  const InterpPlan& ref = *plan;
  plans.emplace(k_bits, std::move(plan));
  return ref;
}

FieldElem interp_at(const InterpPlan& plan, std::span<const int> nodes,
                    std::span<const FieldElem> ys, int target) {
  int mask = 0;
  for (int v : nodes) mask |= 1 << v;
  const auto& cs = plan.coeffs_for(mask, target);
  // coefficients are stored for ascending node ids
  std::array<std::size_t, 3> order{0, 1, 2};
  std::sort(order.begin(), order.begin() + nodes.size(),
            [&](std::size_t x, std::size_t y) { return nodes[x] < nodes[y]; });
  FieldElem acc = fe_from_u64(plan.k, 0);
  for (std::size_t i = 0; i < nodes.size(); ++i)
    acc = gf_add(acc, gf_mul(cs[i], ys[order[i]]));
  return acc;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Garbler / Evaluator shells

GarbledCircuit garbled_shape(SchemeId scheme, const Circuit& c, const SchemeOptions& opt) {
  GarbledCircuit shape;
  shape.scheme = scheme;
  shape.auth_decode = opt.authenticity_decode;
  shape.dkc = opt.dkc;
  shape.k_bits = static_cast<std::uint16_t>(opt.k_bits);
  shape.n = c.n;
  shape.m = c.m;
  FlexorPlan plan;
  if (scheme == SchemeId::FlexorGrr2) plan = flexor_offset_classes(c);
  shape.topo.reserve(c.q());
  for (const auto& g : c.gates) {
    GcGate t;
    t.a = g.in_a;
    t.b = g.in_b;
    GateClass cls = classify_gate(g.truth_table);
    bool trivial = cls == GateClass::Trivial;
    bool even = is_even_gate(cls);
    switch (scheme) {
      case SchemeId::ClassicPP:
        t.rule = trivial ? GateRule::Rows1 : GateRule::Rows4;
        break;
      case SchemeId::Grr3:
        t.rule = trivial ? GateRule::Rows1 : GateRule::Rows3;
        break;
      case SchemeId::FreeXor:
        t.rule = even ? GateRule::FreeXor : (trivial ? GateRule::Rows1 : GateRule::Rows3);
        break;
      case SchemeId::Grr2:
        t.rule = trivial ? GateRule::Grr2Trivial : (even ? GateRule::Grr2Even : GateRule::Grr2Odd);
        break;
      case SchemeId::FlexorGrr2:
        if (even)
          t.rule = plan.xor_cost[g.out - c.n - 1] ? GateRule::FxBuf : GateRule::FxFree;
        else
          t.rule = trivial ? GateRule::FxTrivial : GateRule::FxOdd;
        break;
      case SchemeId::HalfGates:
        t.rule = even ? GateRule::FreeXor : (trivial ? GateRule::HgTrivial : GateRule::HalfAnd);
        break;
    }
    if (trivial && detail::trivial_uses_b(g.truth_table)) t.aux |= 1;
    // free rules carry the gate polarity; the truth function is public for them
    if ((t.rule == GateRule::FreeXor || t.rule == GateRule::FxFree ||
         t.rule == GateRule::FxBuf) &&
        cls == GateClass::Xnor)
      t.aux |= 2;
    shape.topo.push_back(t);
  }
  return shape;
}

struct Garbler::Impl {
  Circuit circuit;
  detail::GbState st;
  GarbledCircuit shape;
  EncodingInfo enc;
  std::uint32_t next = 0;

  Impl(SchemeId scheme, const Circuit& c, std::uint64_t seed, SchemeOptions opt)
      : circuit(c), st(circuit, seed, opt) {
    if (opt.k_bits % 8 != 0 || opt.k_bits < 16 || opt.k_bits > 128)
      throw std::invalid_argument("scheme: k must be a multiple of 8 in [16,128]");
    if (opt.authenticity_decode && scheme != SchemeId::HalfGates)
      throw std::invalid_argument("scheme: authenticity decode is a HalfGates variant");
    validate(circuit);
    st.c = &circuit;

    switch (scheme) {
      case SchemeId::ClassicPP:
      case SchemeId::Grr3: detail::init_classic(st); break;
      case SchemeId::FreeXor:
      case SchemeId::HalfGates: detail::init_freexor(st); break;
      case SchemeId::Grr2: detail::init_grr2(st); break;
      case SchemeId::FlexorGrr2: detail::init_flexor(st); break;
    }

    shape = garbled_shape(scheme, circuit, opt);

    enc.k_bits = opt.k_bits;
    if (scheme == SchemeId::FreeXor || scheme == SchemeId::HalfGates) {
      enc.offset_form = true;
      enc.R = st.gp.R;
      for (std::uint32_t w = 1; w <= circuit.n; ++w) enc.zeros.push_back(st.pair[w].w0);
    } else {
      for (std::uint32_t w = 1; w <= circuit.n; ++w) enc.pairs.push_back(st.pair[w]);
    }
  }

  GateBlob garble_next() {
    const GateSpec& g = circuit.gates[next];
    next++;
    switch (shape.scheme) {
      case SchemeId::ClassicPP: return detail::gate_classic(st, g);
      case SchemeId::Grr3: return detail::gate_grr3(st, g);
      case SchemeId::FreeXor: return detail::gate_freexor(st, g);
      case SchemeId::Grr2: return detail::gate_grr2(st, g);
      case SchemeId::FlexorGrr2: return detail::gate_flexor(st, g);
      case SchemeId::HalfGates: return detail::gate_halfgates(st, g);
    }
    throw std::logic_error("unknown scheme");
  }

  DecodingInfo make_decoding() const {
    DecodingInfo d;
    d.k_bits = st.opt.k_bits;
    const std::uint32_t first = circuit.first_output_wire();
    if (shape.scheme == SchemeId::HalfGates) {
      if (shape.auth_decode) {
        d.kind = DecodeKind::HashPairs;
        d.hash_index_base = 2ull * (circuit.n + circuit.q()) + 2;
        for (std::uint32_t i = 0; i < circuit.m; ++i) {
          Tweak t{d.hash_index_base + i, 0};
          d.pairs.push_back({hash_kdf(st.pair[first + i].w0, t, st.opt.k_bits).v,
                             hash_kdf(st.pair[first + i].w1, t, st.opt.k_bits).v});
        }
      } else {
        d.kind = DecodeKind::LsbBits;
        for (std::uint32_t i = 0; i < circuit.m; ++i)
          d.lsb.push_back(static_cast<std::uint8_t>(st.pair[first + i].w0.lsb()));
      }
    } else {
      d.kind = DecodeKind::LabelPairs;
      for (std::uint32_t i = 0; i < circuit.m; ++i) d.pairs.push_back(st.pair[first + i]);
    }
    return d;
  }
};

Garbler::Garbler(SchemeId scheme, const Circuit& c, std::uint64_t seed, SchemeOptions opt)
    : impl_(std::make_unique<Impl>(scheme, c, seed, opt)) {}
Garbler::~Garbler() = default;
Garbler::Garbler(Garbler&&) noexcept = default;

const GarbledCircuit& Garbler::shape() const { return impl_->shape; }
const EncodingInfo& Garbler::encoding() const { return impl_->enc; }
bool Garbler::done() const { return impl_->next == impl_->circuit.q(); }
GateBlob Garbler::next_gate() {
  if (done()) throw std::logic_error("garbler: all gates produced");
  return impl_->garble_next();
}
DecodingInfo Garbler::decoding() const {
  if (!done()) throw std::logic_error("garbler: decoding info needs all gates garbled");
  return impl_->make_decoding();
}
const GlobalParams& Garbler::params() const { return impl_->st.gp; }
const WireLabelPair& Garbler::wire_pair(std::uint32_t wire) const {
  return impl_->st.pair.at(wire);
}
int Garbler::wire_ext0(std::uint32_t wire) const { return impl_->st.ext0.at(wire); }

struct Evaluator::Impl {
  detail::EvState st;
  GarbledCircuit shape;  // header + topo only
  bool have_input = false;

  explicit Impl(const GarbledCircuit& F) {
    shape = F;
    shape.blobs.clear();
    st.F = &shape;
    st.kb = F.k_bytes();
    st.label.assign(F.n + F.q() + 1, Label(st.kb));
    st.ext.assign(F.n + F.q() + 1, 0);
  }
};

Evaluator::Evaluator(const GarbledCircuit& shape) : impl_(std::make_unique<Impl>(shape)) {}
Evaluator::~Evaluator() = default;
Evaluator::Evaluator(Evaluator&&) noexcept = default;

void Evaluator::set_input(const GarbledInput& x) {
  if (x.size() != impl_->shape.n) throw std::invalid_argument("evaluator: input label count");
  for (std::uint32_t i = 0; i < impl_->shape.n; ++i) {
    impl_->st.label[i + 1] = x[i];
    impl_->st.ext[i + 1] = static_cast<std::uint8_t>(x[i].lsb());
  }
  impl_->have_input = true;
}

void Evaluator::feed(const GateBlob& blob) {
  if (!impl_->have_input) throw std::logic_error("evaluator: input labels not set");
  if (done()) throw std::logic_error("evaluator: all gates consumed");
  std::uint32_t idx = impl_->st.next;
  std::uint32_t wire = impl_->shape.n + 1 + idx;
  detail::eval_gate(impl_->st, wire, impl_->shape.topo[idx], blob);
  impl_->st.next++;
}

bool Evaluator::done() const { return impl_->st.next == impl_->shape.q(); }

GarbledOutput Evaluator::output() const {
  if (!done()) throw std::logic_error("evaluator: gates remain");
  GarbledOutput y;
  std::uint32_t first = impl_->shape.n + impl_->shape.q() - impl_->shape.m + 1;
  for (std::uint32_t i = 0; i < impl_->shape.m; ++i) y.push_back(impl_->st.label[first + i]);
  return y;
}

const Label& Evaluator::held(std::uint32_t wire) const { return impl_->st.label.at(wire); }
int Evaluator::held_ext(std::uint32_t wire) const { return impl_->st.ext.at(wire); }

// ---------------------------------------------------------------------------

GarbleResult gb(SchemeId scheme, const Circuit& c, std::uint64_t seed, SchemeOptions opt) {
  Garbler g(scheme, c, seed, opt);
  GarbleResult r;
  r.e = g.encoding();
  r.F = g.shape();
  r.F.blobs.reserve(c.q());
  while (!g.done()) r.F.blobs.push_back(g.next_gate());
  r.d = g.decoding();
  return r;
}

GarbledInput en(const EncodingInfo& e, const BitVec& x) {
  std::size_t n = e.offset_form ? e.zeros.size() : e.pairs.size();
  if (x.size() != n) throw std::invalid_argument("en: input length mismatch");
  GarbledInput X;
  X.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (e.offset_form)
      X.push_back((x[i] & 1) ? e.zeros[i] ^ e.R : e.zeros[i]);
    else
      X.push_back((x[i] & 1) ? e.pairs[i].w1 : e.pairs[i].w0);
  }
  return X;
}

GarbledOutput ev(const GarbledCircuit& F, const GarbledInput& X) {
  if (F.blobs.size() != F.topo.size()) throw std::invalid_argument("ev: garbled circuit has no blobs");
  Evaluator e(F);
  e.set_input(X);
  for (const auto& b : F.blobs) e.feed(b);
  return e.output();
}

std::optional<BitVec> de(const DecodingInfo& d, const GarbledOutput& Y) {
  std::size_t m = d.kind == DecodeKind::LsbBits ? d.lsb.size() : d.pairs.size();
  if (Y.size() != m) throw std::invalid_argument("de: output label count mismatch");
  BitVec y(m);
  for (std::size_t i = 0; i < m; ++i) {
    switch (d.kind) {
      case DecodeKind::LabelPairs:
        if (Y[i] == d.pairs[i].w0) y[i] = 0;
        else if (Y[i] == d.pairs[i].w1) y[i] = 1;
        else return std::nullopt;
        break;
      case DecodeKind::LsbBits:
        y[i] = static_cast<std::uint8_t>(d.lsb[i] ^ Y[i].lsb());
        break;
      case DecodeKind::HashPairs: {
        Label h = hash_kdf(Y[i], Tweak{d.hash_index_base + i, 0}, d.k_bits).v;
        if (h == d.pairs[i].w0) y[i] = 0;
        else if (h == d.pairs[i].w1) y[i] = 1;
        else return std::nullopt;
        break;
      }
    }
  }
  return y;
}

namespace {

SizeRow& row_for(GarbledSize& s, GateRule r) {
  switch (r) {
    case GateRule::Rows4: return s.four_row;
    case GateRule::Rows3: return s.three_row;
    case GateRule::Grr2Odd:
    case GateRule::Grr2Even:
    case GateRule::FxOdd: return s.two_point;
    case GateRule::HalfAnd: return s.half_and;
    case GateRule::FreeXor:
    case GateRule::FxFree: return s.free_gates;
    case GateRule::FxBuf: return s.buffers;
    case GateRule::Rows1:
    case GateRule::Grr2Trivial:
    case GateRule::FxTrivial:
    case GateRule::HgTrivial: return s.trivial;
  }
  return s.four_row;
}

}  // namespace

GarbledSize garbled_size(const GarbledCircuit& F) {
  GarbledSize s;
  for (std::uint32_t i = 0; i < F.q(); ++i) {
    const GateBlob& b = F.blobs[i];
    SizeRow& row = row_for(s, F.topo[i].rule);
    row.gates++;
    row.ciphertexts += b.cts.size();
    s.ciphertext_count += b.cts.size();
    std::uint64_t bits = 0;
    if (F.topo[i].rule == GateRule::Grr2Odd || F.topo[i].rule == GateRule::Grr2Even ||
        F.topo[i].rule == GateRule::FxOdd)
      bits = 4;
    else if (F.topo[i].rule == GateRule::Grr2Trivial || F.topo[i].rule == GateRule::FxTrivial)
      bits = 2;
    row.aux_bits += bits;
    s.aux_bits += bits;
  }
  s.bytes = s.ciphertext_count * F.k_bytes() + (s.aux_bits + 7) / 8;
  return s;
}

}  // namespace garblekit
