#include "garblekit/twopc.hpp"

#include <algorithm>
#include <exception>
#include <thread>

#include "garblekit/ot.hpp"

namespace garblekit {

namespace {

struct SizeAccumulator {
  std::uint64_t ct_bytes = 0;
  std::uint64_t aux_bits = 0;
  std::size_t kb;
  explicit SizeAccumulator(std::size_t k_bytes) : kb(k_bytes) {}
  void add(const GateBlob& b, GateRule rule) {
    ct_bytes += b.cts.size() * kb;
    switch (rule) {
      case GateRule::Grr2Odd:
      case GateRule::Grr2Even:
      case GateRule::FxOdd: aux_bits += 4; break;
      case GateRule::Grr2Trivial:
      case GateRule::FxTrivial: aux_bits += 2; break;
      default: break;
    }
  }
  std::uint64_t total() const { return ct_bytes + (aux_bits + 7) / 8; }
};

BitVec parse_plain_output(const Frame& f) {
  BitVec y;
  y.reserve(f.payload.size());
  for (auto b : f.payload) y.push_back(b & 1);
  return y;
}

TwoPcResult run_garbler(const Circuit& c, const BitVec& x, const InputOwnership& own,
                        Channel& ch, const TwoPcOptions& opt) {
  if (own.owner.size() != c.n) throw std::invalid_argument("2pc: ownership map size");
  if (x.size() != own.count(Party::Garbler)) throw std::invalid_argument("2pc: input size");

  Garbler garbler(opt.scheme, c, opt.seed, opt.sopt);
  const std::size_t kb = opt.sopt.k_bits / 8;

  // own input labels, ascending wire order of garbler-owned wires
  Bytes in_payload;
  std::uint32_t xi = 0;
  for (std::uint32_t w = 1; w <= c.n; ++w) {
    if (own.owner[w - 1] != 0) continue;
    const auto& p = garbler.wire_pair(w);
    append_bytes(in_payload, ((x[xi++] & 1) ? p.w1 : p.w0).bytes());
  }
  ch.send(FrameTag::InputLabels, in_payload);

  // evaluator inputs via 1-out-of-2 OT, one batch
  const std::uint32_t eval_wires = own.count(Party::Evaluator);
  if (eval_wires > 0) {
    OtBatch batch{2, eval_wires, static_cast<std::uint32_t>(opt.sopt.k_bits)};
    std::vector<std::vector<Bytes>> msgs;
    msgs.reserve(eval_wires);
    for (std::uint32_t w = 1; w <= c.n; ++w) {
      if (own.owner[w - 1] != 1) continue;
      const auto& p = garbler.wire_pair(w);
      msgs.push_back({Bytes(p.w0.bytes().begin(), p.w0.bytes().end()),
                      Bytes(p.w1.bytes().begin(), p.w1.bytes().end())});
    }
    ot_send(ch, batch, msgs);
  }

  SizeAccumulator size(kb);
  const auto& topo = garbler.shape().topo;
  if (opt.pipelined) {
    std::uint32_t idx = 0;
    while (!garbler.done()) {
      GateBlob blob = garbler.next_gate();
      size.add(blob, topo[idx++].rule);
      ch.send(FrameTag::GcGate, blob_to_bytes(blob, kb));
    }
  } else {
    Bytes bulk;
    std::uint32_t idx = 0;
    while (!garbler.done()) {
      GateBlob blob = garbler.next_gate();
      size.add(blob, topo[idx++].rule);
      Bytes bb = blob_to_bytes(blob, kb);
      append_u32(bulk, static_cast<std::uint32_t>(bb.size()));
      append_bytes(bulk, bb);
    }
    ch.send(FrameTag::GcBulk, bulk);
  }

  TwoPcResult res;
  res.garbled_bytes = size.total();
  res.peak_retained_gate_blobs = 1;  // one blob lives between garble and send

  DecodingInfo d = garbler.decoding();
  if (opt.ship_decoding_to_evaluator) {
    ch.send(FrameTag::OutputLabels, serialize_decoding(d));
    Frame yf = ch.expect(FrameTag::OutputPlain);
    res.y = parse_plain_output(yf);
  } else {
    Frame yl = ch.expect(FrameTag::OutputLabels);
    ByteReader rd(yl.payload);
    GarbledOutput Y;
    for (std::uint32_t i = 0; i < c.m; ++i) Y.push_back(rd.label(kb));
    auto y = de(d, Y);
    if (!y) {
      ch.abort("decode failure");
      throw DecodeFailure();
    }
    Bytes out(y->begin(), y->end());
    ch.send(FrameTag::OutputPlain, out);
    res.y = *y;
  }
  return res;
}

TwoPcResult run_evaluator(const Circuit& c, const BitVec& x, const InputOwnership& own,
                          Channel& ch, const TwoPcOptions& opt) {
  if (own.owner.size() != c.n) throw std::invalid_argument("2pc: ownership map size");
  if (x.size() != own.count(Party::Evaluator)) throw std::invalid_argument("2pc: input size");

  const std::size_t kb = opt.sopt.k_bits / 8;
  GarbledCircuit shape = garbled_shape(opt.scheme, c, opt.sopt);
  Evaluator eval(shape);

  // garbler input labels
  Frame in = ch.expect(FrameTag::InputLabels);
  ByteReader rd(in.payload);
  std::vector<Label> labels(c.n + 1, Label(kb));
  for (std::uint32_t w = 1; w <= c.n; ++w)
    if (own.owner[w - 1] == 0) labels[w] = rd.label(kb);

  // own labels via OT
  const std::uint32_t eval_wires = own.count(Party::Evaluator);
  if (eval_wires > 0) {
    OtBatch batch{2, eval_wires, static_cast<std::uint32_t>(opt.sopt.k_bits)};
    auto chosen = ot_receive(ch, batch, x);
    std::uint32_t xi = 0;
    for (std::uint32_t w = 1; w <= c.n; ++w)
      if (own.owner[w - 1] == 1) labels[w] = Label(std::span<const std::uint8_t>(chosen[xi++]));
  }

  GarbledInput X(labels.begin() + 1, labels.end());
  eval.set_input(X);

  SizeAccumulator size(kb);
  TwoPcResult res;
  if (opt.pipelined) {
    std::uint32_t held = 0, peak = 0;
    for (std::uint32_t i = 0; i < c.q(); ++i) {
      Frame f = ch.expect(FrameTag::GcGate);
      held++;
      peak = std::max(peak, held);
      GateBlob blob = blob_from_bytes(f.payload, kb);
      size.add(blob, shape.topo[i].rule);
      eval.feed(blob);
      held--;  // evaluated and released
    }
    res.peak_retained_gate_blobs = peak;
  } else {
    Frame f = ch.expect(FrameTag::GcBulk);
    ByteReader bulk(f.payload);
    std::vector<GateBlob> blobs;
    blobs.reserve(c.q());
    for (std::uint32_t i = 0; i < c.q(); ++i) {
      std::uint32_t len = bulk.u32();
      blobs.push_back(blob_from_bytes(bulk.take(len), kb));
      size.add(blobs.back(), shape.topo[i].rule);
    }
    res.peak_retained_gate_blobs = c.q();
    for (const auto& blob : blobs) eval.feed(blob);
  }
  res.garbled_bytes = size.total();

  GarbledOutput Y = eval.output();
  if (opt.ship_decoding_to_evaluator) {
    Frame df = ch.expect(FrameTag::OutputLabels);
    DecodingInfo d = parse_decoding(df.payload);
    auto y = de(d, Y);
    if (!y) {
      ch.abort("decode failure");
      throw DecodeFailure();
    }
    Bytes out(y->begin(), y->end());
    ch.send(FrameTag::OutputPlain, out);
    res.y = *y;
  } else {
    Bytes payload;
    for (const auto& l : Y) append_bytes(payload, l.bytes());
    ch.send(FrameTag::OutputLabels, payload);
    Frame yf = ch.expect(FrameTag::OutputPlain);
    res.y = parse_plain_output(yf);
  }
  return res;
}

}  // namespace

TwoPcResult run_2pc(Party role, const Circuit& c, const BitVec& x,
                    const InputOwnership& ownership, Channel& ch, const TwoPcOptions& opt) {
  return role == Party::Garbler ? run_garbler(c, x, ownership, ch, opt)
                                : run_evaluator(c, x, ownership, ch, opt);
}

LocalRunResult run_2pc_local(const Circuit& c, const BitVec& x_garbler,
                             const BitVec& x_evaluator, const InputOwnership& ownership,
                             const TwoPcOptions& opt) {
  auto [ga, ev] = make_inproc_pair();
  LocalRunResult res;
  std::exception_ptr g_err, e_err;

  std::thread gt([&] {
    try {
      res.garbler = run_2pc(Party::Garbler, c, x_garbler, ownership, *ga, opt);
    } catch (...) {
      g_err = std::current_exception();
    }
    res.garbler_transcript = ga->transcript();
  });
  std::thread et([&] {
    try {
      res.evaluator = run_2pc(Party::Evaluator, c, x_evaluator, ownership, *ev, opt);
    } catch (...) {
      e_err = std::current_exception();
    }
    res.evaluator_transcript = ev->transcript();
  });
  gt.join();
  et.join();
  if (g_err) std::rethrow_exception(g_err);
  if (e_err) std::rethrow_exception(e_err);
  return res;
}

}  // namespace garblekit
