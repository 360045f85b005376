#include "garblekit/switchnet.hpp"

#include <algorithm>
#include <bit>

namespace garblekit {

std::uint32_t SwitchingNetwork::depth() const {
  std::vector<std::uint32_t> d(n_wires, 0);
  std::uint32_t best = 0;
  for (const auto& s : switches) {
    std::uint32_t v = std::max(d[s.in0], d[s.in1]) + 1;
    d[s.out0] = d[s.out1] = v;
    best = std::max(best, v);
  }
  return best;
}

namespace {

bool is_pow2(std::uint32_t n) { return n >= 1 && (n & (n - 1)) == 0; }

struct Builder {
  SwitchingNetwork net;

  std::uint32_t wire() { return net.n_wires++; }

  std::vector<std::uint32_t> waksman(const std::vector<std::uint32_t>& in) {
    const std::uint32_t n = static_cast<std::uint32_t>(in.size());
    if (n == 1) return in;
    if (n == 2) {
      std::uint32_t o0 = wire(), o1 = wire();
      net.switches.push_back({SwitchKind::One, in[0], in[1], o0, o1});
      return {o0, o1};
    }
    const std::uint32_t h = n / 2;
    std::vector<std::uint32_t> top_in(h), bot_in(h);
    for (std::uint32_t i = 0; i < h; ++i) {
      std::uint32_t t = wire(), b = wire();
      net.switches.push_back({SwitchKind::One, in[2 * i], in[2 * i + 1], t, b});
      top_in[i] = t;
      bot_in[i] = b;
    }
    auto top_out = waksman(top_in);
    auto bot_out = waksman(bot_in);
    std::vector<std::uint32_t> out(n);
    // one switch per output pair except the last: Waksman's saving
    for (std::uint32_t i = 0; i + 1 < h; ++i) {
      std::uint32_t o0 = wire(), o1 = wire();
      net.switches.push_back({SwitchKind::One, top_out[i], bot_out[i], o0, o1});
      out[2 * i] = o0;
      out[2 * i + 1] = o1;
    }
    out[n - 2] = top_out[h - 1];
    out[n - 1] = bot_out[h - 1];
    return out;
  }
};

// Routes perm on an n-input Waksman block, appending selection bits in the
// exact order Builder::waksman emits switches.
void route(std::span<const std::uint32_t> perm, Selections& out) {
  const std::uint32_t n = static_cast<std::uint32_t>(perm.size());
  if (n == 1) return;
  if (n == 2) {
    out.push_back(perm[0] == 1 ? 1 : 0);
    return;
  }
  const std::uint32_t h = n / 2;
  std::vector<std::uint32_t> inv(n);
  for (std::uint32_t i = 0; i < n; ++i) inv[perm[i]] = i;

  // 2-color the input elements: 0 = through the top subnetwork. Input-pair
  // partners differ; elements arriving at one output switch differ; the
  // switchless last output pair forces its two sources.
  std::vector<int> side(n, -1);
  auto propagate = [&](std::uint32_t start, int c0) {
    std::uint32_t e = start;
    int c = c0;
    while (true) {
      if (side[e] != -1) {
        if (side[e] != c) throw std::logic_error("waksman: inconsistent routing");
        break;
      }
      side[e] = c;
      std::uint32_t p = e ^ 1;
      if (side[p] != -1) {
        if (side[p] != (c ^ 1)) throw std::logic_error("waksman: inconsistent routing");
        break;
      }
      side[p] = c ^ 1;
      std::uint32_t o = perm[p];
      if ((o >> 1) == h - 1) {
        if (side[p] != (o == n - 1 ? 1 : 0))
          throw std::logic_error("waksman: last-pair constraint violated");
        break;
      }
      e = inv[o ^ 1];
      c = side[p] ^ 1;
    }
  };
  propagate(inv[n - 1], 1);
  propagate(inv[n - 2], 0);
  for (std::uint32_t e = 0; e < n; ++e)
    if (side[e] == -1) propagate(e, 0);

  for (std::uint32_t i = 0; i < h; ++i)
    out.push_back(static_cast<std::uint8_t>(side[2 * i]));

  std::vector<std::uint32_t> p_top(h), p_bot(h), top_elem(h);
  for (std::uint32_t i = 0; i < h; ++i) {
    std::uint32_t et = side[2 * i] == 0 ? 2 * i : 2 * i + 1;
    std::uint32_t eb = et ^ 1;
    top_elem[i] = et;
    p_top[i] = perm[et] >> 1;
    p_bot[i] = perm[eb] >> 1;
  }
  route(p_top, out);
  route(p_bot, out);

  std::vector<std::uint32_t> inv_top(h);
  for (std::uint32_t i = 0; i < h; ++i) inv_top[p_top[i]] = i;
  for (std::uint32_t j = 0; j + 1 < h; ++j) {
    std::uint32_t e = top_elem[inv_top[j]];
    out.push_back(static_cast<std::uint8_t>(perm[e] & 1));
  }
}

}  // namespace

SwitchingNetwork waksman_build(std::uint32_t n) {
  if (!is_pow2(n) || n < 2)
    throw std::invalid_argument("waksman: size must be a power of two >= 2");
  Builder b;
  std::vector<std::uint32_t> in(n);
  for (auto& w : in) w = b.wire();
  b.net.inputs = in;
  b.net.outputs = b.waksman(in);
  return std::move(b.net);
}

Selections waksman_program(std::uint32_t n, std::span<const std::uint32_t> perm) {
  if (!is_pow2(n) || n < 2)
    throw std::invalid_argument("waksman: size must be a power of two >= 2");
  if (perm.size() != n) throw std::invalid_argument("waksman: permutation size mismatch");
  std::vector<bool> seen(n, false);
  for (auto v : perm) {
    if (v >= n || seen[v]) throw std::invalid_argument("waksman: not a permutation");
    seen[v] = true;
  }
  Selections sel;
  route(perm, sel);
  return sel;
}

EpNetwork ep_network_build(std::uint32_t n_sinks) {
  if (n_sinks < 1) throw std::invalid_argument("ep network: need at least one sink");
  EpNetwork ep;
  ep.N = n_sinks;
  ep.padded = std::max<std::uint32_t>(2, std::bit_ceil(n_sinks));

  Builder b;
  std::vector<std::uint32_t> in(ep.padded);
  for (auto& w : in) w = b.wire();
  b.net.inputs = in;

  auto placed = b.waksman(in);
  ep.dummy_end = static_cast<std::uint32_t>(b.net.switches.size());

  // replication chain: each 2-switch emits the finished value for the
  // previous slot and the running value for its own
  std::vector<std::uint32_t> repl(ep.padded);
  std::uint32_t running = placed[0];
  for (std::uint32_t s = 1; s < ep.padded; ++s) {
    std::uint32_t o0 = b.wire(), o1 = b.wire();
    b.net.switches.push_back({SwitchKind::Two, running, placed[s], o0, o1});
    repl[s - 1] = o0;
    running = o1;
  }
  repl[ep.padded - 1] = running;
  ep.repl_end = static_cast<std::uint32_t>(b.net.switches.size());

  b.net.outputs = b.waksman(repl);
  ep.net = std::move(b.net);
  return ep;
}

Selections ep_program(const EpNetwork& net, const ExtendedPermutation& ep) {
  if (ep.N != net.N) throw std::invalid_argument("ep_program: sink count mismatch");
  if (ep.M == 0 || ep.M > net.padded) throw std::invalid_argument("ep_program: bad source count");
  if (ep.source.size() != ep.N) throw std::invalid_argument("ep_program: source list size");
  const std::uint32_t P = net.padded;

  std::vector<std::uint32_t> mult(ep.M, 0);
  for (auto s : ep.source) {
    if (s >= ep.M) throw std::invalid_argument("ep_program: source out of range");
    mult[s]++;
  }

  // slot layout: each used source followed by its copies, padding at the tail
  std::vector<bool> run_start(P, false);
  std::vector<std::uint32_t> start_slot(ep.M, 0);
  std::uint32_t pos = 0;
  for (std::uint32_t i = 0; i < ep.M; ++i) {
    if (mult[i] == 0) continue;
    start_slot[i] = pos;
    run_start[pos] = true;
    pos += mult[i];
  }

  // dummy placement: used sources to their run starts, everything else
  // (unused sources, dummies, padding) to the remaining slots in order
  std::vector<std::uint32_t> perm_d(P);
  std::vector<std::uint32_t> filler_slots;
  for (std::uint32_t s = 0; s < P; ++s)
    if (!run_start[s]) filler_slots.push_back(s);
  std::uint32_t fi = 0;
  for (std::uint32_t u = 0; u < P; ++u) {
    if (u < ep.M && mult[u] > 0)
      perm_d[u] = start_slot[u];
    else
      perm_d[u] = filler_slots[fi++];
  }

  Selections sel = waksman_program(P, perm_d);

  for (std::uint32_t s = 1; s < P; ++s)
    sel.push_back(run_start[s] ? 1 : 0);  // (0,1) keeps the real, (0,0) copies

  // permutation stage: the t-th copy of source i goes to its t-th sink
  std::vector<std::uint32_t> perm_p(P);
  std::vector<std::uint32_t> next_slot = start_slot;
  for (std::uint32_t j = 0; j < ep.N; ++j) perm_p[next_slot[ep.source[j]]++] = j;
  for (std::uint32_t s = ep.N, j = ep.N; s < P; ++s, ++j) perm_p[s] = j;

  Selections tail = waksman_program(P, perm_p);
  sel.insert(sel.end(), tail.begin(), tail.end());
  return sel;
}

}  // namespace garblekit
