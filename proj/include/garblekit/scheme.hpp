#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "garblekit/circuit.hpp"
#include "garblekit/dkc.hpp"
#include "garblekit/label.hpp"

namespace garblekit {

/// The garbling schemes, in the order the optimizations build on each other.
enum class SchemeId : std::uint8_t {
  ClassicPP = 0,   // point-and-permute, 4 ciphertexts everywhere
  Grr3 = 1,        // row 0 derived by decrypting zero, 3 ciphertexts
  FreeXor = 2,     // global offset, XOR/XNOR free, odd gates via GRR3
  Grr2 = 3,        // polynomial row reduction, 2 points + 4 external-value bits
  FlexorGrr2 = 4,  // offset classes per wire, XOR costs {0,1} ct, odd gates GRR2-style
  HalfGates = 5,   // generator/evaluator half gates, 2 ciphertexts per odd gate
};

const char* scheme_name(SchemeId s);
std::optional<SchemeId> scheme_from_name(std::string_view name);

/// The individual techniques of the compatibility table.
enum class Technique : std::uint8_t { PP, Grr3, FreeXor, Grr2, Flexor, HalfGates };

/// Pairwise compatibility, exactly the off-diagonal cells of the table
/// (external-value-mediated pairings count as compatible).
bool techniques_compatible(Technique a, Technique b);
/// A set of techniques is compatible iff every pair is.
bool compatible(std::span<const Technique> techniques);

struct SchemeOptions {
  DkcVariant dkc = DkcVariant::FixedKeyAes;
  std::size_t k_bits = 128;          // label width, multiple of 8 in [16,128]
  bool authenticity_decode = false;  // HalfGates only: hash-pair decoding info
};

struct WireLabelPair {
  Label w0;  // FALSE
  Label w1;  // TRUE
};

struct GlobalParams {
  std::size_t k_bits = 128;
  std::uint64_t seed = 0;
  Label R;  // free-XOR offset; lsb(R)=1 (offset schemes only)
};

/// What the evaluator has to do for one gate. This is what the garbled
/// topology reveals; it never includes the truth table of a non-free gate.
enum class GateRule : std::uint8_t {
  FreeXor = 0,      // W = Wa ^ Wb, no ciphertext
  Rows4 = 1,        // decrypt the row selected by the two label bits
  Rows3 = 2,        // row (0,0) decrypts the all-zero ciphertext
  Rows1 = 3,        // trivial gate: one relevant input, one shipped row
  Grr2Odd = 4,      // decrypt zero, interpolate through {row, 5, 6}
  Grr2Even = 5,     // decrypt zero, line through {row, 5}
  Grr2Trivial = 6,  // one ciphertext plus external-value bits
  FxFree = 7,       // fleXOR, input classes match: free
  FxBuf = 8,        // fleXOR, one buffer ciphertext rebases input b
  FxOdd = 9,        // fleXOR odd gate: hash rows, interpolate
  FxTrivial = 10,   // fleXOR trivial gate: hash rows, one ciphertext
  HalfAnd = 11,     // generator + evaluator half gate, 2 ciphertexts
  HgTrivial = 12,   // half-gates trivial gate: hash rows, one ciphertext
};

struct GcGate {
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  GateRule rule = GateRule::FreeXor;
  std::uint8_t aux = 0;  // bit0: trivial gate reads input b instead of a
};

struct GateBlob {
  std::vector<Label> cts;     // ciphertexts or transmitted field points
  std::uint8_t ext_bits = 0;  // external-value mask bits (GRR2 family)
};

struct GarbledCircuit {
  SchemeId scheme = SchemeId::ClassicPP;
  bool auth_decode = false;
  DkcVariant dkc = DkcVariant::FixedKeyAes;
  std::uint16_t k_bits = 128;
  std::uint32_t n = 0;
  std::uint32_t m = 0;
  std::vector<GcGate> topo;
  std::vector<GateBlob> blobs;

  std::uint32_t q() const { return static_cast<std::uint32_t>(topo.size()); }
  std::size_t k_bytes() const { return k_bits / 8; }
};

struct EncodingInfo {
  std::size_t k_bits = 128;
  bool offset_form = false;          // true: zeros + R; false: explicit pairs
  std::vector<WireLabelPair> pairs;  // size n when !offset_form
  std::vector<Label> zeros;          // size n when offset_form
  Label R;
};

enum class DecodeKind : std::uint8_t { LabelPairs = 0, LsbBits = 1, HashPairs = 2 };

struct DecodingInfo {
  DecodeKind kind = DecodeKind::LabelPairs;
  std::size_t k_bits = 128;
  std::vector<WireLabelPair> pairs;  // LabelPairs: labels; HashPairs: hash pair
  BitVec lsb;                        // LsbBits
  std::uint64_t hash_index_base = 0; // HashPairs: first output-hash tweak index
};

using GarbledInput = std::vector<Label>;
using GarbledOutput = std::vector<Label>;

struct GarbleResult {
  GarbledCircuit F;
  EncodingInfo e;
  DecodingInfo d;
};

/// Streaming garbler: emits gate blobs in topological order, so the runtime
/// can transmit each gate as soon as it exists. gb() below is the
/// whole-circuit wrapper over this class.
class Garbler {
 public:
  Garbler(SchemeId scheme, const Circuit& c, std::uint64_t seed, SchemeOptions opt = {});
  ~Garbler();
  Garbler(Garbler&&) noexcept;

  /// Topology + header; blobs are empty until produced.
  const GarbledCircuit& shape() const;
  const EncodingInfo& encoding() const;

  bool done() const;
  GateBlob next_gate();

  /// Valid once done().
  DecodingInfo decoding() const;

  // Introspection for tests and for the protocol layers.
  const GlobalParams& params() const;
  const WireLabelPair& wire_pair(std::uint32_t wire) const;
  int wire_ext0(std::uint32_t wire) const;  // GRR2 family: external value of w0

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Streaming evaluator: consumes gate blobs in topological order and keeps
/// only live wire labels. ev() below is the whole-circuit wrapper.
class Evaluator {
 public:
  explicit Evaluator(const GarbledCircuit& shape);
  ~Evaluator();
  Evaluator(Evaluator&&) noexcept;

  void set_input(const GarbledInput& x);
  void feed(const GateBlob& blob);
  bool done() const;
  GarbledOutput output() const;

  // Test instrumentation: the label currently held on a wire.
  const Label& held(std::uint32_t wire) const;
  int held_ext(std::uint32_t wire) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Header + topology of the garbled form of c, blobs empty. Depends only on
/// public data, so both protocol parties can compute it.
GarbledCircuit garbled_shape(SchemeId scheme, const Circuit& c, const SchemeOptions& opt = {});

GarbleResult gb(SchemeId scheme, const Circuit& c, std::uint64_t seed, SchemeOptions opt = {});
GarbledInput en(const EncodingInfo& e, const BitVec& x);
GarbledOutput ev(const GarbledCircuit& F, const GarbledInput& X);
/// nullopt is the decode failure ("bottom"): some output label was not
/// recognized (or, for the authenticity variant, failed the hash check).
std::optional<BitVec> de(const DecodingInfo& d, const GarbledOutput& Y);

struct SizeRow {
  std::uint64_t gates = 0;
  std::uint64_t ciphertexts = 0;
  std::uint64_t aux_bits = 0;
};

struct GarbledSize {
  std::uint64_t ciphertext_count = 0;
  std::uint64_t aux_bits = 0;
  std::uint64_t bytes = 0;  // ciphertexts * k/8 + ceil(aux_bits/8)
  SizeRow four_row, three_row, two_point, half_and, free_gates, buffers, trivial;
};

GarbledSize garbled_size(const GarbledCircuit& F);

/// FleXOR wire-class planning: input wires and non-free gate outputs open
/// fresh offset classes; an XOR/XNOR output inherits input a's class and
/// costs one buffer ciphertext iff input b's class differs.
struct FlexorPlan {
  std::vector<std::uint32_t> wire_class;  // 1-based, size wires+1
  std::vector<std::uint8_t> xor_cost;     // per gate; 0 for non-even gates
  std::uint64_t total_xor_ciphertexts = 0;
};

FlexorPlan flexor_offset_classes(const Circuit& c);

// GCF1 container: header, topology triples, length-prefixed gate blobs.
// Stable across runs for a fixed seed. Decoding info is a separate file.
Bytes serialize_gcf(const GarbledCircuit& F);
GarbledCircuit parse_gcf(std::span<const std::uint8_t> bytes);
Bytes serialize_decoding(const DecodingInfo& d);
DecodingInfo parse_decoding(std::span<const std::uint8_t> bytes);

Bytes blob_to_bytes(const GateBlob& blob, std::size_t k_bytes);
GateBlob blob_from_bytes(std::span<const std::uint8_t> bytes, std::size_t k_bytes);

}  // namespace garblekit
