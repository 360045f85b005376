#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "garblekit/circuit.hpp"

namespace garblekit {

/// Mapping from M sources onto N >= M sinks where every sink has exactly one
/// source; sources may be replicated or discarded.
struct ExtendedPermutation {
  std::uint32_t M = 0;
  std::uint32_t N = 0;
  std::vector<std::uint32_t> source;  // per sink j (0-based): source index in [0,M)
};

/// The topology of a circuit as a mapping between outgoing wires
/// (circuit inputs plus non-output gate outputs, M = n+q-m of them) and
/// incoming wires (gate inputs, N = 2q of them, gate t reading slots 2t-1
/// and 2t). inv is total: every incoming wire has exactly one source.
struct CircuitMapping {
  std::uint32_t M = 0;
  std::uint32_t N = 0;
  std::vector<std::uint32_t> inv;                    // incoming (0-based) -> outgoing (0-based)
  std::vector<std::vector<std::uint32_t>> targets;   // outgoing -> incoming list

  ExtendedPermutation to_ep() const { return {M, N, inv}; }
};

CircuitMapping circuit_mapping(const Circuit& c);

/// Number of possible circuit mappings for |OW|=M, |IW|=N: the count of
/// onto functions IW -> OW, by inclusion-exclusion. Exact (arbitrary
/// precision), returned in decimal. Zero when N < M. The formula counts
/// onto functions, i.e. assumes every outgoing wire feeds at least one
/// incoming wire; circuits with dead wires have fewer reachable mappings.
std::string count_mappings(std::uint32_t M, std::uint32_t N);

}  // namespace garblekit
