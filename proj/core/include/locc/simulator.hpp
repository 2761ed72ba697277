#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "locc/protocol.hpp"
#include "locc/states.hpp"

namespace locc {

// One complete outcome history of a protocol run.
struct Branch {
  std::vector<int> outcomes;
  double probability = 0.0;
  PureState final_state;
};

struct TranscriptEvent {
  std::size_t step_index = 0;
  std::string step_kind;
  Party party = Party::Alice;
  std::optional<int> outcome;
  double branch_probability = 1.0;  // probability of the path so far
};

struct Transcript {
  std::vector<TranscriptEvent> events;
};

struct VerifyReport {
  double min_fidelity = 0.0;
  double total_probability = 0.0;
  int communication_bits = 0;
  bool pass = false;
};

// All outcome histories with probability above 1e-14, with renormalized final
// states and Born-rule probabilities.
std::vector<Branch> enumerate_branches(const Protocol& p, const PureState& psi);

// Single sampled execution; deterministic for a fixed seed.
std::pair<PureState, Transcript> run(const Protocol& p, const PureState& psi,
                                     std::uint64_t seed);

// Exhaustive check that the protocol carries psi to phi on every branch.
VerifyReport verify_transformation(const Protocol& p, const PureState& psi,
                                   const PureState& phi);

}  // namespace locc
