#pragma once

#include <string>

#include "locc/monotones.hpp"
#include "locc/prob_vector.hpp"
#include "locc/protocol.hpp"
#include "locc/simulator.hpp"
#include "locc/states.hpp"

namespace locc::io {

// JSON schemas (documented in the repository README):
//   ProbVector  -> [p0, p1, ...]
//   PureState   -> {"dim_a", "dim_b", "amplitudes": [[[re, im], ...], ...]}
//   Protocol    -> {"dim_a", "dim_b", "steps": [...]}, step types
//                  "local_unitary" | "measurement" | "message" |
//                  "conditional_unitary".
// Numbers round-trip exactly; parse failures raise ParseError and invariant
// failures raise the corresponding library error.

std::string to_json(const ProbVector& p);
ProbVector prob_vector_from_json(const std::string& text);

std::string to_json(const PureState& s);
PureState state_from_json(const std::string& text);

std::string to_json(const Protocol& p);
Protocol protocol_from_json(const std::string& text);

std::string to_json(const VerifyReport& r);
std::string to_json(const Transcript& t);
std::string to_json(const MonotoneReport& r);
std::string to_json(const ValidationReport& r);

std::string load_file(const std::string& path);
void save_file(const std::string& path, const std::string& text);

}  // namespace locc::io
