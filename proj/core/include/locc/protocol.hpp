#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "locc/prob_vector.hpp"
#include "locc/states.hpp"

namespace locc {

enum class Party { Alice, Bob };

const char* to_string(Party p);

struct LocalUnitary {
  Party party;
  Matrix matrix;
};

// Generalized measurement {M_m} with sum_m M_m^dag M_m = I; the outcome index
// is published under outcome_label.
struct Measurement {
  Party party;
  std::vector<Matrix> operators;
  std::string outcome_label;
};

struct ClassicalMessage {
  Party from_party;
  Party to_party;
  std::string outcome_label;
};

// Unitary chosen by a previously produced outcome value.
struct ConditionalUnitary {
  Party party;
  std::string outcome_label;
  std::map<int, Matrix> table;
};

using Step =
    std::variant<LocalUnitary, Measurement, ClassicalMessage, ConditionalUnitary>;

struct Protocol {
  Eigen::Index dim_a = 0;
  Eigen::Index dim_b = 0;
  std::vector<Step> steps;
};

// Block parameters of one synthesized measurement round.
struct SynthesisStepParams {
  std::pair<std::size_t, std::size_t> block;
  double alpha_plus = 0.0;
  double alpha_minus = 0.0;
  double beta_plus = 0.0;
  double beta_minus = 0.0;
  double zeta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;
};

struct StepCheck {
  std::size_t index = 0;
  std::string kind;
  double completeness_residual = 0.0;
  double unitarity_residual = 0.0;
};

struct ValidationReport {
  bool valid = false;
  std::vector<StepCheck> checks;
  std::vector<std::string> violations;  // locality / ordering problems
};

// Ensemble (p_m, U_m) reconstructing rho_psi = sum_m p_m U_m^dag rho_phi U_m,
// which certifies the majorization relation between the spectra.
struct NecessityCertificate {
  ProbVector probabilities;
  std::vector<Matrix> unitaries;
  double reconstruction_residual = 0.0;
};

// True iff psi can be transformed to phi by LOCC, i.e. the source spectrum is
// majorized by the target spectrum (zero-padded to a common length).
bool can_transform(const PureState& psi, const PureState& phi);

// Build an explicit LOCC protocol realizing psi -> phi.  One binary
// measurement round per T-transform of the spectrum chain, at most d-1 in
// total.  Throws NotMajorized when the transformation is impossible.
Protocol synthesize(const PureState& psi, const PureState& phi);

// Same synthesis, also reporting the per-round block parameters.
Protocol synthesize(const PureState& psi, const PureState& phi,
                    std::vector<SynthesisStepParams>* params_out);

// Local unitaries (U_a, U_b) with (U_a (x) U_b) post == target up to global
// phase.  Requires equal Schmidt spectra.
std::pair<Matrix, Matrix> correction_unitaries(const PureState& post,
                                               const PureState& target);

ValidationReport validate(const Protocol& p);

NecessityCertificate necessity_certificate(const Protocol& p,
                                           const PureState& psi,
                                           const PureState& phi);

// Total classical bits exchanged: ceil(log2(#outcomes)) per measurement.
int communication_cost(const Protocol& p);

}  // namespace locc
