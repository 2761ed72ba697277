#include "locc/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "locc/errors.hpp"
#include "locc/rng.hpp"

namespace locc {

namespace {

constexpr double kPruneThreshold = 1e-14;

void check_inputs(const Protocol& p, const PureState& psi) {
  const ValidationReport rep = validate(p);
  if (!rep.valid) {
    throw InvalidProtocol("protocol fails validation");
  }
  if (psi.dim_a() != p.dim_a || psi.dim_b() != p.dim_b) {
    throw DimensionMismatch("state does not match protocol dimensions");
  }
}

Matrix apply_local(const Matrix& amp, const Matrix& op, Party party) {
  return party == Party::Alice ? Matrix(op * amp)
                               : Matrix(amp * op.transpose());
}

struct LiveBranch {
  Matrix amp;  // normalized
  double probability = 1.0;
  std::vector<int> outcomes;
  std::map<std::string, int> by_label;
};

const Matrix& conditional_for(const ConditionalUnitary& cu,
                              const LiveBranch& b) {
  const auto it_out = b.by_label.find(cu.outcome_label);
  if (it_out == b.by_label.end()) {
    throw InvalidProtocol("conditional references missing outcome '" +
                          cu.outcome_label + "'");
  }
  const auto it_u = cu.table.find(it_out->second);
  if (it_u == cu.table.end()) {
    throw InvalidProtocol("conditional table lacks outcome value");
  }
  return it_u->second;
}

}  // namespace

std::vector<Branch> enumerate_branches(const Protocol& p,
                                       const PureState& psi) {
  check_inputs(p, psi);

  std::vector<LiveBranch> live;
  live.push_back({psi.amplitudes(), 1.0, {}, {}});

  for (const Step& step : p.steps) {
    if (const auto* lu = std::get_if<LocalUnitary>(&step)) {
      for (LiveBranch& b : live) {
        b.amp = apply_local(b.amp, lu->matrix, lu->party);
      }
    } else if (const auto* ms = std::get_if<Measurement>(&step)) {
      std::vector<LiveBranch> next;
      for (const LiveBranch& b : live) {
        for (std::size_t m = 0; m < ms->operators.size(); ++m) {
          Matrix amp = apply_local(b.amp, ms->operators[m], ms->party);
          const double pm = amp.squaredNorm();
          const double prob = b.probability * pm;
          if (prob < kPruneThreshold) continue;
          LiveBranch nb;
          nb.amp = amp / std::sqrt(pm);
          nb.probability = prob;
          nb.outcomes = b.outcomes;
          nb.outcomes.push_back(static_cast<int>(m));
          nb.by_label = b.by_label;
          nb.by_label[ms->outcome_label] = static_cast<int>(m);
          next.push_back(std::move(nb));
        }
      }
      live = std::move(next);
    } else if (const auto* cu = std::get_if<ConditionalUnitary>(&step)) {
      for (LiveBranch& b : live) {
        b.amp = apply_local(b.amp, conditional_for(*cu, b), cu->party);
      }
    }
    // Classical messages carry no state change.
  }

  std::vector<Branch> out;
  out.reserve(live.size());
  for (LiveBranch& b : live) {
    out.push_back(Branch{std::move(b.outcomes), b.probability,
                         PureState(p.dim_a, p.dim_b, b.amp / b.amp.norm())});
  }
  return out;
}

std::pair<PureState, Transcript> run(const Protocol& p, const PureState& psi,
                                     std::uint64_t seed) {
  check_inputs(p, psi);

  CounterRng rng(seed);
  Matrix amp = psi.amplitudes();
  double path_prob = 1.0;
  std::map<std::string, int> by_label;
  Transcript transcript;

  for (std::size_t idx = 0; idx < p.steps.size(); ++idx) {
    const Step& step = p.steps[idx];
    if (const auto* lu = std::get_if<LocalUnitary>(&step)) {
      amp = apply_local(amp, lu->matrix, lu->party);
      transcript.events.push_back(
          {idx, "local_unitary", lu->party, std::nullopt, path_prob});
    } else if (const auto* ms = std::get_if<Measurement>(&step)) {
      // Inverse-CDF sampling over outcome probabilities in label order.
      std::vector<double> probs(ms->operators.size());
      for (std::size_t m = 0; m < ms->operators.size(); ++m) {
        probs[m] = apply_local(amp, ms->operators[m], ms->party).squaredNorm();
      }
      const double u = rng.uniform01();
      double cdf = 0.0;
      std::size_t chosen = ms->operators.size() - 1;
      for (std::size_t m = 0; m < probs.size(); ++m) {
        cdf += probs[m];
        if (u < cdf) {
          chosen = m;
          break;
        }
      }
      amp = apply_local(amp, ms->operators[chosen], ms->party);
      const double pm = amp.squaredNorm();
      if (pm < kPruneThreshold) {
        throw NumericalFailure("sampled a zero-probability outcome");
      }
      amp /= std::sqrt(pm);
      path_prob *= pm;
      by_label[ms->outcome_label] = static_cast<int>(chosen);
      transcript.events.push_back({idx, "measurement", ms->party,
                                   static_cast<int>(chosen), path_prob});
    } else if (const auto* msg = std::get_if<ClassicalMessage>(&step)) {
      transcript.events.push_back(
          {idx, "message", msg->from_party, by_label[msg->outcome_label],
           path_prob});
    } else if (const auto* cu = std::get_if<ConditionalUnitary>(&step)) {
      LiveBranch probe;
      probe.by_label = by_label;
      amp = apply_local(amp, conditional_for(*cu, probe), cu->party);
      transcript.events.push_back(
          {idx, "conditional_unitary", cu->party, std::nullopt, path_prob});
    }
  }
  return {PureState(p.dim_a, p.dim_b, amp / amp.norm()), transcript};
}

VerifyReport verify_transformation(const Protocol& p, const PureState& psi,
                                   const PureState& phi) {
  const std::vector<Branch> branches = enumerate_branches(p, psi);
  VerifyReport rep;
  rep.min_fidelity = 1.0;
  for (const Branch& b : branches) {
    rep.total_probability += b.probability;
    rep.min_fidelity = std::min(rep.min_fidelity, fidelity(b.final_state, phi));
  }
  if (branches.empty()) rep.min_fidelity = 0.0;
  rep.communication_bits = communication_cost(p);
  rep.pass = rep.min_fidelity >= 1.0 - 1e-9 &&
             std::abs(rep.total_probability - 1.0) <= 1e-10;
  return rep;
}

}  // namespace locc
