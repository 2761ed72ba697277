// Command-line front end: decide LOCC transformability, synthesize and run
// protocols, and reproduce the monotone / rate / sampling experiments.
//
// Exit codes: 0 success, 1 negative decision (e.g. not transformable),
// 2 input or usage error, 3 numerical failure.

#include <CLI11.hpp>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "locc/asymptotics.hpp"
#include "locc/errors.hpp"
#include "locc/json_io.hpp"
#include "locc/monotones.hpp"
#include "locc/prob_vector.hpp"
#include "locc/protocol.hpp"
#include "locc/sampling.hpp"
#include "locc/simulator.hpp"
#include "locc/states.hpp"

namespace {

constexpr int kExitSuccess = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

locc::PureState load_state(const std::string& path) {
  return locc::io::state_from_json(locc::io::load_file(path));
}

locc::Protocol load_protocol(const std::string& path) {
  return locc::io::protocol_from_json(locc::io::load_file(path));
}

const char* comparison_name(locc::Comparison c) {
  switch (c) {
    case locc::Comparison::LeftPrecedes:
      return "source precedes target";
    case locc::Comparison::RightPrecedes:
      return "target precedes source";
    case locc::Comparison::Equivalent:
      return "equivalent";
    default:
      return "incomparable";
  }
}

int cmd_check(const std::string& source, const std::string& target,
              bool as_json) {
  const locc::PureState psi = load_state(source);
  const locc::PureState phi = load_state(target);
  const bool forward = locc::can_transform(psi, phi);
  const bool backward = locc::can_transform(phi, psi);
  const auto cmp = locc::compare(locc::schmidt_spectrum(psi),
                                 locc::schmidt_spectrum(phi));
  if (as_json) {
    std::cout << "{\"forward\":" << (forward ? "true" : "false")
              << ",\"backward\":" << (backward ? "true" : "false")
              << ",\"relation\":\"" << comparison_name(cmp) << "\"}\n";
  } else {
    std::cout << "source -> target: " << (forward ? "yes" : "no") << "\n"
              << "target -> source: " << (backward ? "yes" : "no") << "\n"
              << "relation: " << comparison_name(cmp) << "\n";
  }
  return forward ? kExitSuccess : kExitNegative;
}

int cmd_synthesize(const std::string& source, const std::string& target,
                   const std::string& out) {
  const locc::PureState psi = load_state(source);
  const locc::PureState phi = load_state(target);
  try {
    const locc::Protocol proto = locc::synthesize(psi, phi);
    locc::io::save_file(out, locc::io::to_json(proto));
    std::cout << "protocol with " << locc::communication_cost(proto)
              << " bit(s) of communication written to " << out << "\n";
    return kExitSuccess;
  } catch (const locc::NotMajorized&) {
    std::cerr << "not transformable: source spectrum is not majorized by "
                 "target spectrum\n";
    return kExitNegative;
  }
}

int cmd_simulate(const std::string& protocol_path, const std::string& state_path,
                 std::uint64_t seed, bool enumerate, bool as_json) {
  const locc::Protocol proto = load_protocol(protocol_path);
  const locc::PureState psi = load_state(state_path);
  if (enumerate) {
    const auto branches = locc::enumerate_branches(proto, psi);
    if (as_json) {
      std::cout << "[";
      for (std::size_t i = 0; i < branches.size(); ++i) {
        if (i) std::cout << ",";
        std::cout << "{\"probability\":" << branches[i].probability
                  << ",\"outcomes\":[";
        for (std::size_t k = 0; k < branches[i].outcomes.size(); ++k) {
          if (k) std::cout << ",";
          std::cout << branches[i].outcomes[k];
        }
        std::cout << "],\"final_state\":"
                  << locc::io::to_json(branches[i].final_state) << "}";
      }
      std::cout << "]\n";
    } else {
      for (const auto& b : branches) {
        std::cout << "branch p=" << b.probability << " outcomes=";
        for (int o : b.outcomes) std::cout << o;
        std::cout << "\n";
      }
      std::cout << branches.size() << " branch(es)\n";
    }
  } else {
    const auto [final_state, transcript] = locc::run(proto, psi, seed);
    if (as_json) {
      std::cout << "{\"final_state\":" << locc::io::to_json(final_state)
                << ",\"transcript\":" << locc::io::to_json(transcript)
                << "}\n";
    } else {
      for (const auto& e : transcript.events) {
        std::cout << "step " << e.step_index << " " << e.step_kind << " ("
                  << locc::to_string(e.party) << ")";
        if (e.outcome) std::cout << " outcome=" << *e.outcome;
        std::cout << " p=" << e.branch_probability << "\n";
      }
    }
  }
  return kExitSuccess;
}

int cmd_verify(const std::string& protocol_path, const std::string& source,
               const std::string& target, bool as_json) {
  const locc::Protocol proto = load_protocol(protocol_path);
  const auto rep = locc::verify_transformation(proto, load_state(source),
                                               load_state(target));
  if (as_json) {
    std::cout << locc::io::to_json(rep) << "\n";
  } else {
    std::cout << "min fidelity:        " << rep.min_fidelity << "\n"
              << "total probability:   " << rep.total_probability << "\n"
              << "communication bits:  " << rep.communication_bits << "\n"
              << "verdict:             " << (rep.pass ? "pass" : "fail")
              << "\n";
  }
  return rep.pass ? kExitSuccess : kExitNegative;
}

int cmd_monotones(const std::string& source, const std::string& target,
                  const std::vector<double>& ks, bool as_json) {
  const auto rep =
      locc::monotone_report(load_state(source), load_state(target), ks);
  if (as_json) {
    std::cout << locc::io::to_json(rep) << "\n";
  } else {
    std::cout << "entropy source: " << rep.entropy_source << " bits\n"
              << "entropy target: " << rep.entropy_target << " bits\n";
    for (const auto& [k, v] : rep.power_sums) {
      std::cout << "power sum k=" << k << ": source " << v.first << ", target "
                << v.second << "\n";
    }
    std::cout << "consistent: " << (rep.consistent ? "yes" : "no") << "\n";
  }
  return kExitSuccess;
}

int cmd_rates(const std::string& spectrum_json, const std::vector<int>& ns,
              double delta, bool csv) {
  const locc::ProbVector p = locc::io::prob_vector_from_json(spectrum_json);
  if (csv) {
    std::cout << "n,delta,m_formation,m_distillation,epsilon,formation_rate,"
                 "distillation_rate\n";
  } else {
    std::cout << "n\tdelta\tm_form\tm_dist\tepsilon\tform m/n\tdist m/n\n";
  }
  const char sep = csv ? ',' : '\t';
  for (int n : ns) {
    const auto form = locc::formation_epr_count(p, n, delta);
    const auto dist = locc::distillation_epr_count(p, n, delta);
    std::cout << n << sep << delta << sep << form.m << sep << dist.m << sep
              << std::max(form.epsilon, dist.epsilon) << sep
              << static_cast<double>(form.m) / n << sep
              << static_cast<double>(dist.m) / n << "\n";
  }
  return kExitSuccess;
}

int cmd_sample(const std::vector<int>& dims, int n, std::uint64_t seed,
               bool crossings) {
  std::cout << "d,n_samples,fraction,std_error,seed\n";
  for (int d : dims) {
    const auto est = locc::incomparable_fraction(d, n, seed);
    std::cout << est.dimension << "," << est.n_samples << "," << est.fraction
              << "," << est.std_error << "," << est.seed << "\n";
  }
  if (crossings) {
    std::cout << "d,sign_changes,count\n";
    for (int d : dims) {
      const auto prof = locc::crossing_profile(d, n, seed);
      for (const auto& [changes, count] : prof.sign_change_counts) {
        std::cout << d << "," << changes << "," << count << "\n";
      }
    }
  }
  return kExitSuccess;
}

int cmd_decompose(const std::string& x_json, const std::string& y_json) {
  const locc::ProbVector x = locc::io::prob_vector_from_json(x_json);
  const locc::ProbVector y = locc::io::prob_vector_from_json(y_json);
  try {
    const auto chain = locc::decompose_t_transforms(x, y);
    for (const auto& t : chain) {
      std::cout << "T(i=" << t.i << ", j=" << t.j << ", t=" << t.t << ")\n";
    }
    std::cout << chain.size() << " transform(s)\n";
    return kExitSuccess;
  } catch (const locc::NotMajorized&) {
    std::cerr << "x is not majorized by y\n";
    return kExitNegative;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LOCC entanglement transformation toolkit"};
  app.require_subcommand(1);

  std::string source, target, out, protocol_path, state_path;
  std::string spectrum_json, x_json, y_json;
  std::vector<double> ks = {2.0, 3.0, 4.0};
  std::vector<int> ns, dims;
  std::uint64_t seed = 0;
  int n_samples = 1000;
  double delta = 0.1;
  bool as_json = false, enumerate = false, csv = false, crossings = false;

  auto* check = app.add_subcommand("check", "decide whether source -> target");
  check->add_option("--source", source)->required();
  check->add_option("--target", target)->required();
  check->add_flag("--json", as_json);

  auto* synth = app.add_subcommand("synthesize", "build an explicit protocol");
  synth->add_option("--source", source)->required();
  synth->add_option("--target", target)->required();
  synth->add_option("--out", out)->required();

  auto* sim = app.add_subcommand("simulate", "execute a protocol on a state");
  sim->add_option("--protocol", protocol_path)->required();
  sim->add_option("--state", state_path)->required();
  sim->add_option("--seed", seed);
  sim->add_flag("--enumerate", enumerate);
  sim->add_flag("--json", as_json);

  auto* verify = app.add_subcommand("verify", "check a protocol end to end");
  verify->add_option("--protocol", protocol_path)->required();
  verify->add_option("--source", source)->required();
  verify->add_option("--target", target)->required();
  verify->add_flag("--json", as_json);

  auto* mono = app.add_subcommand("monotones", "entropy and power-sum report");
  mono->add_option("--source", source)->required();
  mono->add_option("--target", target)->required();
  mono->add_option("--k", ks);
  mono->add_flag("--json", as_json);

  auto* rates = app.add_subcommand("rates", "EPR formation/distillation rates");
  rates->add_option("--spectrum", spectrum_json)->required();
  rates->add_option("--n", ns)->required();
  rates->add_option("--delta", delta)->required();
  rates->add_flag("--csv", csv);

  auto* sample =
      app.add_subcommand("sample", "incomparability fraction estimates");
  sample->add_option("--dim", dims)->required();
  sample->add_option("--n", n_samples)->required();
  sample->add_option("--seed", seed);
  sample->add_flag("--crossings", crossings);

  auto* dec = app.add_subcommand("decompose", "T-transform chain for x < y");
  dec->add_option("--x", x_json)->required();
  dec->add_option("--y", y_json)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (check->parsed()) return cmd_check(source, target, as_json);
    if (synth->parsed()) return cmd_synthesize(source, target, out);
    if (sim->parsed()) {
      return cmd_simulate(protocol_path, state_path, seed, enumerate, as_json);
    }
    if (verify->parsed()) {
      return cmd_verify(protocol_path, source, target, as_json);
    }
    if (mono->parsed()) return cmd_monotones(source, target, ks, as_json);
    if (rates->parsed()) return cmd_rates(spectrum_json, ns, delta, csv);
    if (sample->parsed()) return cmd_sample(dims, n_samples, seed, crossings);
    if (dec->parsed()) return cmd_decompose(x_json, y_json);
  } catch (const locc::NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const locc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
