#include "locc/json_io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "locc/errors.hpp"

namespace locc::io {

using nlohmann::json;

namespace {

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("expected a matrix");
  const auto rows = j.size();
  const auto cols = j.at(0).size();
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const json& row = j.at(r);
    if (row.size() != cols) throw ParseError("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) {
      const json& e = row.at(c);
      if (!e.is_array() || e.size() != 2) {
        throw ParseError("complex entries must be [re, im]");
      }
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = {
          e.at(0).get<double>(), e.at(1).get<double>()};
    }
  }
  return m;
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

Party party_from_json(const json& j) {
  const auto s = j.get<std::string>();
  if (s == "alice") return Party::Alice;
  if (s == "bob") return Party::Bob;
  throw ParseError("unknown party '" + s + "'");
}

}  // namespace

std::string to_json(const ProbVector& p) { return json(p.entries()).dump(); }

ProbVector prob_vector_from_json(const std::string& text) {
  const json j = parse(text);
  if (!j.is_array()) throw ParseError("probability vector must be an array");
  try {
    return ProbVector(j.get<std::vector<double>>());
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid probability vector: ") + e.what());
  }
}

std::string to_json(const PureState& s) {
  json j;
  j["dim_a"] = s.dim_a();
  j["dim_b"] = s.dim_b();
  j["amplitudes"] = matrix_to_json(s.amplitudes());
  return j.dump();
}

PureState state_from_json(const std::string& text) {
  const json j = parse(text);
  try {
    return PureState(j.at("dim_a").get<Eigen::Index>(),
                     j.at("dim_b").get<Eigen::Index>(),
                     matrix_from_json(j.at("amplitudes")));
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid state: ") + e.what());
  }
}

std::string to_json(const Protocol& p) {
  json steps = json::array();
  for (const Step& step : p.steps) {
    json s;
    if (const auto* lu = std::get_if<LocalUnitary>(&step)) {
      s["type"] = "local_unitary";
      s["party"] = to_string(lu->party);
      s["matrix"] = matrix_to_json(lu->matrix);
    } else if (const auto* ms = std::get_if<Measurement>(&step)) {
      s["type"] = "measurement";
      s["party"] = to_string(ms->party);
      s["outcome_label"] = ms->outcome_label;
      json ops = json::array();
      for (const Matrix& m : ms->operators) ops.push_back(matrix_to_json(m));
      s["operators"] = std::move(ops);
    } else if (const auto* msg = std::get_if<ClassicalMessage>(&step)) {
      s["type"] = "message";
      s["from"] = to_string(msg->from_party);
      s["to"] = to_string(msg->to_party);
      s["outcome_label"] = msg->outcome_label;
    } else if (const auto* cu = std::get_if<ConditionalUnitary>(&step)) {
      s["type"] = "conditional_unitary";
      s["party"] = to_string(cu->party);
      s["outcome_label"] = cu->outcome_label;
      json table = json::object();
      for (const auto& [value, u] : cu->table) {
        table[std::to_string(value)] = matrix_to_json(u);
      }
      s["table"] = std::move(table);
    }
    steps.push_back(std::move(s));
  }
  json j;
  j["dim_a"] = p.dim_a;
  j["dim_b"] = p.dim_b;
  j["steps"] = std::move(steps);
  return j.dump();
}

Protocol protocol_from_json(const std::string& text) {
  const json j = parse(text);
  Protocol p;
  try {
    p.dim_a = j.at("dim_a").get<Eigen::Index>();
    p.dim_b = j.at("dim_b").get<Eigen::Index>();
    for (const json& s : j.at("steps")) {
      const auto type = s.at("type").get<std::string>();
      if (type == "local_unitary") {
        p.steps.push_back(LocalUnitary{party_from_json(s.at("party")),
                                       matrix_from_json(s.at("matrix"))});
      } else if (type == "measurement") {
        Measurement ms;
        ms.party = party_from_json(s.at("party"));
        ms.outcome_label = s.at("outcome_label").get<std::string>();
        for (const json& op : s.at("operators")) {
          ms.operators.push_back(matrix_from_json(op));
        }
        p.steps.push_back(std::move(ms));
      } else if (type == "message") {
        p.steps.push_back(ClassicalMessage{
            party_from_json(s.at("from")), party_from_json(s.at("to")),
            s.at("outcome_label").get<std::string>()});
      } else if (type == "conditional_unitary") {
        ConditionalUnitary cu;
        cu.party = party_from_json(s.at("party"));
        cu.outcome_label = s.at("outcome_label").get<std::string>();
        for (const auto& [key, value] : s.at("table").items()) {
          cu.table[std::stoi(key)] = matrix_from_json(value);
        }
        p.steps.push_back(std::move(cu));
      } else {
        throw ParseError("unknown step type '" + type + "'");
      }
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid protocol: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw ParseError("conditional table keys must be integers");
  }
  return p;
}

std::string to_json(const VerifyReport& r) {
  json j;
  j["min_fidelity"] = r.min_fidelity;
  j["total_probability"] = r.total_probability;
  j["communication_bits"] = r.communication_bits;
  j["pass"] = r.pass;
  return j.dump();
}

std::string to_json(const Transcript& t) {
  json events = json::array();
  for (const TranscriptEvent& e : t.events) {
    json ev;
    ev["step_index"] = e.step_index;
    ev["kind"] = e.step_kind;
    ev["party"] = to_string(e.party);
    if (e.outcome) {
      ev["outcome"] = *e.outcome;
    } else {
      ev["outcome"] = nullptr;
    }
    ev["branch_probability"] = e.branch_probability;
    events.push_back(std::move(ev));
  }
  json j;
  j["events"] = std::move(events);
  return j.dump();
}

std::string to_json(const MonotoneReport& r) {
  json sums = json::array();
  for (const auto& [k, v] : r.power_sums) {
    sums.push_back({{"k", k}, {"source", v.first}, {"target", v.second}});
  }
  json j;
  j["entropy_source"] = r.entropy_source;
  j["entropy_target"] = r.entropy_target;
  j["power_sums"] = std::move(sums);
  j["consistent"] = r.consistent;
  return j.dump();
}

std::string to_json(const ValidationReport& r) {
  json checks = json::array();
  for (const StepCheck& c : r.checks) {
    checks.push_back({{"index", c.index},
                      {"kind", c.kind},
                      {"completeness_residual", c.completeness_residual},
                      {"unitarity_residual", c.unitarity_residual}});
  }
  json j;
  j["valid"] = r.valid;
  j["checks"] = std::move(checks);
  j["violations"] = r.violations;
  return j.dump();
}

std::string load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void save_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open file for writing: " + path);
  out << text;
}

}  // namespace locc::io
