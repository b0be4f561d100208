#include "phaselab/json_io.hpp"

#include <algorithm>

#include "json_detail.hpp"

namespace phaselab::detail {

void check_keys(const json& j, const char* context,
                std::initializer_list<const char*> allowed) {
  if (!j.is_object()) {
    throw ConfigError(std::string(context) + ": expected an object");
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = std::any_of(allowed.begin(), allowed.end(),
                             [&](const char* k) { return it.key() == k; });
    if (!known) {
      std::string known_list;
      for (const char* k : allowed) {
        if (!known_list.empty()) known_list += ", ";
        known_list += '"' + std::string(k) + '"';
      }
      throw ConfigError(std::string(context) + ": unknown key \"" + it.key() +
                        "\" (known keys: " + known_list + ")");
    }
  }
}

const json& require_key(const json& j, const char* context, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ConfigError(std::string(context) + ": missing field \"" + key + "\"");
  }
  return j.at(key);
}

double require_number(const json& j, const char* context) {
  if (!j.is_number()) {
    throw ConfigError(std::string(context) + ": expected a number");
  }
  return j.get<double>();
}

int require_int(const json& j, const char* context) {
  if (!j.is_number_integer()) {
    throw ConfigError(std::string(context) + ": expected an integer");
  }
  return j.get<int>();
}

bool require_bool(const json& j, const char* context) {
  if (!j.is_boolean()) {
    throw ConfigError(std::string(context) + ": expected a boolean");
  }
  return j.get<bool>();
}

std::string require_string(const json& j, const char* context) {
  if (!j.is_string()) {
    throw ConfigError(std::string(context) + ": expected a string");
  }
  return j.get<std::string>();
}

json encode_complex(Complex z) { return json::array({z.real(), z.imag()}); }

Complex decode_complex(const json& j, const char* context) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ConfigError(std::string(context) +
                      ": complex numbers are two-element arrays [re, im]");
  }
  return Complex(j[0].get<double>(), j[1].get<double>());
}

json encode_cvector(const Eigen::VectorXcd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(encode_complex(v(i)));
  return out;
}

Eigen::VectorXcd decode_cvector(const json& j, const char* context) {
  if (!j.is_array() || j.empty()) {
    throw ConfigError(std::string(context) + ": expected a nonempty array");
  }
  Eigen::VectorXcd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = decode_complex(j[i], context);
  }
  return v;
}

json encode_cmatrix(const Eigen::MatrixXcd& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(encode_complex(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

Eigen::MatrixXcd decode_cmatrix(const json& j, const char* context) {
  if (!j.is_array() || j.empty()) {
    throw ConfigError(std::string(context) +
                      ": matrices are row-major arrays of arrays");
  }
  std::size_t rows = j.size();
  Eigen::MatrixXcd m;
  for (std::size_t r = 0; r < rows; ++r) {
    const json& row = j[r];
    if (!row.is_array() || row.empty()) {
      throw ConfigError(std::string(context) +
                        ": matrices are row-major arrays of arrays");
    }
    if (r == 0) m.resize(rows, row.size());
    if (row.size() != static_cast<std::size_t>(m.cols())) {
      throw ConfigError(std::string(context) + ": ragged matrix rows");
    }
    for (std::size_t c = 0; c < row.size(); ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          decode_complex(row[c], context);
    }
  }
  return m;
}

json state_to_json(const StateVector& psi) { return encode_cvector(psi.vec()); }

StateVector state_from_json(const json& j, const char* context) {
  // File inputs are normalized on load so states can be written by hand.
  return StateVector::normalized(decode_cvector(j, context));
}

json matrix_to_json(const SquareMatrix& m) { return encode_cmatrix(m.mat()); }

SquareMatrix matrix_from_json(const json& j, const char* context) {
  Eigen::MatrixXcd m = decode_cmatrix(j, context);
  if (m.rows() != m.cols()) {
    throw ConfigError(std::string(context) + ": expected a square matrix, got " +
                      std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  return SquareMatrix(std::move(m));
}

json hamiltonian_to_json(const HamiltonianSpec& h) {
  json out;
  out["dim"] = h.dim();
  switch (h.kind()) {
    case HamiltonianSpec::Kind::Zero:
      out["kind"] = "zero";
      break;
    case HamiltonianSpec::Kind::Static:
      out["kind"] = "static";
      out["matrix"] = encode_cmatrix(h.static_matrix().mat());
      break;
    case HamiltonianSpec::Kind::Sampled: {
      out["kind"] = "sampled";
      json samples = json::array();
      for (const auto& [t, m] : h.samples()) {
        samples.push_back({{"t", t}, {"matrix", encode_cmatrix(m.mat())}});
      }
      out["samples"] = std::move(samples);
      break;
    }
  }
  return out;
}

HamiltonianSpec hamiltonian_from_json(const json& j) {
  const char* ctx = "hamiltonian";
  check_keys(j, ctx, {"dim", "kind", "matrix", "samples"});
  int dim = require_int(require_key(j, ctx, "dim"), "hamiltonian.dim");
  std::string kind = require_string(require_key(j, ctx, "kind"), "hamiltonian.kind");
  auto forbid = [&](const char* key) {
    if (j.contains(key)) {
      throw ConfigError("hamiltonian: field \"" + std::string(key) +
                        "\" does not apply to kind \"" + kind + "\"");
    }
  };
  if (kind == "zero") {
    forbid("matrix");
    forbid("samples");
    return HamiltonianSpec::zero(dim);
  }
  if (kind == "static") {
    forbid("samples");
    SquareMatrix m =
        matrix_from_json(require_key(j, ctx, "matrix"), "hamiltonian.matrix");
    if (m.dim() != dim) {
      throw ConfigError("hamiltonian: matrix dim does not match \"dim\"");
    }
    return HamiltonianSpec::static_field(std::move(m));
  }
  if (kind == "sampled") {
    forbid("matrix");
    const json& samples = require_key(j, ctx, "samples");
    if (!samples.is_array() || samples.size() < 2) {
      throw ConfigError("hamiltonian.samples: expected an array of at least two "
                        "{t, matrix} entries");
    }
    std::vector<std::pair<double, SquareMatrix>> out;
    out.reserve(samples.size());
    for (const json& s : samples) {
      check_keys(s, "hamiltonian.samples[]", {"t", "matrix"});
      double t = require_number(require_key(s, "hamiltonian.samples[]", "t"),
                                "hamiltonian.samples[].t");
      SquareMatrix m = matrix_from_json(
          require_key(s, "hamiltonian.samples[]", "matrix"),
          "hamiltonian.samples[].matrix");
      if (m.dim() != dim) {
        throw ConfigError("hamiltonian: sample matrix dim does not match \"dim\"");
      }
      out.emplace_back(t, std::move(m));
    }
    return HamiltonianSpec::sampled(std::move(out));
  }
  throw ConfigError("hamiltonian.kind: expected \"static\", \"sampled\" or "
                    "\"zero\", got \"" + kind + "\"");
}

json grid_to_json(const TimeGrid& grid) {
  json out;
  out["times"] = grid.times();
  return out;
}

TimeGrid grid_from_json(const json& j) {
  const char* ctx = "grid";
  if (j.is_object() && j.contains("times")) {
    check_keys(j, ctx, {"times"});
    const json& times = j.at("times");
    if (!times.is_array()) throw ConfigError("grid.times: expected an array");
    std::vector<double> out;
    out.reserve(times.size());
    for (const json& t : times) out.push_back(require_number(t, "grid.times[]"));
    return TimeGrid(std::move(out));
  }
  check_keys(j, ctx, {"t0", "t1", "steps"});
  double t0 = require_number(require_key(j, ctx, "t0"), "grid.t0");
  double t1 = require_number(require_key(j, ctx, "t1"), "grid.t1");
  int steps = require_int(require_key(j, ctx, "steps"), "grid.steps");
  return TimeGrid::uniform(t0, t1, steps);
}

json trajectory_to_json(const Trajectory& traj) {
  json out;
  out["times"] = traj.grid().times();
  json states = json::array();
  for (const auto& s : traj.states()) states.push_back(state_to_json(s));
  out["states"] = std::move(states);
  if (traj.generator()) out["generator"] = hamiltonian_to_json(*traj.generator());
  return out;
}

Trajectory trajectory_from_json(const json& j) {
  const char* ctx = "trajectory";
  check_keys(j, ctx, {"times", "states", "generator"});
  const json& times_j = require_key(j, ctx, "times");
  const json& states_j = require_key(j, ctx, "states");
  if (!times_j.is_array() || !states_j.is_array()) {
    throw ConfigError("trajectory: \"times\" and \"states\" must be arrays");
  }
  std::vector<double> times;
  times.reserve(times_j.size());
  for (const json& t : times_j) times.push_back(require_number(t, "trajectory.times[]"));
  std::vector<StateVector> states;
  states.reserve(states_j.size());
  for (const json& s : states_j) {
    states.push_back(state_from_json(s, "trajectory.states[]"));
  }
  std::optional<HamiltonianSpec> generator;
  if (j.contains("generator")) {
    generator = hamiltonian_from_json(j.at("generator"));
  }
  return Trajectory(TimeGrid(std::move(times)), std::move(states),
                    std::move(generator));
}

json cloning_spec_to_json(const CloningSpec& spec) {
  json out;
  json states = json::array();
  for (const auto& s : spec.inputs) states.push_back(state_to_json(s));
  out["states"] = std::move(states);
  out["allow_ancilla"] = spec.allow_ancilla;
  out["phase_freedom"] = spec.phase_freedom;
  return out;
}

CloningSpec cloning_spec_from_json(const json& j) {
  const char* ctx = "cloning spec";
  check_keys(j, ctx, {"states", "allow_ancilla", "phase_freedom"});
  const json& states_j = require_key(j, ctx, "states");
  if (!states_j.is_array() || states_j.empty()) {
    throw ConfigError("cloning spec: \"states\" must be a nonempty array");
  }
  CloningSpec spec;
  for (const json& s : states_j) {
    spec.inputs.push_back(state_from_json(s, "cloning spec states[]"));
  }
  if (j.contains("allow_ancilla")) {
    spec.allow_ancilla = require_bool(j.at("allow_ancilla"), "allow_ancilla");
  }
  if (j.contains("phase_freedom")) {
    spec.phase_freedom = require_bool(j.at("phase_freedom"), "phase_freedom");
  }
  return spec;
}

json cloning_report_to_json(const CloningFeasibilityReport& report) {
  json out;
  out["verdict"] = to_string(report.verdict);
  json violations = json::array();
  for (const auto& v : report.violated_constraints) {
    json entry;
    entry["kind"] = to_string(v.kind);
    entry["residual"] = v.residual;
    if (v.indices.size() == 2) {
      entry["pair"] = v.indices;
    } else {
      entry["triple"] = v.indices;
    }
    violations.push_back(std::move(entry));
  }
  out["violated_constraints"] = std::move(violations);
  if (report.required_ancilla_overlaps) {
    out["required_ancilla_overlaps"] =
        encode_cmatrix(report.required_ancilla_overlaps->mat());
  } else {
    out["required_ancilla_overlaps"] = nullptr;
  }
  if (!report.note.empty()) out["note"] = report.note;
  return out;
}

json transport_report_to_json(const TransportReport& report) {
  json out;
  out["max_defect"] = report.max_defect;
  out["per_step"] = report.per_step;
  out["is_transported"] = report.is_transported;
  return out;
}

json decomposition_to_json(const PhaseDecomposition& d) {
  json out;
  out["total"] = d.total;
  out["dynamical"] = d.dynamical;
  out["geometric"] = d.geometric;
  out["segment"] = json::array({d.segment.first, d.segment.second});
  out["residual_mod_2pi"] = d.residual_mod_2pi();
  return out;
}

json bargmann_to_json(const BargmannInvariant& b) {
  json out;
  out["value"] = encode_complex(b.value);
  out["arg"] = b.argument;
  out["order"] = b.order;
  out["defined"] = b.defined;
  return out;
}

json history_to_json(const HistoryProposition& p) {
  json out;
  json events = json::array();
  for (const auto& e : p.events()) {
    events.push_back({{"t", e.time}, {"projector", encode_cmatrix(e.projector.mat())}});
  }
  out["events"] = std::move(events);
  if (!p.label().empty()) out["label"] = p.label();
  return out;
}

HistoryProposition history_from_json(const json& j) {
  const char* ctx = "history";
  check_keys(j, ctx, {"events", "label"});
  const json& events_j = require_key(j, ctx, "events");
  if (!events_j.is_array() || events_j.empty()) {
    throw ConfigError("history: \"events\" must be a nonempty array");
  }
  std::vector<HistoryEvent> events;
  events.reserve(events_j.size());
  for (const json& e : events_j) {
    check_keys(e, "history.events[]", {"t", "projector", "state"});
    double t = require_number(require_key(e, "history.events[]", "t"),
                              "history.events[].t");
    if (e.contains("projector") == e.contains("state")) {
      throw ConfigError(
          "history.events[]: exactly one of \"projector\" or \"state\" is "
          "required");
    }
    if (e.contains("projector")) {
      events.push_back(
          {t, matrix_from_json(e.at("projector"), "history.events[].projector")});
    } else {
      // A fine-grained event: the rank-1 projector onto the given state.
      events.push_back(
          {t, projector(state_from_json(e.at("state"), "history.events[].state"))});
    }
  }
  std::string label;
  if (j.contains("label")) label = require_string(j.at("label"), "history.label");
  return HistoryProposition(std::move(events), std::move(label));
}

}  // namespace phaselab::detail

namespace phaselab {

using detail::json;

namespace {

json parse_strict(std::string_view text, const char* context) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    throw ConfigError(std::string(context) + ": malformed JSON");
  }
  return j;
}

}  // namespace

std::string encode_state(const StateVector& psi) {
  return detail::state_to_json(psi).dump();
}

StateVector decode_state(std::string_view text) {
  return detail::state_from_json(parse_strict(text, "state"), "state");
}

std::string encode_matrix(const SquareMatrix& m) {
  return detail::matrix_to_json(m).dump();
}

SquareMatrix decode_matrix(std::string_view text) {
  return detail::matrix_from_json(parse_strict(text, "matrix"), "matrix");
}

std::string encode_hamiltonian(const HamiltonianSpec& h) {
  return detail::hamiltonian_to_json(h).dump();
}

HamiltonianSpec decode_hamiltonian(std::string_view text) {
  return detail::hamiltonian_from_json(parse_strict(text, "hamiltonian"));
}

std::string encode_grid(const TimeGrid& grid) {
  return detail::grid_to_json(grid).dump();
}

TimeGrid decode_grid(std::string_view text) {
  return detail::grid_from_json(parse_strict(text, "grid"));
}

std::string encode_trajectory(const Trajectory& traj) {
  return detail::trajectory_to_json(traj).dump();
}

Trajectory decode_trajectory(std::string_view text) {
  return detail::trajectory_from_json(parse_strict(text, "trajectory"));
}

std::string encode_cloning_spec(const CloningSpec& spec) {
  return detail::cloning_spec_to_json(spec).dump();
}

CloningSpec decode_cloning_spec(std::string_view text) {
  return detail::cloning_spec_from_json(parse_strict(text, "cloning spec"));
}

std::string encode_cloning_report(const CloningFeasibilityReport& report) {
  return detail::cloning_report_to_json(report).dump(2) + "\n";
}

std::string encode_transport_report(const TransportReport& report) {
  return detail::transport_report_to_json(report).dump();
}

std::string encode_phase_decomposition(const PhaseDecomposition& d) {
  return detail::decomposition_to_json(d).dump();
}

std::string encode_bargmann(const BargmannInvariant& b) {
  return detail::bargmann_to_json(b).dump();
}

std::string encode_history(const HistoryProposition& p) {
  return detail::history_to_json(p).dump();
}

HistoryProposition decode_history(std::string_view text) {
  return detail::history_from_json(parse_strict(text, "history"));
}

}  // namespace phaselab
