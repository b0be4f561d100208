#include "phaselab/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <vector>

#include "json_detail.hpp"
#include "phaselab/random.hpp"
#include "phaselab/version.hpp"

namespace phaselab {

using detail::json;

namespace {

// ---------------------------------------------------------------------------
// Config plumbing

constexpr const char* kToleranceNames[] = {
    "norm_tol",      "orth_tol",     "decomposition_tol", "phase_tol",
    "transport_tol", "cyclic_tol",   "hermitian_tol",     "identity_tol",
};

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(hash));
  return std::string(buf);
}

json parse_config_json(std::string_view text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ConfigError("config: malformed JSON");
  return j;
}

// ---------------------------------------------------------------------------
// Report assembly

void flatten_csv(const json& j, const std::string& path, std::string& out) {
  auto emit = [&](const std::string& value) {
    out += path;
    out += ',';
    out += value;
    out += '\n';
  };
  switch (j.type()) {
    case json::value_t::object:
      for (auto it = j.begin(); it != j.end(); ++it) {
        flatten_csv(it.value(), path.empty() ? it.key() : path + "." + it.key(),
                    out);
      }
      break;
    case json::value_t::array:
      for (std::size_t i = 0; i < j.size(); ++i) {
        flatten_csv(j[i], path + "." + std::to_string(i), out);
      }
      break;
    case json::value_t::number_float: {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.17g", j.get<double>());
      emit(buf);
      break;
    }
    case json::value_t::number_integer:
    case json::value_t::number_unsigned:
      emit(j.dump());
      break;
    case json::value_t::boolean:
      emit(j.get<bool>() ? "true" : "false");
      break;
    case json::value_t::string: {
      std::string s = j.get<std::string>();
      if (s.find(',') != std::string::npos || s.find('"') != std::string::npos) {
        std::string quoted = "\"";
        for (char c : s) {
          if (c == '"') quoted += '"';
          quoted += c;
        }
        quoted += '"';
        emit(quoted);
      } else {
        emit(s);
      }
      break;
    }
    default:
      emit("null");
      break;
  }
}

RunReport make_report(const ScenarioConfig& config, const char* mode,
                      json results) {
  json report;
  report["scenario"] = to_string(config.scenario);
  report["mode"] = mode;
  report["results"] = std::move(results);
  report["provenance"] = {{"config_hash", config.hash()},
                          {"toolkit_version", version()},
                          {"seed", config.seed}};
  RunReport out;
  out.json = report.dump(2) + "\n";
  out.csv = "key,value\n";
  flatten_csv(report, "", out.csv);
  return out;
}

// ---------------------------------------------------------------------------
// Shared input decoding

struct EvolutionInputs {
  HamiltonianSpec h;
  StateVector psi0;
  TimeGrid grid;
};

EvolutionInputs decode_evolution_inputs(const json& in) {
  return EvolutionInputs{
      detail::hamiltonian_from_json(
          detail::require_key(in, "inputs", "hamiltonian")),
      detail::state_from_json(detail::require_key(in, "inputs", "initial_state"),
                              "inputs.initial_state"),
      detail::grid_from_json(detail::require_key(in, "inputs", "grid"))};
}

/// Either an explicit "trajectory" or a generated one from
/// hamiltonian/initial_state/grid.
Trajectory trajectory_from_inputs(const json& in) {
  if (in.contains("trajectory")) {
    return detail::trajectory_from_json(in.at("trajectory"));
  }
  auto ev = decode_evolution_inputs(in);
  return evolve(ev.h, ev.psi0, ev.grid);
}

// ---------------------------------------------------------------------------
// run() scenarios

json run_phase_decompose(const json& in, const Tolerances& tol) {
  detail::check_keys(in, "inputs",
                     {"hamiltonian", "initial_state", "grid", "dynamical_route"});
  auto ev = decode_evolution_inputs(in);
  DynamicalRoute route = DynamicalRoute::Auto;
  if (in.contains("dynamical_route")) {
    std::string name =
        detail::require_string(in.at("dynamical_route"), "dynamical_route");
    if (name == "auto") route = DynamicalRoute::Auto;
    else if (name == "generator") route = DynamicalRoute::Generator;
    else if (name == "overlap") route = DynamicalRoute::Overlap;
    else throw ConfigError("inputs.dynamical_route: expected auto|generator|overlap");
  }
  Trajectory traj = evolve(ev.h, ev.psi0, ev.grid);
  PhaseDecomposition d = decompose(traj, tol.orth_tol);
  d.dynamical = dynamical_phase(traj, route);
  json out = detail::decomposition_to_json(d);
  out["within_tolerance"] = d.residual_mod_2pi() < tol.decomposition_tol;
  if (is_cyclic(traj, tol.cyclic_tol)) {
    out["cloning"] = detail::cloning_report_to_json(
        history_cloning_check(traj, tol.cyclic_tol, tol.phase_tol));
  }
  return out;
}

json run_cyclic_audit(const json& in, const Tolerances& tol) {
  detail::check_keys(in, "inputs", {"hamiltonian", "initial_state", "grid"});
  auto ev = decode_evolution_inputs(in);
  Trajectory traj = evolve(ev.h, ev.psi0, ev.grid);
  json out;
  auto phi = is_cyclic(traj, tol.cyclic_tol);
  out["cyclic"] = phi.has_value();
  out["endpoint_overlap"] =
      std::abs(inner(traj.state(0), traj.state(traj.segments())));
  if (phi) {
    out["total_phase"] = *phi;
    out["decomposition"] = detail::decomposition_to_json(decompose(traj, tol.orth_tol));
    out["cloning"] = detail::cloning_report_to_json(
        history_cloning_check(traj, tol.cyclic_tol, tol.phase_tol));
  }
  return out;
}

json run_excess_phase(const json& in, const Tolerances& tol) {
  detail::check_keys(
      in, "inputs",
      {"trajectory", "hamiltonian", "initial_state", "grid", "split_index"});
  Trajectory traj = trajectory_from_inputs(in);
  int split = detail::require_int(
      detail::require_key(in, "inputs", "split_index"), "inputs.split_index");
  ExcessPhase e = excess_geometric_phase(traj, split, tol.orth_tol);
  json out;
  out["lhs"] = e.lhs;
  out["rhs"] = e.rhs;
  out["difference_mod_2pi"] = angle_residual(e.lhs - e.rhs);
  out["bargmann"] = detail::bargmann_to_json(e.invariant);
  out["within_tolerance"] = angle_residual(e.lhs - e.rhs) < tol.phase_tol;
  return out;
}

json run_transport(const json& in, const Tolerances& tol) {
  detail::check_keys(
      in, "inputs",
      {"trajectory", "hamiltonian", "initial_state", "grid", "superposition"});
  Trajectory traj = trajectory_from_inputs(in);
  TransportReport before = transport_defect(traj, tol.transport_tol);
  Trajectory transported = parallel_transport(traj, tol.orth_tol);
  TransportReport after = transport_defect(transported, tol.transport_tol);
  json out;
  out["defect_before"] = {{"max_defect", before.max_defect},
                          {"is_transported", before.is_transported}};
  out["defect_after"] = {{"max_defect", after.max_defect},
                         {"is_transported", after.is_transported}};
  out["residual_dynamical_after"] =
      std::abs(dynamical_phase(transported, DynamicalRoute::Overlap));
  if (auto phi = is_cyclic(traj, tol.cyclic_tol)) {
    double geo = geometric_phase_cyclic(traj, tol.cyclic_tol, tol.orth_tol);
    auto closing = is_cyclic(transported, tol.cyclic_tol);
    out["geometric_phase"] = geo;
    if (closing) {
      out["closing_phase_after"] = *closing;
      out["closing_matches_geometric_residual"] = angle_residual(*closing - geo);
    }
  }
  if (in.contains("superposition")) {
    if (!in.contains("hamiltonian")) {
      throw ConfigError(
          "inputs.superposition requires generated trajectories "
          "(hamiltonian/initial_state/grid)");
    }
    const json& sup = in.at("superposition");
    detail::check_keys(sup, "inputs.superposition",
                       {"initial_states", "coefficients"});
    const json& states_j =
        detail::require_key(sup, "inputs.superposition", "initial_states");
    const json& coeffs_j =
        detail::require_key(sup, "inputs.superposition", "coefficients");
    if (!states_j.is_array() || !coeffs_j.is_array() ||
        states_j.size() != coeffs_j.size() || states_j.empty()) {
      throw ConfigError(
          "inputs.superposition: initial_states and coefficients must be "
          "equal-length nonempty arrays");
    }
    HamiltonianSpec h = detail::hamiltonian_from_json(in.at("hamiltonian"));
    TimeGrid grid = detail::grid_from_json(in.at("grid"));
    std::vector<Trajectory> bases;
    std::vector<Complex> coeffs;
    for (std::size_t i = 0; i < states_j.size(); ++i) {
      bases.push_back(evolve_parallel(
          h, detail::state_from_json(states_j[i], "superposition state"), grid));
      coeffs.push_back(
          detail::decode_complex(coeffs_j[i], "superposition coefficient"));
    }
    out["universal_residual"] = universal_transport_residual(
        bases, coeffs, 1e-8, tol.transport_tol);
  }
  return out;
}

json run_cloning_audit(const json& in, const Tolerances& tol) {
  detail::check_keys(in, "inputs", {"spec"});
  CloningSpec spec =
      detail::cloning_spec_from_json(detail::require_key(in, "inputs", "spec"));
  return detail::cloning_report_to_json(clonability_check(spec, tol.phase_tol));
}

json run_histories(const json& in, const Tolerances& tol) {
  detail::check_keys(in, "inputs",
                     {"chain", "family", "rho0", "hamiltonian",
                      "consistency_tol"});
  if (in.contains("chain") == in.contains("family")) {
    throw ConfigError(
        "inputs: exactly one of \"chain\" or \"family\" is required");
  }
  std::optional<HamiltonianSpec> given_h;
  if (in.contains("hamiltonian")) {
    given_h = detail::hamiltonian_from_json(in.at("hamiltonian"));
  }

  if (in.contains("chain")) {
    const json& chain = in.at("chain");
    detail::check_keys(chain, "inputs.chain", {"times", "states"});
    const json& times_j = detail::require_key(chain, "inputs.chain", "times");
    const json& states_j = detail::require_key(chain, "inputs.chain", "states");
    if (!times_j.is_array() || !states_j.is_array() ||
        times_j.size() != states_j.size() || times_j.size() < 2) {
      throw ConfigError(
          "inputs.chain: times and states must be equal-length arrays of at "
          "least two entries");
    }
    std::vector<double> times;
    std::vector<StateVector> states;
    for (std::size_t i = 0; i < times_j.size(); ++i) {
      times.push_back(detail::require_number(times_j[i], "chain.times[]"));
      states.push_back(detail::state_from_json(states_j[i], "chain.states[]"));
    }
    HamiltonianSpec h =
        given_h ? *given_h : HamiltonianSpec::zero(states[0].dim());
    HistoryProposition p =
        HistoryProposition::fine_grained(times, states, "chain");
    SquareMatrix weight = weight_operator(p, h);
    Complex trace = weight.mat().trace();
    Complex scalar_trace = fine_grained_trace(states);
    BargmannInvariant closed = bargmann_invariant(states);
    SquareMatrix rho0 = in.contains("rho0")
                            ? detail::matrix_from_json(in.at("rho0"), "rho0")
                            : projector(states[0]);
    DecoherenceValue self = decoherence_functional(p, p, rho0, h);
    json out;
    out["trace"] = detail::encode_complex(trace);
    out["trace_abs"] = std::abs(trace);
    out["history_phase"] = history_geometric_phase(states);
    out["bargmann_conj_residual"] = std::abs(scalar_trace - std::conj(closed.value));
    if (h.kind() == HamiltonianSpec::Kind::Zero) {
      out["weight_vs_fine_grained_residual"] = std::abs(trace - scalar_trace);
    }
    out["self_weight"] = self.value.real();
    return out;
  }

  const json& family_j = in.at("family");
  detail::check_keys(family_j, "inputs.family", {"members", "rho0",
                                                 "hamiltonian", "complete"});
  const json& members_j =
      detail::require_key(family_j, "inputs.family", "members");
  if (!members_j.is_array() || members_j.empty()) {
    throw ConfigError("inputs.family.members: expected a nonempty array");
  }
  std::vector<HistoryProposition> members;
  for (const json& m : members_j) members.push_back(detail::history_from_json(m));
  bool complete = true;
  if (family_j.contains("complete")) {
    complete = detail::require_bool(family_j.at("complete"), "family.complete");
  }
  HistoryFamily family(std::move(members), complete, tol.hermitian_tol);
  SquareMatrix rho0 = detail::matrix_from_json(
      detail::require_key(family_j, "inputs.family", "rho0"), "family.rho0");
  HamiltonianSpec fam_h =
      family_j.contains("hamiltonian")
          ? detail::hamiltonian_from_json(family_j.at("hamiltonian"))
          : (given_h ? *given_h : HamiltonianSpec::zero(family.dim()));
  double consistency_tol = tol.phase_tol;
  if (in.contains("consistency_tol")) {
    consistency_tol =
        detail::require_number(in.at("consistency_tol"), "consistency_tol");
    if (consistency_tol <= 0) {
      throw ConfigError("inputs.consistency_tol must be positive");
    }
  }
  AxiomReport axioms = check_axioms(family, rho0, fam_h);
  json out;
  out["axioms"] = {{"hermiticity_max", axioms.hermiticity_max},
                   {"positivity_min_real", axioms.positivity_min_real},
                   {"positivity_max_imag", axioms.positivity_max_imag},
                   {"additivity_max", axioms.additivity_max},
                   {"normalization_residual", axioms.normalization_residual}};
  if (family.complete()) {
    ConsistencyReport c =
        consistency_check(family, rho0, fam_h, consistency_tol);
    double sum = std::accumulate(c.probabilities.begin(), c.probabilities.end(), 0.0);
    out["consistency"] = {{"consistent", c.consistent},
                          {"max_offdiag", c.max_offdiag},
                          {"probabilities", c.probabilities},
                          {"probability_sum", sum}};
  }
  return out;
}

/// Closed Bloch-sphere curve used by the history-phase convergence study:
/// theta(u) = theta_base + theta_amp sin u, phi(u) = u + phi_amp cos(k u).
/// gap_coef > 0 opens one gap of width 2*pi*gap_coef*n^(-1/3) in the sampling;
/// uniform chains of a smooth closed curve superconverge at O(1/n^2), while
/// the gapped family shows the generic first-order behaviour.
struct BlochCurve {
  double theta_base = kPi / 3;
  double theta_amp = 0.35;
  double phi_amp = 0.4;
  int phi_harmonic = 2;
  double gap_coef = 0.5;

  StateVector at(double u) const {
    return bloch_state(theta_base + theta_amp * std::sin(u),
                       u + phi_amp * std::cos(phi_harmonic * u));
  }

  std::vector<StateVector> chain(int n) const {
    double gap = gap_coef > 0 ? kTwoPi * gap_coef * std::pow(n, -1.0 / 3.0) : 0.0;
    std::vector<StateVector> states;
    states.reserve(n + 1);
    states.push_back(at(0.0));
    for (int k = 1; k < n; ++k) {
      states.push_back(at(gap + (kTwoPi - gap) * (k - 1) / (n - 1)));
    }
    states.push_back(states.front());
    return states;
  }
};

json run_convergence(const json& in, const Tolerances& tol) {
  std::string kind = detail::require_string(
      detail::require_key(in, "inputs", "kind"), "inputs.kind");
  if (kind == "evolution-phase") {
    detail::check_keys(in, "inputs",
                       {"kind", "hamiltonian", "initial_state", "t0", "t1",
                        "levels", "oracle_steps"});
    HamiltonianSpec h = detail::hamiltonian_from_json(
        detail::require_key(in, "inputs", "hamiltonian"));
    StateVector psi0 = detail::state_from_json(
        detail::require_key(in, "inputs", "initial_state"), "initial_state");
    double t0 = detail::require_number(detail::require_key(in, "inputs", "t0"), "t0");
    double t1 = detail::require_number(detail::require_key(in, "inputs", "t1"), "t1");
    const json& levels_j = detail::require_key(in, "inputs", "levels");
    if (!levels_j.is_array() || levels_j.size() < 2) {
      throw ConfigError("inputs.levels: expected an array of at least two step counts");
    }
    int oracle_steps = 100000;
    if (in.contains("oracle_steps")) {
      oracle_steps = detail::require_int(in.at("oracle_steps"), "oracle_steps");
    }
    auto phase_at = [&](int steps) {
      Trajectory traj = evolve(h, psi0, TimeGrid::uniform(t0, t1, steps));
      auto phi = is_cyclic(traj, tol.cyclic_tol);
      if (!phi) {
        throw NotCyclic("convergence: trajectory is not cyclic at " +
                        std::to_string(steps) + " steps");
      }
      return *phi;
    };
    double oracle = phase_at(oracle_steps);
    json levels = json::array(), phases = json::array(),
         deviations = json::array(), ratios = json::array();
    double prev_dev = 0.0;
    for (std::size_t i = 0; i < levels_j.size(); ++i) {
      int steps = detail::require_int(levels_j[i], "levels[]");
      double phi = phase_at(steps);
      double dev = angle_residual(phi - oracle);
      levels.push_back(steps);
      phases.push_back(phi);
      deviations.push_back(dev);
      if (i > 0 && dev > 0.0) ratios.push_back(prev_dev / dev);
      prev_dev = dev;
    }
    json out;
    out["kind"] = kind;
    out["oracle_phase"] = oracle;
    out["levels"] = std::move(levels);
    out["phases"] = std::move(phases);
    out["deviations"] = std::move(deviations);
    out["ratios"] = std::move(ratios);
    return out;
  }
  if (kind == "history-phase") {
    detail::check_keys(in, "inputs",
                       {"kind", "levels", "theta_base", "theta_amp", "phi_amp",
                        "phi_harmonic", "gap_coef"});
    BlochCurve curve;
    if (in.contains("theta_base"))
      curve.theta_base = detail::require_number(in.at("theta_base"), "theta_base");
    if (in.contains("theta_amp"))
      curve.theta_amp = detail::require_number(in.at("theta_amp"), "theta_amp");
    if (in.contains("phi_amp"))
      curve.phi_amp = detail::require_number(in.at("phi_amp"), "phi_amp");
    if (in.contains("phi_harmonic"))
      curve.phi_harmonic = detail::require_int(in.at("phi_harmonic"), "phi_harmonic");
    if (in.contains("gap_coef"))
      curve.gap_coef = detail::require_number(in.at("gap_coef"), "gap_coef");
    const json& levels_j = detail::require_key(in, "inputs", "levels");
    if (!levels_j.is_array() || levels_j.size() < 2) {
      throw ConfigError("inputs.levels: expected an array of at least two chain sizes");
    }
    std::vector<int> levels;
    for (const json& l : levels_j) levels.push_back(detail::require_int(l, "levels[]"));
    double reference = history_geometric_phase(curve.chain(8 * levels.back()));
    json values = json::array(), deviations = json::array(), orders = json::array();
    double prev_dev = 0.0;
    for (std::size_t i = 0; i < levels.size(); ++i) {
      double v = history_geometric_phase(curve.chain(levels[i]));
      double dev = angle_residual(v - reference);
      values.push_back(v);
      deviations.push_back(dev);
      if (i > 0 && dev > 0.0) {
        orders.push_back(std::log2(prev_dev / dev));
      }
      prev_dev = dev;
    }
    json out;
    out["kind"] = kind;
    out["reference"] = reference;
    out["levels"] = levels;
    out["values"] = std::move(values);
    out["deviations"] = std::move(deviations);
    out["orders"] = std::move(orders);
    return out;
  }
  throw ConfigError(
      "inputs.kind: expected \"evolution-phase\" or \"history-phase\"");
}

}  // namespace

// ---------------------------------------------------------------------------
// Tolerances / ScenarioConfig

Tolerances Tolerances::defaults() {
  Tolerances tol;
  if (const char* env = std::getenv("PHASE_LAB_DEFAULT_TOL")) {
    char* end = nullptr;
    double value = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(value > 0.0)) {
      throw ConfigError("PHASE_LAB_DEFAULT_TOL must be a positive number");
    }
    for (const char* name : kToleranceNames) tol.set(name, value);
  }
  return tol;
}

void Tolerances::set(const std::string& name, double value) {
  if (!(value > 0.0)) {
    throw ConfigError("tolerance \"" + name + "\" must be positive");
  }
  if (name == "norm_tol") norm_tol = value;
  else if (name == "orth_tol") orth_tol = value;
  else if (name == "decomposition_tol") decomposition_tol = value;
  else if (name == "phase_tol") phase_tol = value;
  else if (name == "transport_tol") transport_tol = value;
  else if (name == "cyclic_tol") cyclic_tol = value;
  else if (name == "hermitian_tol") hermitian_tol = value;
  else if (name == "identity_tol") identity_tol = value;
  else throw ConfigError("unknown tolerance \"" + name + "\"");
}

Scenario scenario_from_name(const std::string& name) {
  if (name == "phase-decompose") return Scenario::PhaseDecompose;
  if (name == "cyclic-audit") return Scenario::CyclicAudit;
  if (name == "excess-phase") return Scenario::ExcessPhase;
  if (name == "transport") return Scenario::Transport;
  if (name == "cloning-audit") return Scenario::CloningAudit;
  if (name == "histories") return Scenario::Histories;
  if (name == "convergence") return Scenario::Convergence;
  throw ConfigError("config.scenario: unknown scenario \"" + name + "\"");
}

const char* to_string(Scenario s) {
  switch (s) {
    case Scenario::PhaseDecompose: return "phase-decompose";
    case Scenario::CyclicAudit: return "cyclic-audit";
    case Scenario::ExcessPhase: return "excess-phase";
    case Scenario::Transport: return "transport";
    case Scenario::CloningAudit: return "cloning-audit";
    case Scenario::Histories: return "histories";
    case Scenario::Convergence: return "convergence";
  }
  return "?";
}

ScenarioConfig ScenarioConfig::parse(std::string_view json_text) {
  json j = parse_config_json(json_text);
  detail::check_keys(j, "config",
                     {"scenario", "inputs", "tolerances", "seed", "output_format"});
  ScenarioConfig config;
  config.scenario = scenario_from_name(detail::require_string(
      detail::require_key(j, "config", "scenario"), "config.scenario"));
  const json& inputs = detail::require_key(j, "config", "inputs");
  if (!inputs.is_object()) throw ConfigError("config.inputs: expected an object");
  config.inputs_json = inputs.dump();
  config.tolerances = Tolerances::defaults();
  if (j.contains("tolerances")) {
    const json& tols = j.at("tolerances");
    if (!tols.is_object()) {
      throw ConfigError("config.tolerances: expected an object");
    }
    for (auto it = tols.begin(); it != tols.end(); ++it) {
      config.tolerances.set(
          it.key(), detail::require_number(it.value(), "config.tolerances"));
    }
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned() && !j.at("seed").is_number_integer()) {
      throw ConfigError("config.seed: expected a non-negative integer");
    }
    auto seed = j.at("seed").get<std::int64_t>();
    if (seed < 0) throw ConfigError("config.seed: expected a non-negative integer");
    config.seed = static_cast<std::uint64_t>(seed);
  }
  if (j.contains("output_format")) {
    std::string fmt =
        detail::require_string(j.at("output_format"), "config.output_format");
    if (fmt == "json") config.output_format = OutputFormat::Json;
    else if (fmt == "csv") config.output_format = OutputFormat::Csv;
    else throw ConfigError("config.output_format: expected \"json\" or \"csv\"");
  }
  config.canonical_ = j.dump();
  return config;
}

std::string ScenarioConfig::canonical_json() const { return canonical_; }

std::string ScenarioConfig::hash() const { return fnv1a_hex(canonical_); }

// ---------------------------------------------------------------------------
// run / sweep

RunReport run(const ScenarioConfig& config) {
  json in = parse_config_json(config.inputs_json);
  json results;
  switch (config.scenario) {
    case Scenario::PhaseDecompose:
      results = run_phase_decompose(in, config.tolerances);
      break;
    case Scenario::CyclicAudit:
      results = run_cyclic_audit(in, config.tolerances);
      break;
    case Scenario::ExcessPhase:
      results = run_excess_phase(in, config.tolerances);
      break;
    case Scenario::Transport:
      results = run_transport(in, config.tolerances);
      break;
    case Scenario::CloningAudit:
      results = run_cloning_audit(in, config.tolerances);
      break;
    case Scenario::Histories:
      results = run_histories(in, config.tolerances);
      break;
    case Scenario::Convergence:
      results = run_convergence(in, config.tolerances);
      break;
  }
  return make_report(config, "run", std::move(results));
}

namespace {

// ---------------------------------------------------------------------------
// sweep instances

struct SweepOutcome {
  double residual = 0.0;
  bool violation = false;
};

int uniform_int(rng::Engine& eng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(eng);
}

struct SweepParams {
  int dim_max = 4;
  double h_norm = 1.0;
  double t_min = 0.2;
  double t_max = 0.6;
  double dt = 1e-3;
  int steps = 200;
  int chain_max = 50;
  int m_max = 3;
};

SweepParams decode_sweep_params(const json& in) {
  detail::check_keys(in, "inputs",
                     {"dim_max", "h_norm", "t_min", "t_max", "dt", "steps",
                      "chain_max", "m_max"});
  SweepParams p;
  if (in.contains("dim_max")) p.dim_max = detail::require_int(in.at("dim_max"), "dim_max");
  if (in.contains("h_norm")) p.h_norm = detail::require_number(in.at("h_norm"), "h_norm");
  if (in.contains("t_min")) p.t_min = detail::require_number(in.at("t_min"), "t_min");
  if (in.contains("t_max")) p.t_max = detail::require_number(in.at("t_max"), "t_max");
  if (in.contains("dt")) p.dt = detail::require_number(in.at("dt"), "dt");
  if (in.contains("steps")) p.steps = detail::require_int(in.at("steps"), "steps");
  if (in.contains("chain_max")) p.chain_max = detail::require_int(in.at("chain_max"), "chain_max");
  if (in.contains("m_max")) p.m_max = detail::require_int(in.at("m_max"), "m_max");
  if (p.dim_max < 2 || p.h_norm <= 0 || p.dt <= 0 || p.t_min <= 0 ||
      p.t_max < p.t_min || p.steps < 2 || p.chain_max < 2 || p.m_max < 1) {
    throw ConfigError("inputs: invalid sweep parameters");
  }
  return p;
}

Trajectory random_trajectory(rng::Engine& eng, const SweepParams& p,
                             bool fixed_steps) {
  int dim = uniform_int(eng, 2, p.dim_max);
  SquareMatrix h = rng::hermitian(eng, dim, p.h_norm * rng::uniform(eng, 0.3, 1.0));
  StateVector psi0 = rng::haar_state(eng, dim);
  double t1 = rng::uniform(eng, p.t_min, p.t_max);
  int steps = fixed_steps ? p.steps
                          : std::max(2, static_cast<int>(std::ceil(t1 / p.dt)));
  return evolve(HamiltonianSpec::static_field(std::move(h)), psi0,
                TimeGrid::uniform(0.0, t1, steps));
}

SweepOutcome sweep_phase_decompose(rng::Engine& eng, const SweepParams& p,
                                   const Tolerances& tol) {
  Trajectory traj = random_trajectory(eng, p, /*fixed_steps=*/false);
  double residual = decompose(traj, tol.orth_tol).residual_mod_2pi();
  return {residual, residual >= tol.decomposition_tol};
}

SweepOutcome sweep_excess_phase(rng::Engine& eng, const SweepParams& p,
                                const Tolerances& tol) {
  Trajectory traj = random_trajectory(eng, p, /*fixed_steps=*/true);
  int split = uniform_int(eng, 1, traj.segments() - 1);
  ExcessPhase e = excess_geometric_phase(traj, split, tol.orth_tol);
  double residual = angle_residual(e.lhs - e.rhs);
  return {residual, residual >= tol.phase_tol};
}

SweepOutcome sweep_transport(rng::Engine& eng, const SweepParams& p,
                             const Tolerances& tol) {
  Trajectory traj = random_trajectory(eng, p, /*fixed_steps=*/true);
  Trajectory transported = parallel_transport(traj, tol.orth_tol);
  double residual = transport_defect(transported, tol.transport_tol).max_defect;
  for (int k = 0; k <= traj.segments(); ++k) {
    auto phase = same_ray(traj.state(k), transported.state(k));
    if (!phase) return {1.0, true};  // projective curve not preserved
  }
  return {residual, residual >= tol.transport_tol};
}

SweepOutcome sweep_cloning_audit(rng::Engine& eng, const SweepParams& p,
                                 const Tolerances& tol) {
  int dim = uniform_int(eng, 2, p.dim_max);
  int category = uniform_int(eng, 0, 3);
  CloningSpec spec;
  Verdict expected;
  switch (category) {
    case 0: {  // two points of one ray, no freedom anywhere: must fail
      StateVector psi = rng::haar_state(eng, dim);
      double alpha = rng::uniform(eng, 0.05, kTwoPi - 0.05);
      spec.inputs = {psi, psi.with_phase(RayPhase::from_angle(alpha))};
      expected = Verdict::Infeasible;
      break;
    }
    case 1: {  // orthonormal set: always cloneable
      int m = uniform_int(eng, 1, std::min(p.m_max, dim));
      spec.inputs = rng::orthonormal_set(eng, dim, m);
      expected = Verdict::Feasible;
      break;
    }
    case 2: {  // same-ray family with free output phases: cloneable
      StateVector psi = rng::haar_state(eng, dim);
      spec.inputs = {psi,
                     psi.with_phase(RayPhase::from_angle(rng::uniform(eng, 0, kTwoPi))),
                     psi.with_phase(RayPhase::from_angle(rng::uniform(eng, 0, kTwoPi)))};
      spec.phase_freedom = true;
      expected = Verdict::Feasible;
      break;
    }
    default: {  // generic random states: pairwise moduli strictly interior
      int m = std::max(2, uniform_int(eng, 2, p.m_max));
      for (int i = 0; i < m; ++i) spec.inputs.push_back(rng::haar_state(eng, dim));
      expected = Verdict::Infeasible;
      break;
    }
  }
  CloningFeasibilityReport report = clonability_check(spec, tol.phase_tol);
  // Invariance probe: one common unit phase must never flip the verdict.
  CloningSpec rotated = spec;
  RayPhase common = RayPhase::from_angle(rng::uniform(eng, 0, kTwoPi));
  for (auto& s : rotated.inputs) s = s.with_phase(common);
  CloningFeasibilityReport rotated_report = clonability_check(rotated, tol.phase_tol);
  bool bad = report.verdict != expected ||
             rotated_report.verdict != report.verdict;
  return {bad ? 1.0 : 0.0, bad};
}

SweepOutcome sweep_histories(rng::Engine& eng, const SweepParams& p,
                             const Tolerances& tol) {
  int dim = uniform_int(eng, 2, p.dim_max);
  int n = uniform_int(eng, 2, p.chain_max);
  std::vector<double> times;
  std::vector<StateVector> states;
  for (int k = 0; k <= n; ++k) {
    times.push_back(static_cast<double>(k));
    states.push_back(rng::haar_state(eng, dim));
  }
  SquareMatrix weight =
      weight_operator(HistoryProposition::fine_grained(times, states),
                      HamiltonianSpec::zero(dim));
  Complex expected = std::conj(bargmann_invariant(states).value);
  double residual = std::abs(weight.mat().trace() - expected);
  return {residual, residual >= tol.identity_tol};
}

}  // namespace

RunReport sweep(const ScenarioConfig& config, int count) {
  if (count < 1) throw ConfigError("sweep: count must be >= 1");
  json in = parse_config_json(config.inputs_json);
  SweepParams params = decode_sweep_params(in);

  SweepOutcome (*instance)(rng::Engine&, const SweepParams&, const Tolerances&) =
      nullptr;
  switch (config.scenario) {
    case Scenario::PhaseDecompose: instance = sweep_phase_decompose; break;
    case Scenario::ExcessPhase: instance = sweep_excess_phase; break;
    case Scenario::Transport: instance = sweep_transport; break;
    case Scenario::CloningAudit: instance = sweep_cloning_audit; break;
    case Scenario::Histories: instance = sweep_histories; break;
    default:
      throw ConfigError("scenario \"" + std::string(to_string(config.scenario)) +
                        "\" does not support randomized sweeps");
  }

  double max_residual = 0.0;
  double sum_residual = 0.0;
  json violation_indices = json::array();
  int violations = 0;
  for (int i = 0; i < count; ++i) {
    rng::Engine eng = rng::instance_engine(config.seed, static_cast<std::uint64_t>(i));
    SweepOutcome outcome = instance(eng, params, config.tolerances);
    max_residual = std::max(max_residual, outcome.residual);
    sum_residual += outcome.residual;
    if (outcome.violation) {
      ++violations;
      if (violation_indices.size() < 20) violation_indices.push_back(i);
    }
  }
  json results;
  results["count"] = count;
  results["max_residual"] = max_residual;
  results["mean_residual"] = sum_residual / count;
  results["violations"] = violations;
  results["violation_indices"] = std::move(violation_indices);
  return make_report(config, "sweep", std::move(results));
}

}  // namespace phaselab
