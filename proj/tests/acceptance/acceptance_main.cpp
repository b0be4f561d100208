// Acceptance suite: every criterion of the toolkit contract, evaluated at its
// stated tolerance, one PASS/FAIL line each. Exit code is the number of
// failing criteria.

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "phaselab/cloning.hpp"
#include "phaselab/histories.hpp"
#include "phaselab/phases.hpp"
#include "phaselab/random.hpp"
#include "phaselab/scenario.hpp"
#include "phaselab/transport.hpp"

using namespace phaselab;
using namespace phaselab::test;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int uniform_int(rng::Engine& eng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(eng);
}

std::string fmt(const char* format, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), format, a, b);
  return buf;
}

Trajectory random_static_trajectory(rng::Engine& eng, int dim_max, double h_norm,
                                    double t_lo, double t_hi, int steps) {
  int dim = uniform_int(eng, 2, dim_max);
  SquareMatrix h = rng::hermitian(eng, dim, h_norm * rng::uniform(eng, 0.3, 1.0));
  double t1 = rng::uniform(eng, t_lo, t_hi);
  return evolve(HamiltonianSpec::static_field(h), rng::haar_state(eng, dim),
                TimeGrid::uniform(0.0, t1, steps));
}

// --- criterion 1: phase decomposition identity --------------------------------
Outcome criterion_decomposition() {
  double max_residual = 0.0;
  for (int i = 0; i < 1000; ++i) {
    rng::Engine eng = rng::instance_engine(1001, i);
    int dim = uniform_int(eng, 2, 8);
    SquareMatrix h = rng::hermitian(eng, dim, rng::uniform(eng, 0.3, 1.0));
    double t1 = rng::uniform(eng, 0.2, 0.6);
    int steps = static_cast<int>(std::ceil(t1 / 1e-3));
    Trajectory traj = evolve(HamiltonianSpec::static_field(h),
                             rng::haar_state(eng, dim),
                             TimeGrid::uniform(0.0, t1, steps));
    max_residual = std::max(max_residual, decompose(traj).residual_mod_2pi());
  }
  return {max_residual < 1e-6,
          fmt("1000 instances, max (total-dyn-geo) mod 2pi = %.3e (< 1e-6)",
              max_residual)};
}

// --- criterion 2: gauge invariance --------------------------------------------
Outcome criterion_gauge() {
  double max_change = 0.0;
  for (int i = 0; i < 500; ++i) {
    rng::Engine eng = rng::instance_engine(1002, i);
    Trajectory traj = random_static_trajectory(eng, 6, 2.0, 0.5, 1.5, 200);
    double reference = geometric_phase_open(traj);
    std::vector<StateVector> rephased;
    rephased.reserve(traj.states().size());
    for (const auto& s : traj.states()) {
      rephased.push_back(
          s.with_phase(RayPhase::from_angle(rng::uniform(eng, -kPi, kPi))));
    }
    Trajectory gauged(traj.grid(), std::move(rephased));
    max_change =
        std::max(max_change, std::abs(geometric_phase_open(gauged) - reference));
  }
  return {max_change < 1e-10,
          fmt("500 random phase fields, max change = %.3e (< 1e-10)", max_change)};
}

// --- criterion 3: excess-phase identity ---------------------------------------
Outcome criterion_excess() {
  double max_diff = 0.0;
  for (int i = 0; i < 500; ++i) {
    rng::Engine eng = rng::instance_engine(1003, i);
    Trajectory traj = random_static_trajectory(eng, 6, 2.0, 0.5, 1.5, 200);
    int split = uniform_int(eng, 1, traj.segments() - 1);
    ExcessPhase e = excess_geometric_phase(traj, split);
    max_diff = std::max(max_diff, angle_residual(e.lhs - e.rhs));
  }
  StateVector triple[] = {ket0(), ket_plus(), ket_plus_i()};
  double frozen = bargmann_invariant(triple).argument;
  bool triple_ok = std::abs(frozen - kPi / 4) < 1e-12;
  return {max_diff < 1e-8 && triple_ok,
          fmt("500 splits, max |lhs-rhs| mod 2pi = %.3e (< 1e-8); "
              "Arg Delta(|0>,|+>,|+i>) - pi/4 = %.1e (< 1e-12)",
              max_diff, frozen - kPi / 4)};
}

// --- criterion 4: no-cloning of a ray -----------------------------------------
Outcome criterion_ray_cloning() {
  StateVector psi = ket_plus_i();
  int wrong_grid = 0;
  for (int k = 1; k < 360; ++k) {
    CloningSpec spec;
    spec.inputs = {psi, psi.with_phase(RayPhase::from_angle(kTwoPi * k / 360))};
    if (clonability_check(spec).verdict != Verdict::Infeasible) ++wrong_grid;
  }
  CloningSpec basis;
  basis.inputs = {ket0(), ket1()};
  bool basis_ok = clonability_check(basis).verdict == Verdict::Feasible;

  int disagreements = 0;
  for (int i = 0; i < 200; ++i) {
    rng::Engine eng = rng::instance_engine(1004, i);
    int dim = uniform_int(eng, 2, 4);
    CloningSpec spec;
    spec.phase_freedom = (i % 2 == 0);
    switch (i % 5) {
      case 0: {
        StateVector s = rng::haar_state(eng, dim);
        spec.inputs = {s, s.with_phase(RayPhase::from_angle(
                              rng::uniform(eng, 0.05, kTwoPi - 0.05)))};
        break;
      }
      case 1:
        spec.inputs = rng::orthonormal_set(eng, dim, std::min(3, dim));
        break;
      case 2: {
        StateVector s = rng::haar_state(eng, dim);
        spec.inputs = {s,
                       s.with_phase(RayPhase::from_angle(
                           rng::uniform(eng, 0.05, kTwoPi - 0.05))),
                       s.with_phase(RayPhase::from_angle(
                           rng::uniform(eng, 0.05, kTwoPi - 0.05)))};
        break;
      }
      case 3:
        for (int m = 0; m < uniform_int(eng, 2, 3); ++m) {
          spec.inputs.push_back(rng::haar_state(eng, dim));
        }
        break;
      default: {
        auto ortho = rng::orthonormal_set(eng, dim, 2);
        spec.inputs = {ortho[0], ortho[1], rng::haar_state(eng, dim)};
        break;
      }
    }
    if (clonability_check(spec).verdict !=
        brute_force_clonability(spec.inputs, spec.phase_freedom)) {
      ++disagreements;
    }
  }
  return {wrong_grid == 0 && basis_ok && disagreements == 0,
          fmt("359/359 ray phases infeasible, |0>,|1> feasible, "
              "oracle disagreements = %.0f/200 (= 0)",
              static_cast<double>(disagreements))};
}

// --- criterion 5: history no-copying and the CP escape -------------------------
Outcome criterion_history_cloning() {
  int wrong = 0;
  int audited = 0;
  for (int i = 0; i < 60; ++i) {
    rng::Engine eng = rng::instance_engine(1005, i);
    Trajectory traj = [&]() {
      switch (i % 3) {
        case 0: {  // eigenstate: total phase -E*T
          double omega = rng::uniform(eng, 0.5, 3.0);
          double t1 = rng::uniform(eng, 1.0, 5.0);
          return evolve(precession(omega), StateVector::basis(2, 0),
                        TimeGrid::uniform(0, t1, 2000));
        }
        case 1: {  // latitude precession over one period: total phase pi
          double theta = rng::uniform(eng, 0.2, kPi - 0.2);
          return evolve(precession(1.0), bloch_state(theta, 0.0),
                        TimeGrid::uniform(0, kTwoPi, 6283));
        }
        default: {  // transported equator: purely geometric phase pi
          return parallel_transport(evolve(precession(1.0), ket_plus(),
                                           TimeGrid::uniform(0, kTwoPi, 6283)));
        }
      }
    }();
    auto phi = is_cyclic(traj, 1e-6);
    if (!phi) continue;
    ++audited;
    bool expect_infeasible = angle_residual(*phi) > 1e-6;
    Verdict v = history_cloning_check(traj, 1e-6, 1e-8).verdict;
    if (expect_infeasible && v != Verdict::Infeasible) ++wrong;
    if (!expect_infeasible && v != Verdict::Feasible) ++wrong;
  }
  // The 2*pi wrap is copyable.
  Trajectory wrap = evolve(precession(2.0), StateVector::basis(2, 0),
                           TimeGrid::uniform(0, kTwoPi, 4000));
  if (history_cloning_check(wrap).verdict != Verdict::Feasible) ++wrong;

  double worst_escape = 0.0;
  int cp_wrong = 0;
  for (int k = 0; k < 50; ++k) {
    double phi = -kPi + kTwoPi * (k + 0.5) / 50;
    CpHistoryVerdict escape = cp_history_check(phi, unit_phase(-phi));
    worst_escape = std::max(worst_escape, escape.residual);
    if (escape.verdict != Verdict::Feasible) ++cp_wrong;
    if (cp_history_check(phi, 0.9 * unit_phase(-phi)).verdict !=
        Verdict::Infeasible) {
      ++cp_wrong;
    }
    if (std::abs(phi) > 1e-6 &&
        cp_history_check(phi, Complex(1.0, 0.0)).verdict != Verdict::Infeasible) {
      ++cp_wrong;
    }
  }
  return {wrong == 0 && cp_wrong == 0 && worst_escape < 1e-10 && audited >= 50,
          fmt("cyclic audits wrong = %.0f, cp escape max residual = %.1e "
              "(< 1e-10), deficient overlaps rejected",
              static_cast<double>(wrong + cp_wrong), worst_escape)};
}

// --- criterion 6: multi-time cloning vs the Bargmann argument -----------------
Outcome criterion_multi_time() {
  int wrong_verdicts = 0;
  double max_mismatch = 0.0;
  for (int i = 0; i < 500; ++i) {
    rng::Engine eng = rng::instance_engine(1006, i);
    Trajectory traj = [&]() {
      if (i % 10 == 9) {  // collinear: feasible side
        std::vector<StateVector> states;
        StateVector base = rng::haar_state(eng, 3);
        for (int k = 0; k <= 150; ++k) {
          states.push_back(
              base.with_phase(RayPhase::from_angle(0.01 * ((k * k) % 300))));
        }
        return Trajectory(TimeGrid::uniform(0, 1, 150), std::move(states));
      }
      return random_static_trajectory(eng, 6, 2.0, 0.5, 1.5, 150);
    }();
    int a = uniform_int(eng, 0, 50);
    int b = uniform_int(eng, a + 1, 100);
    int c = uniform_int(eng, b + 1, 150);
    Complex delta = inner(traj.state(a), traj.state(b)) *
                    inner(traj.state(b), traj.state(c)) *
                    inner(traj.state(c), traj.state(a));
    if (std::abs(delta) < 1e-6) continue;
    double residual = angle_residual(principal_arg(delta));
    CloningFeasibilityReport r = multi_time_cloning_check(traj, {a, b, c});
    bool expect_infeasible = residual > 1e-8;
    if ((r.verdict == Verdict::Infeasible) != expect_infeasible) ++wrong_verdicts;
    ExcessPhase e = excess_geometric_phase(traj, b);
    // The triple (0, b, last) of the excess identity is checked against the
    // same module quantities on identical indices.
    CloningFeasibilityReport full =
        multi_time_cloning_check(traj, {0, b, traj.segments()});
    double full_residual = full.violated_constraints.empty()
                               ? 0.0
                               : full.violated_constraints[0].residual;
    max_mismatch =
        std::max(max_mismatch, std::abs(full_residual - angle_residual(e.rhs)));
  }
  return {wrong_verdicts == 0 && max_mismatch < 1e-10,
          fmt("500 triples, wrong verdicts = %.0f, max |residual - ArgDelta| = "
              "%.1e (< 1e-10)",
              static_cast<double>(wrong_verdicts), max_mismatch)};
}

// --- criterion 7: parallel transport ------------------------------------------
Outcome criterion_transport() {
  double max_defect = 0.0;
  double max_phase_gap = 0.0;
  for (int i = 0; i < 20; ++i) {
    rng::Engine eng = rng::instance_engine(1007, i);
    int dim = uniform_int(eng, 2, 6);
    SquareMatrix h = rng::hermitian(eng, dim, rng::uniform(eng, 0.5, 2.0));
    HamiltonianSpec spec = HamiltonianSpec::static_field(h);
    StateVector psi0 = rng::haar_state(eng, dim);
    TimeGrid grid = TimeGrid::uniform(0, rng::uniform(eng, 0.5, 2.0), 1000);
    Trajectory transported = evolve_parallel(spec, psi0, grid);
    max_defect =
        std::max(max_defect, transport_defect(transported).max_defect);
  }
  // Cyclic case: precession at random latitudes, one period.
  for (int i = 0; i < 10; ++i) {
    rng::Engine eng = rng::instance_engine(1107, i);
    double theta = rng::uniform(eng, 0.3, kPi - 0.3);
    TimeGrid grid = TimeGrid::uniform(0, kTwoPi, 6283);
    Trajectory plain = evolve(precession(1.0), bloch_state(theta, 0.0), grid);
    Trajectory transported =
        evolve_parallel(precession(1.0), bloch_state(theta, 0.0), grid);
    max_defect = std::max(max_defect, transport_defect(transported).max_defect);
    auto phi = is_cyclic(transported, 1e-4);
    if (!phi) return {false, "transported cycle failed to close"};
    max_phase_gap = std::max(
        max_phase_gap, angle_residual(*phi - geometric_phase_cyclic(plain)));
  }
  Trajectory oracle = dense_trajectory(precession(1.0), bloch_state(kPi / 3, 0.0),
                                       0, kTwoPi);
  double pi3_error = std::abs(geometric_phase_cyclic(oracle) - (-kPi / 2));
  return {max_defect < 1e-12 && max_phase_gap < 1e-6 && pi3_error < 1e-4,
          fmt("max defect = %.1e (< 1e-12); theta=pi/3 vs -pi/2: %.1e (< 1e-4)",
              max_defect, pi3_error)};
}

// --- criterion 8: no universal transporter ------------------------------------
Outcome criterion_universal() {
  // Generic branch: equatorial bases of a qubit, dt = 1e-3.
  HamiltonianSpec h = precession(kTwoPi);
  TimeGrid grid = TimeGrid::uniform(0, 1.0, 1000);
  Eigen::VectorXcd minus(2);
  minus << 1.0, -1.0;
  std::vector<Trajectory> bases = {
      evolve_parallel(h, ket_plus(), grid),
      evolve_parallel(h, StateVector::normalized(minus), grid)};
  double amp = 1.0 / std::sqrt(2.0);
  std::vector<Complex> coeffs = {Complex(amp, 0.0), Complex(amp, 0.0)};
  double generic = universal_transport_residual(bases, coeffs);

  // Sufficiency branch: bases in orthogonal blocks, cross terms vanish.
  Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(4, 4);
  block.block<2, 2>(0, 0) = 0.5 * 1.7 * pauli_z();
  block.block<2, 2>(2, 2) = 0.5 * 0.9 * pauli_x();
  HamiltonianSpec hb = HamiltonianSpec::static_field(SquareMatrix(block));
  Eigen::VectorXcd v1 = Eigen::VectorXcd::Zero(4);
  v1(0) = v1(1) = 1.0 / std::sqrt(2.0);
  Eigen::VectorXcd v2 = Eigen::VectorXcd::Zero(4);
  v2(2) = 1.0 / std::sqrt(2.0);
  v2(3) = Complex(0.0, 1.0 / std::sqrt(2.0));
  std::vector<Trajectory> blocks = {
      evolve_parallel(hb, StateVector::normalized(v1), grid),
      evolve_parallel(hb, StateVector::normalized(v2), grid)};
  std::vector<Complex> cc = {Complex(0.6, 0.0), Complex(0.0, 0.8)};
  double sufficient = universal_transport_residual(blocks, cc);

  return {generic > 1e-3 && sufficient < 1e-10,
          fmt("generic residual = %.3e (> 1e-3); vanishing-cross residual = "
              "%.1e (< 1e-10)",
              generic, sufficient)};
}

// --- criterion 9: consistent histories ----------------------------------------
Outcome criterion_histories() {
  // (a) Tr C_P = conj(closed Bargmann) through the weight operator.
  double max_identity = 0.0;
  for (int i = 0; i < 100; ++i) {
    rng::Engine eng = rng::instance_engine(1009, i);
    int dim = uniform_int(eng, 2, 8);
    int n = uniform_int(eng, 2, 50);
    std::vector<double> times;
    std::vector<StateVector> states;
    for (int k = 0; k <= n; ++k) {
      times.push_back(k);
      states.push_back(rng::haar_state(eng, dim));
    }
    SquareMatrix c = weight_operator(
        HistoryProposition::fine_grained(times, states),
        HamiltonianSpec::zero(dim));
    max_identity = std::max(
        max_identity,
        std::abs(c.mat().trace() - std::conj(bargmann_invariant(states).value)));
  }

  // (b) Axioms on 200 random complete families.
  double max_axiom = 0.0;
  double min_positivity = 0.0;
  for (int i = 0; i < 200; ++i) {
    rng::Engine eng = rng::instance_engine(1109, i);
    int dim = uniform_int(eng, 2, 4);
    int n_times = uniform_int(eng, 1, 3);
    std::vector<double> times;
    std::vector<std::vector<SquareMatrix>> decompositions;
    for (int t = 0; t < n_times; ++t) {
      times.push_back(t + 1.0);
      SquareMatrix u = rng::unitary(eng, dim);
      int split = uniform_int(eng, 1, dim - 1);
      Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
      for (int col = 0; col < split; ++col) {
        a += u.mat().col(col) * u.mat().col(col).adjoint();
      }
      decompositions.push_back(
          {SquareMatrix(a),
           SquareMatrix(Eigen::MatrixXcd::Identity(dim, dim) - a)});
    }
    HistoryFamily family = HistoryFamily::complete_product(times, decompositions);
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    double total = 0.0;
    for (int s = 0; s < 3; ++s) {
      double w = rng::uniform(eng, 0.1, 1.0);
      StateVector v = rng::haar_state(eng, dim);
      rho += w * (v.vec() * v.vec().adjoint());
      total += w;
    }
    AxiomReport report =
        check_axioms(family, SquareMatrix(rho / total),
                     HamiltonianSpec::static_field(rng::hermitian(eng, dim, 1.5)));
    max_axiom = std::max({max_axiom, report.hermiticity_max,
                          report.additivity_max, report.normalization_residual,
                          report.positivity_max_imag});
    min_positivity = std::min(min_positivity, report.positivity_min_real);
  }

  // (c) First-order convergence of the history phase on the gapped chains.
  BlochCurveOracle curve;
  double reference = curve.geometric_phase();
  std::vector<double> log_n, log_dev;
  for (int n : {250, 500, 1000, 2000}) {
    double dev = angle_residual(
        history_geometric_phase(curve.chain_with_gap(n)) - reference);
    log_n.push_back(std::log(static_cast<double>(n)));
    log_dev.push_back(std::log(dev));
  }
  double mean_x = 0, mean_y = 0;
  for (std::size_t i = 0; i < log_n.size(); ++i) {
    mean_x += log_n[i];
    mean_y += log_dev[i];
  }
  mean_x /= log_n.size();
  mean_y /= log_n.size();
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < log_n.size(); ++i) {
    sxx += (log_n[i] - mean_x) * (log_n[i] - mean_x);
    sxy += (log_n[i] - mean_x) * (log_dev[i] - mean_y);
  }
  double order = -sxy / sxx;

  bool pass = max_identity < 1e-12 && max_axiom < 1e-12 &&
              min_positivity >= -1e-12 && std::abs(order - 1.0) <= 0.2;
  return {pass,
          fmt("trace identity max = %.1e (< 1e-12), axiom max = %.1e (< 1e-12), "
              "convergence order = ",
              max_identity, max_axiom) +
              fmt("%.3f (1.0 +- 0.2)", order)};
}

// --- criterion 10: determinism -------------------------------------------------
Outcome criterion_determinism() {
  namespace fs = std::filesystem;
  const char* config_text =
      R"({"scenario": "phase-decompose", "inputs": {"dim_max": 4}, "seed": 2026})";

  // Library route.
  ScenarioConfig config = ScenarioConfig::parse(config_text);
  RunReport a = sweep(config, 40);
  RunReport b = sweep(config, 40);
  bool library_ok = (a.json == b.json) && (a.csv == b.csv);

  // CLI route: the shipped binary, byte-compared output files.
  fs::path dir = fs::temp_directory_path() / "phase_lab_acceptance";
  fs::create_directories(dir);
  fs::path cfg = dir / "sweep.json";
  {
    std::ofstream out(cfg, std::ios::binary);
    out << config_text;
  }
  auto run_once = [&](const fs::path& out_path) {
    std::string cmd = std::string(PHASE_LAB_BIN) + " sweep --config " +
                      cfg.string() + " --count 40 --out " + out_path.string() +
                      " > /dev/null 2>&1";
    int raw = std::system(cmd.c_str());
    return raw >= 0 && WIFEXITED(raw) && WEXITSTATUS(raw) == 0;
  };
  fs::path out1 = dir / "report1.json";
  fs::path out2 = dir / "report2.json";
  bool cli_ok = run_once(out1) && run_once(out2);
  if (cli_ok) {
    std::ifstream f1(out1, std::ios::binary), f2(out2, std::ios::binary);
    std::ostringstream s1, s2;
    s1 << f1.rdbuf();
    s2 << f2.rdbuf();
    cli_ok = !s1.str().empty() && s1.str() == s2.str();
  }
  return {library_ok && cli_ok,
          std::string("library reports byte-identical: ") +
              (library_ok ? "yes" : "NO") +
              "; cli reports byte-identical: " + (cli_ok ? "yes" : "NO")};
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* title;
    std::function<Outcome()> check;
  };
  const std::vector<Entry> criteria = {
      {1, "phase decomposition identity", criterion_decomposition},
      {2, "gauge invariance of the open geometric phase", criterion_gauge},
      {3, "excess-phase identity", criterion_excess},
      {4, "no-cloning of a ray", criterion_ray_cloning},
      {5, "history no-copying and the CP escape", criterion_history_cloning},
      {6, "multi-time cloning vs Bargmann argument", criterion_multi_time},
      {7, "parallel transport", criterion_transport},
      {8, "no universal transporter", criterion_universal},
      {9, "consistent histories", criterion_histories},
      {10, "sweep determinism", criterion_determinism},
  };

  int failures = 0;
  for (const auto& entry : criteria) {
    Outcome outcome;
    try {
      outcome = entry.check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    if (!outcome.pass) ++failures;
    std::printf("[%s] criterion %2d: %s (%s)\n", outcome.pass ? "PASS" : "FAIL",
                entry.id, entry.title, outcome.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures;
}
