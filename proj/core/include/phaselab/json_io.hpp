#pragma once

#include <string>
#include <string_view>

#include "phaselab/cloning.hpp"
#include "phaselab/histories.hpp"
#include "phaselab/phases.hpp"
#include "phaselab/transport.hpp"

namespace phaselab {

// Shared JSON encoding, used by every file format and report in the toolkit:
// complex numbers as two-element arrays [re, im], vectors as arrays of
// complex, matrices as row-major arrays of arrays. Decoders are strict:
// unknown object keys are rejected with ConfigError.

std::string encode_state(const StateVector& psi);
StateVector decode_state(std::string_view text);

std::string encode_matrix(const SquareMatrix& m);
SquareMatrix decode_matrix(std::string_view text);

// {"dim": N, "kind": "static"|"sampled"|"zero",
//  "matrix": ..., "samples": [{"t": ..., "matrix": ...}, ...]}
std::string encode_hamiltonian(const HamiltonianSpec& h);
HamiltonianSpec decode_hamiltonian(std::string_view text);

// {"t0": ..., "t1": ..., "steps": n} (uniform) or {"times": [...]} (explicit)
std::string encode_grid(const TimeGrid& grid);
TimeGrid decode_grid(std::string_view text);

// {"times": [...], "states": [...], "generator": <hamiltonian>?}
std::string encode_trajectory(const Trajectory& traj);
Trajectory decode_trajectory(std::string_view text);

// {"states": [...], "allow_ancilla": b, "phase_freedom": b}
std::string encode_cloning_spec(const CloningSpec& spec);
CloningSpec decode_cloning_spec(std::string_view text);

std::string encode_cloning_report(const CloningFeasibilityReport& report);

std::string encode_transport_report(const TransportReport& report);

std::string encode_phase_decomposition(const PhaseDecomposition& d);

// {"value": [re, im], "arg": x, "order": m, "defined": bool}
std::string encode_bargmann(const BargmannInvariant& b);

// {"events": [{"t": ..., "projector": ...} | {"t": ..., "state": ...}, ...],
//  "label": "..."} -- a "state" event denotes the rank-1 projector onto it.
std::string encode_history(const HistoryProposition& p);
HistoryProposition decode_history(std::string_view text);

}  // namespace phaselab
