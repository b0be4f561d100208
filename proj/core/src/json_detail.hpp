#pragma once

#include <initializer_list>
#include <string>

#include <json.hpp>

#include "phaselab/cloning.hpp"
#include "phaselab/errors.hpp"
#include "phaselab/histories.hpp"
#include "phaselab/phases.hpp"
#include "phaselab/transport.hpp"

// Internal JSON plumbing. Everything here is strict: unknown object keys and
// wrong value types are ConfigError, so malformed files fail loudly instead
// of being half-read.

namespace phaselab::detail {

using nlohmann::json;

void check_keys(const json& j, const char* context,
                std::initializer_list<const char*> allowed);
const json& require_key(const json& j, const char* context, const char* key);
double require_number(const json& j, const char* context);
int require_int(const json& j, const char* context);
bool require_bool(const json& j, const char* context);
std::string require_string(const json& j, const char* context);

json encode_complex(Complex z);
Complex decode_complex(const json& j, const char* context);

json encode_cvector(const Eigen::VectorXcd& v);
Eigen::VectorXcd decode_cvector(const json& j, const char* context);

json encode_cmatrix(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd decode_cmatrix(const json& j, const char* context);

json state_to_json(const StateVector& psi);
StateVector state_from_json(const json& j, const char* context);

json matrix_to_json(const SquareMatrix& m);
SquareMatrix matrix_from_json(const json& j, const char* context);

json hamiltonian_to_json(const HamiltonianSpec& h);
HamiltonianSpec hamiltonian_from_json(const json& j);

json grid_to_json(const TimeGrid& grid);
TimeGrid grid_from_json(const json& j);

json trajectory_to_json(const Trajectory& traj);
Trajectory trajectory_from_json(const json& j);

json cloning_spec_to_json(const CloningSpec& spec);
CloningSpec cloning_spec_from_json(const json& j);

json cloning_report_to_json(const CloningFeasibilityReport& report);

json transport_report_to_json(const TransportReport& report);

json decomposition_to_json(const PhaseDecomposition& d);

json bargmann_to_json(const BargmannInvariant& b);

json history_to_json(const HistoryProposition& p);
HistoryProposition history_from_json(const json& j);

}  // namespace phaselab::detail
