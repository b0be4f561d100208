#pragma once

#define PHASE_LAB_VERSION "0.1.0"

namespace phaselab {

inline const char* version() { return PHASE_LAB_VERSION; }

}  // namespace phaselab
