#pragma once

#include "selectra/verification.hpp"

namespace selectra {

/// Small worked example for every engine, each followed by the matching
/// checker. Deterministic.
Report run_demo();

}  // namespace selectra
