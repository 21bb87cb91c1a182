#pragma once

// Umbrella header. json_io.hpp is separate because it needs nlohmann/json.
#include "factor_forge/arith.hpp"
#include "factor_forge/colouring.hpp"
#include "factor_forge/error.hpp"
#include "factor_forge/extremal.hpp"
#include "factor_forge/factorizer.hpp"
#include "factor_forge/graph.hpp"
#include "factor_forge/oracle.hpp"
#include "factor_forge/thresholds.hpp"
