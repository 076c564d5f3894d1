#pragma once

#include <string>

#include "tfboost/boosting.hpp"
#include "tfboost/flm.hpp"

namespace tfboost {

// Versioned, self-describing model documents. The basis snapshot (knots,
// degree, quadrature grid, orthonormalization transform) travels with the
// model, so prediction needs no side files. Boosting steps are stored up to
// t_stop; predictions are bit-identical after a round trip.

std::string boost_model_to_string(const BoostModel& model);
BoostModel boost_model_from_string(const std::string& text);

void save_boost_model(const BoostModel& model, const std::string& path);
BoostModel load_boost_model(const std::string& path);

std::string flm_model_to_string(const FlmModel& model);
FlmModel flm_model_from_string(const std::string& text);

// Write-to-temp + atomic rename; no partial files on failure.
void atomic_write_file(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);

}  // namespace tfboost
