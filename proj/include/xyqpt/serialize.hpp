#pragma once
#include <xyqpt/ground_state.hpp>
#include <xyqpt/oracle.hpp>

#include <json.hpp>

namespace xyqpt {

/// {"n_sites", "k_t", "params", "modes": [{k, alpha, theta, energy, band,
/// paired, u: [re, im], v: [re, im]}], "occupation_mask"?}
nlohmann::json to_json(const GroundState& state);

/// {"n_sites", "energies", "ground_vector": [[re, im], ...]}
nlohmann::json to_json(const oracle::SpinSpectrum& spectrum);

} // namespace xyqpt
