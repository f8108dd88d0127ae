#include <xyqpt/serialize.hpp>

namespace xyqpt {

namespace {

nlohmann::json pair(cplx z) { return nlohmann::json::array({z.real(), z.imag()}); }

} // namespace

nlohmann::json to_json(const GroundState& state)
{
    nlohmann::json j;
    j["n_sites"] = state.n_sites;
    j["k_t"] = state.k_t;
    j["params"] = {{"phi", state.params.phi}, {"gamma", state.params.gamma}, {"lambda", state.params.lambda}};
    auto& modes = j["modes"] = nlohmann::json::array();
    for (const auto& m : state.modes) {
        modes.push_back({{"k", m.mode.k},
                         {"alpha", m.mode.alpha},
                         {"theta", m.mode.theta},
                         {"energy", m.mode.energy},
                         {"band", to_string(m.mode.band)},
                         {"paired", m.paired},
                         {"u", pair(m.amp.u)},
                         {"v", pair(m.amp.v)}});
    }
    if (state.occupation_mask) j["occupation_mask"] = *state.occupation_mask;
    return j;
}

nlohmann::json to_json(const oracle::SpinSpectrum& spectrum)
{
    nlohmann::json j;
    j["n_sites"] = spectrum.n_sites;
    j["energies"] = std::vector<double>(spectrum.energies.data(), spectrum.energies.data() + spectrum.energies.size());
    auto& v = j["ground_vector"] = nlohmann::json::array();
    for (Eigen::Index i = 0; i < spectrum.ground_vector.size(); ++i) v.push_back(pair(spectrum.ground_vector(i)));
    return j;
}

} // namespace xyqpt
