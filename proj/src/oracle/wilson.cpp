#include <xyqpt/oracle.hpp>

#include <cmath>
#include <string>

namespace xyqpt::oracle {

double wilson_loop_phase(std::span<const GroundState> loop)
{
    cplx w{1.0, 0.0};
    for (std::size_t i = 0; i < loop.size(); ++i) {
        const GroundState& a = loop[i];
        const GroundState& b = loop[(i + 1) % loop.size()];
        if (a.n_sites != b.n_sites || a.modes.size() != b.modes.size()) {
            throw Error(ErrorKind::GridMismatch, "loop states live on different momentum grids");
        }
        for (std::size_t m = 0; m < a.modes.size(); ++m) {
            const cplx o = mode_overlap(a.modes[m].amp, b.modes[m].amp);
            if (std::abs(o) < 1e-12) {
                throw Error(ErrorKind::ZeroOverlap, "mode k=" + std::to_string(a.modes[m].mode.k) + " between points " +
                                                        std::to_string(i) + " and " + std::to_string(i + 1));
            }
            w *= o / std::abs(o);
        }
    }
    return std::arg(w);
}

double wilson_loop_phase(std::span<const cvec> loop)
{
    cplx w{1.0, 0.0};
    for (std::size_t i = 0; i < loop.size(); ++i) {
        const cplx o = loop[i].dot(loop[(i + 1) % loop.size()]);
        if (std::abs(o) < 1e-12) {
            throw Error(ErrorKind::ZeroOverlap, "between points " + std::to_string(i) + " and " + std::to_string(i + 1));
        }
        w *= o / std::abs(o);
    }
    return std::arg(w);
}

double wilson_loop_berry_phase(std::span<const ModelParams> loop, int n_sites)
{
    std::vector<GroundState> states;
    states.reserve(loop.size());
    for (const auto& p : loop) states.push_back(build_ground_state(p, n_sites));
    return wilson_loop_phase(std::span<const GroundState>(states));
}

double wilson_loop_berry_phase_ed(std::span<const ModelParams> loop, int n_sites)
{
    std::vector<cvec> vectors;
    vectors.reserve(loop.size());
    for (const auto& p : loop) vectors.push_back(ed_ground(p, n_sites).ground_vector);
    return wilson_loop_phase(std::span<const cvec>(vectors));
}

} // namespace xyqpt::oracle
