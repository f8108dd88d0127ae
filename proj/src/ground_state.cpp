#include <xyqpt/ground_state.hpp>
#include <xyqpt/quadrature.hpp>

#include <cmath>
#include <limits>
#include <string>

namespace xyqpt {

double GroundState::norm() const
{
    double n = 1.0;
    for (const auto& m : modes) n *= std::norm(m.amp.u) + std::norm(m.amp.v);
    return n;
}

ModeAmplitudes pair_amplitudes(double theta, double phi, Band band)
{
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    const cplx i{0.0, 1.0};
    if (band == Band::Particle) {
        return {cplx(c, 0.0), i * std::polar(1.0, -2.0 * phi) * s, Band::Particle};
    }
    return {-i * std::polar(1.0, 2.0 * phi) * s, cplx(c, 0.0), Band::Hole};
}

ModeAmplitudes mode_amplitudes(double alpha, const ModelParams& params, Band band)
{
    return pair_amplitudes(bogoliubov_angle(alpha, params.gamma, params.lambda), params.phi, band);
}

namespace {

void check_size(int n_sites)
{
    if (n_sites < 4 || n_sites % 2 != 0) {
        throw Error(ErrorKind::BadSize, "n_sites must be even and >= 4, got " + std::to_string(n_sites));
    }
}

// Self-paired momenta carry a plain Fock occupation, filled iff lambda < cos(alpha).
ModeEntry unpaired_entry(int k, int n_sites, double lambda)
{
    ModeEntry e;
    e.paired = false;
    e.mode.k = k;
    e.mode.alpha = 2.0 * pi * k / n_sites;
    const double x = lambda - std::cos(e.mode.alpha);
    e.mode.energy = std::abs(x);
    e.mode.theta = x < 0.0 ? pi : 0.0;
    const bool filled = x < 0.0;
    e.mode.band = filled ? Band::Hole : Band::Particle;
    e.amp = filled ? ModeAmplitudes{0.0, 1.0, Band::Hole} : ModeAmplitudes{1.0, 0.0, Band::Particle};
    return e;
}

template <class ThetaFn>
GroundState assemble(const ModelParams& params, int n_sites, int k_t, ThetaFn&& theta_of)
{
    GroundState gs;
    gs.params = params;
    gs.params.n_sites = n_sites;
    gs.n_sites = n_sites;
    gs.k_t = k_t;
    gs.modes.reserve(n_sites / 2 + 1);
    gs.modes.push_back(unpaired_entry(0, n_sites, params.lambda));
    for (int k = 1; k < n_sites / 2; ++k) {
        ModeEntry e;
        e.mode.k = k;
        e.mode.alpha = 2.0 * pi * k / n_sites;
        e.mode.energy = dispersion(e.mode.alpha, params.gamma, params.lambda);
        e.mode.theta = theta_of(e.mode.alpha);
        e.mode.band = k <= k_t ? Band::Hole : Band::Particle;
        e.amp = pair_amplitudes(e.mode.theta, params.phi, e.mode.band);
        gs.modes.push_back(e);
    }
    gs.modes.push_back(unpaired_entry(n_sites / 2, n_sites, params.lambda));
    return gs;
}

} // namespace

GroundState build_ground_state_with_cutoff(const ModelParams& params, int n_sites, int k_t)
{
    check_size(n_sites);
    return assemble(params, n_sites, k_t,
                    [&](double a) { return bogoliubov_angle(a, params.gamma, params.lambda); });
}

GroundState build_ground_state(const ModelParams& params, int n_sites)
{
    check_size(n_sites);
    if (gap(params.gamma, params.lambda) < kCriticalTol) {
        throw Error(ErrorKind::CriticalPoint, "gap vanishes at gamma=" + std::to_string(params.gamma) +
                                                  " lambda=" + std::to_string(params.lambda));
    }
    const int k_t = effective_fermi_cutoff(params.gamma, params.lambda, n_sites);
    return build_ground_state_with_cutoff(params, n_sites, k_t);
}

GroundState build_limit_ground_state(double phi, double lambda, int n_sites, GammaLimit limit)
{
    check_size(n_sites);
    ModelParams p{phi, limit == GammaLimit::Zero ? 0.0 : std::numeric_limits<double>::infinity(), lambda, n_sites};
    if (limit == GammaLimit::Zero) {
        // A grid momentum exactly on the Fermi point has lambda - cos(alpha) = 0
        // for every gamma, so theta = atan2(gamma sin(alpha), 0) -> pi/2.
        const int k_t = fermi_cutoff(0.0, lambda, n_sites);
        auto gs = assemble(p, n_sites, k_t, [&](double a) {
            const double d = lambda - std::cos(a);
            if (std::abs(d) < kCriticalTol) return pi / 2;
            return d > 0.0 ? 0.0 : pi;
        });
        for (auto& m : gs.modes) m.mode.energy = std::abs(lambda - std::cos(m.mode.alpha));
        return gs;
    }
    // lambda / (1 - gamma^2) -> 0-, so alpha_F -> pi/2 from above.
    auto gs = assemble(p, n_sites, n_sites / 4, [](double) { return pi / 2; });
    for (auto& m : gs.modes) m.mode.energy = std::numeric_limits<double>::infinity();
    return gs;
}

GroundState isotropic_ground_state(double lambda, int n_sites)
{
    check_size(n_sites);
    const int k_t = lambda <= 1.0 ? fermi_cutoff(0.0, lambda, n_sites) : -1;
    const MomentumGrid grid = momentum_grid(n_sites);
    std::vector<bool> mask(grid.k.size());
    for (std::size_t i = 0; i < grid.k.size(); ++i) mask[i] = std::abs(grid.k[i]) <= k_t;

    GroundState gs;
    gs.params = ModelParams{0.0, 0.0, lambda, n_sites};
    gs.n_sites = n_sites;
    gs.k_t = std::max(k_t, 0);
    for (int k = 0; k <= n_sites / 2; ++k) {
        ModeEntry e;
        e.paired = k != 0 && k != n_sites / 2;
        e.mode.k = k;
        e.mode.alpha = 2.0 * pi * k / n_sites;
        e.mode.energy = std::abs(lambda - std::cos(e.mode.alpha));
        const bool filled = k <= k_t;
        e.mode.theta = filled ? pi : 0.0;
        e.mode.band = filled ? Band::Hole : Band::Particle;
        e.amp = filled ? ModeAmplitudes{0.0, 1.0, Band::Hole} : ModeAmplitudes{1.0, 0.0, Band::Particle};
        gs.modes.push_back(e);
    }
    gs.occupation_mask = std::move(mask);
    return gs;
}

double ground_energy(const ModelParams& params, int n_sites)
{
    const MomentumGrid grid = momentum_grid(n_sites);
    double e = 0.0;
    for (double a : grid.alpha) e -= 0.5 * dispersion(a, params.gamma, params.lambda);
    return e;
}

double ground_energy_density(double gamma, double lambda)
{
    std::vector<double> bp = {0.0, pi};
    if (lambda < 1.0) bp.insert(bp.begin() + 1, std::acos(lambda));
    const auto r = integrate([&](double a) { return dispersion(a, gamma, lambda); }, std::span<const double>(bp),
                             QuadratureOptions{1e-14, 1e-13, 4000});
    return -r.value / (2.0 * pi);
}

cplx mode_overlap(const ModeAmplitudes& a, const ModeAmplitudes& b)
{
    return std::conj(a.u) * b.u + std::conj(a.v) * b.v;
}

cplx overlap(const GroundState& a, const GroundState& b, OverlapPolicy policy)
{
    if (a.n_sites != b.n_sites || a.modes.size() != b.modes.size()) {
        throw Error(ErrorKind::GridMismatch, "states live on different momentum grids");
    }
    cplx prod{1.0, 0.0};
    for (std::size_t i = 0; i < a.modes.size(); ++i) {
        if (policy == OverlapPolicy::Strict && a.modes[i].amp.band != b.modes[i].amp.band) {
            throw Error(ErrorKind::BandMismatch,
                        "mode k=" + std::to_string(a.modes[i].mode.k) + " sits in different bands");
        }
        prod *= mode_overlap(a.modes[i].amp, b.modes[i].amp);
    }
    return prod;
}

} // namespace xyqpt
