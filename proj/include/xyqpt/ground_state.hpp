#pragma once
#include <xyqpt/model.hpp>
#include <xyqpt/types.hpp>

#include <optional>
#include <vector>

namespace xyqpt {

/// Amplitudes of one momentum sector in the fixed basis
/// u -> |0>_k |0>_{-k}, v -> |1>_k |1>_{-k}. For the unpaired momenta
/// (k = 0, N/2) the basis is the single-mode |0>, |1>.
struct ModeAmplitudes {
    cplx u{1.0, 0.0};
    cplx v{0.0, 0.0};
    Band band = Band::Particle;
};

struct ModeEntry {
    Mode mode;
    ModeAmplitudes amp;
    bool paired = true;
};

/// Product-form ground state: one entry per momentum pair (k, -k) with
/// 0 < k < N/2, plus the unpaired k = 0 and k = N/2 modes, ordered by k.
struct GroundState {
    ModelParams params;
    int n_sites = 0;
    int k_t = 0;
    std::vector<ModeEntry> modes;
    /// Set only for the isotropic Fock state; indexed like momentum_grid().
    std::optional<std::vector<bool>> occupation_mask;

    double norm() const;
};

/// Pair amplitudes for angle theta in the given band:
/// Particle: (cos(theta/2), i e^{-2i phi} sin(theta/2));
/// Hole:     (-i e^{2i phi} sin(theta/2), cos(theta/2)).
ModeAmplitudes pair_amplitudes(double theta, double phi, Band band);

ModeAmplitudes mode_amplitudes(double alpha, const ModelParams& params, Band band);

/// Ground state with |k| <= k_T pairs in the hole band. Throws CriticalPoint
/// when gap(gamma, lambda) < 1e-12 and BadSize for odd or small N.
GroundState build_ground_state(const ModelParams& params, int n_sites);

/// Same construction with an externally fixed cutoff; the band layout stays
/// frozen while parameters move (finite-difference stencils).
GroundState build_ground_state_with_cutoff(const ModelParams& params, int n_sites, int k_t);

enum class GammaLimit { Zero, Infinity };

/// gamma -> 0+ or gamma -> infinity limit of the product state, where theta
/// tends to {0, pi} or to pi/2. A grid momentum sitting on the gamma = 0
/// Fermi point keeps theta = pi/2 in the gamma -> 0 limit.
GroundState build_limit_ground_state(double phi, double lambda, int n_sites, GammaLimit limit);

/// Isotropic (gamma = 0) Fock ground state: |k| <= k_T occupied for
/// lambda <= 1 with k_T = [N/(2 pi) arccos lambda], empty for lambda > 1.
GroundState isotropic_ground_state(double lambda, int n_sites);

/// -1/2 sum_k |Lambda_k| over the N-point momentum grid.
double ground_energy(const ModelParams& params, int n_sites);

/// Thermodynamic ground energy per site, -(1/4 pi) int_{-pi}^{pi} |Lambda| d alpha.
double ground_energy_density(double gamma, double lambda);

enum class OverlapPolicy {
    /// Refuse states with different band layouts (BandMismatch).
    Strict,
    /// Compare amplitudes in the fixed |00>, |11> basis regardless of band.
    FixedBasis,
};

cplx mode_overlap(const ModeAmplitudes& a, const ModeAmplitudes& b);

/// prod_k (conj(u_a) u_b + conj(v_a) v_b).
cplx overlap(const GroundState& a, const GroundState& b, OverlapPolicy policy = OverlapPolicy::Strict);

} // namespace xyqpt
