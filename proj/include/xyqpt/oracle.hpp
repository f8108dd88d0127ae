#pragma once
#include <xyqpt/ground_state.hpp>
#include <xyqpt/types.hpp>

#include <span>
#include <vector>

// Desk-scale reference engines. Spin basis: bit j of a basis index is site
// j+1, set bit = spin up. Jordan-Wigner fermions are down spins, so the
// fermion vacuum is the fully polarised up state.
namespace xyqpt::oracle {

inline constexpr int kMaxSites = 12;
inline constexpr int kMaxSpectralSites = 10;

struct SpinSpectrum {
    int n_sites = 0;
    rvec energies;      // all 2^N eigenvalues, ascending
    cvec ground_vector; // unit norm, largest component real positive
};

/// Rotated XY Hamiltonian on a periodic ring, dense 2^N x 2^N. Throws
/// SizeLimit outside 2 <= N <= 12.
cmat build_spin_hamiltonian(const ModelParams& params, int n_sites);

/// dH/dphi, dH/dgamma or dH/dlambda as dense matrices.
cmat spin_hamiltonian_derivative(const ModelParams& params, int n_sites, Coord coord);

/// Full spectrum from translation x parity blocks; the ground vector is
/// expanded back into the full basis.
SpinSpectrum ed_ground(const ModelParams& params, int n_sites);

/// Eigen-decomposition of the parity sector holding the global ground
/// state, vectors in the full 2^N basis. Used by the spectral QGT.
struct SectorEigensystem {
    rvec energies;
    cmat vectors;  // columns, 2^N rows
    double global_gap = 0.0;  // E1 - E0 over the whole spectrum
};
SectorEigensystem ground_sector_eigensystem(const ModelParams& params, int n_sites);

struct ParitySectorResult {
    double even_sector_energy = 0.0;
    double odd_sector_energy = 0.0;
    std::vector<double> momenta_even; // half-integer quantised, alpha in (-pi, pi]
    std::vector<double> momenta_odd;  // integer quantised
    double ground_energy = 0.0;
};

/// Both fermion-parity sectors of the chain with its boundary term kept.
ParitySectorResult free_fermion_parity_spectrum(const ModelParams& params, int n_sites);

struct QgtTerm {
    int m = 0;
    double excitation = 0.0; // E_m - E_0
    cmat contribution;       // 3x3
};

/// <0|d_mu H|m><m|d_nu H|0> / (E_m - E_0)^2 for every excited m of the
/// ground parity sector (other sectors have vanishing matrix elements).
/// Throws DegenerateGroundState when E1 - E0 < 1e-10, SizeLimit for N > 10.
std::vector<QgtTerm> qgt_matrix_elements(const ModelParams& params, int n_sites);

/// Finite-difference QGT of the exact ground vector, neighbours aligned to
/// the centre by parallel transport.
cmat qgt_ed_finite_diff(const ModelParams& params, int n_sites, double step = 1e-4);

/// Product state in the 2^N spin basis (N <= 12), using integer momenta and
/// d_k^dag = N^{-1/2} sum_l e^{i alpha_k l} a_l^dag.
cvec embed_fock_state(const GroundState& state);

/// Quadratic fermion Hamiltonian with the parity-dependent boundary factor
/// dropped (plain periodic fermions), in the spin basis.
cmat fermion_hamiltonian_periodic(const ModelParams& params, int n_sites);

/// arg of the product of consecutive overlaps around a closed loop, in
/// (-pi, pi]. Throws ZeroOverlap when a link (or any per-mode factor) is
/// below 1e-12 in modulus.
double wilson_loop_phase(std::span<const GroundState> loop);
double wilson_loop_phase(std::span<const cvec> loop);

/// Loop of parameter points through build_ground_state.
double wilson_loop_berry_phase(std::span<const ModelParams> loop, int n_sites);

/// Same loop through exact ground vectors (N <= 12).
double wilson_loop_berry_phase_ed(std::span<const ModelParams> loop, int n_sites);

} // namespace xyqpt::oracle
