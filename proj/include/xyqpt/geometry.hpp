#pragma once
#include <xyqpt/ground_state.hpp>
#include <xyqpt/quadrature.hpp>
#include <xyqpt/types.hpp>

#include <array>

namespace xyqpt {

/// Quantum geometric tensor on (phi, gamma, lambda), indexed by Coord.
struct GeometricTensor {
    std::array<Coord, 3> coords{Coord::Phi, Coord::Gamma, Coord::Lambda};
    cmat g = cmat::Zero(3, 3);

    cplx operator()(Coord mu, Coord nu) const { return g(static_cast<int>(mu), static_cast<int>(nu)); }
};

/// Thermodynamic-limit curvature F_{phi gamma} per unit alpha measure.
struct CurvatureDensity {
    cplx value;
    double gamma = 0.0;
    double lambda = 0.0;
};

/// gamma sin^2 a (lambda - cos a) / |Lambda|^3, the real profile of the
/// per-mode curvature.
double curvature_profile(double alpha, double gamma, double lambda);

/// Per-mode F_{phi gamma} = +-i sin(theta) dtheta/dgamma, + for Particle.
cplx berry_curvature_mode(double alpha, const ModelParams& params, Band band);

/// int_{aF}^pi f - int_0^{aF} f for the profile f above, no gap check.
QuadratureResult curvature_integral(double gamma, double lambda, double rel_tol = 1e-9);

/// i [int_{aF}^pi f - int_0^{aF} f] with aF = fermi_momentum(gamma, lambda).
/// Throws CriticalPoint at zero gap and QuadratureNotConverged.
CurvatureDensity berry_curvature_density(double gamma, double lambda);

/// Finite-N counterpart (2 pi / N) sum_pairs F_mode, with the band layout of
/// build_ground_state. Converges to berry_curvature_density as O(1/N).
cplx berry_curvature_sum(const ModelParams& params, int n_sites);

/// G_{mu nu} = <d_mu psi|d_nu psi> - <d_mu psi|psi><psi|d_nu psi> by central
/// differences of the product state, band layout frozen at the centre point.
/// Checks the result against step h/2 (RichardsonMismatch on disagreement
/// above 1e-6 relative). Throws CriticalPoint, StencilCrossesCritical.
GeometricTensor qgt_finite_diff(const ModelParams& params, int n_sites, double step = 1e-5);

/// Symmetric real part of qgt_finite_diff (Fubini-Study metric).
rmat metric_real(const ModelParams& params, int n_sites);

/// Spectral sum over exact eigenstates, N <= 10.
GeometricTensor qgt_spectral(const ModelParams& params, int n_sites);

/// F_{mu nu} = G_{mu nu} - G_{nu mu} = 2i Im G_{mu nu}.
inline cplx curvature_from_qgt(const GeometricTensor& t, Coord mu, Coord nu)
{
    return t(mu, nu) - t(nu, mu);
}

} // namespace xyqpt
