#pragma once
#include <xyqpt/errors.hpp>
#include <xyqpt/types.hpp>

#include <cmath>
#include <optional>
#include <vector>

namespace xyqpt {

/// Quasiparticle energy |Lambda(alpha)| = sqrt((cos a - lambda)^2 + gamma^2 sin^2 a).
template <class T>
T dispersion(T alpha, T gamma, T lambda)
{
    using std::cos;
    using std::hypot;
    using std::sin;
    return hypot(cos(alpha) - lambda, gamma * sin(alpha));
}

/// Bogoliubov angle theta = atan2(gamma sin a, lambda - cos a), in (-pi, pi].
/// Throws GaplessMode when the mode energy vanishes.
template <class T>
T bogoliubov_angle(T alpha, T gamma, T lambda)
{
    using std::atan2;
    using std::cos;
    using std::sin;
    const T y = gamma * sin(alpha);
    const T x = lambda - cos(alpha);
    if (std::hypot(x, y) <= T(kCriticalTol)) {
        throw Error(ErrorKind::GaplessMode, "mode energy vanishes; theta undefined");
    }
    T th = atan2(y, x);
    if (th <= -T(pi)) th = T(pi);
    return th;
}

/// d(theta)/d(gamma) = (lambda - cos a) sin a / |Lambda|^2.
template <class T>
T bogoliubov_angle_dgamma(T alpha, T gamma, T lambda)
{
    using std::cos;
    using std::sin;
    const T e = dispersion(alpha, gamma, lambda);
    return (lambda - cos(alpha)) * sin(alpha) / (e * e);
}

/// d(theta)/d(lambda) = -gamma sin a / |Lambda|^2.
template <class T>
T bogoliubov_angle_dlambda(T alpha, T gamma, T lambda)
{
    using std::sin;
    const T e = dispersion(alpha, gamma, lambda);
    return -gamma * sin(alpha) / (e * e);
}

/// floor(N/(2 pi) arccos(lambda/(1-gamma^2))) when the ratio lies in [-1, 1],
/// else 0. Throws DegenerateRatio at gamma == 1 and BadSize for N < 4.
int fermi_cutoff(double gamma, double lambda, int n_sites);

/// fermi_cutoff with the gamma == 1 limit filled in: 0 for lambda > 0 and
/// [N/4] at lambda == 0.
int effective_fermi_cutoff(double gamma, double lambda, int n_sites);

/// Continuum Fermi momentum alpha_F used to split the curvature integral.
/// Returns 0 when no hole modes exist.
double fermi_momentum(double gamma, double lambda);

/// Spectral gap min_{alpha in [0, pi]} |Lambda(alpha)|, minimised analytically
/// over x = cos(alpha).
double gap(double gamma, double lambda);

/// min_k |Lambda_k| over the N-point momentum grid.
double finite_gap(double gamma, double lambda, int n_sites);

/// Momentum index set k = -N/2+1 ... N/2 and alpha_k = 2 pi k / N.
struct MomentumGrid {
    int n_sites = 0;
    std::vector<int> k;
    std::vector<double> alpha;
};

MomentumGrid momentum_grid(int n_sites);

/// Builds the Mode record for momentum index k (band by the |k| <= k_T rule).
Mode make_mode(int k, int n_sites, double gamma, double lambda, int k_t);

} // namespace xyqpt
