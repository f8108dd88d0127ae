#include <xyqpt/model.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace xyqpt {

std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::GaplessMode: return "GaplessMode";
    case ErrorKind::DegenerateRatio: return "DegenerateRatio";
    case ErrorKind::BadSize: return "BadSize";
    case ErrorKind::CriticalPoint: return "CriticalPoint";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::BandMismatch: return "BandMismatch";
    case ErrorKind::StencilCrossesCritical: return "StencilCrossesCritical";
    case ErrorKind::RichardsonMismatch: return "RichardsonMismatch";
    case ErrorKind::DegenerateGroundState: return "DegenerateGroundState";
    case ErrorKind::SizeLimit: return "SizeLimit";
    case ErrorKind::TooCloseToCritical: return "TooCloseToCritical";
    case ErrorKind::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorKind::GaplessOnGrid: return "GaplessOnGrid";
    case ErrorKind::VortexOnPlaquette: return "VortexOnPlaquette";
    case ErrorKind::NoJumpFound: return "NoJumpFound";
    case ErrorKind::ZeroOverlap: return "ZeroOverlap";
    case ErrorKind::NonTopologicalValue: return "NonTopologicalValue";
    }
    return "Unknown";
}

void ModelParams::validate() const
{
    if (!std::isfinite(phi) || !std::isfinite(gamma) || !std::isfinite(lambda)) {
        throw Error(ErrorKind::InvalidParams, "non-finite parameter");
    }
    if (phi < 0.0 || phi >= pi) {
        throw Error(ErrorKind::InvalidParams, "phi must lie in [0, pi)");
    }
    if (gamma < 0.0 || lambda < 0.0) {
        throw Error(ErrorKind::InvalidParams, "gamma and lambda must be >= 0");
    }
    if (n_sites && (*n_sites < 4 || *n_sites % 2 != 0)) {
        throw Error(ErrorKind::BadSize, "n_sites must be even and >= 4");
    }
}

namespace {

// Exact rational boundaries (e.g. N/4 at lambda = 0) must not be lost to
// rounding in N * acos(r) / 2pi.
int floor_index(double x) { return static_cast<int>(std::floor(x + 1e-9)); }

} // namespace

int fermi_cutoff(double gamma, double lambda, int n_sites)
{
    if (n_sites < 4) {
        throw Error(ErrorKind::BadSize, "fermi_cutoff needs n_sites >= 4");
    }
    const double denom = 1.0 - gamma * gamma;
    if (denom == 0.0) {
        throw Error(ErrorKind::DegenerateRatio, "1 - gamma^2 vanishes; use the gamma -> 1 limit");
    }
    const double ratio = lambda / denom;
    if (std::abs(ratio) > 1.0) return 0;
    return floor_index(n_sites / (2.0 * pi) * std::acos(ratio));
}

int effective_fermi_cutoff(double gamma, double lambda, int n_sites)
{
    if (gamma == 1.0) {
        if (n_sites < 4) throw Error(ErrorKind::BadSize, "fermi_cutoff needs n_sites >= 4");
        return lambda == 0.0 ? n_sites / 4 : 0;
    }
    return fermi_cutoff(gamma, lambda, n_sites);
}

double fermi_momentum(double gamma, double lambda)
{
    if (gamma == 1.0) return lambda == 0.0 ? pi / 2 : 0.0;
    const double ratio = lambda / (1.0 - gamma * gamma);
    if (std::abs(ratio) > 1.0) return 0.0;
    return std::acos(ratio);
}

double gap(double gamma, double lambda)
{
    // |Lambda|^2 = (1 - g^2) x^2 - 2 lambda x + lambda^2 + g^2 with x = cos(alpha).
    const double g2 = gamma * gamma;
    const double a = 1.0 - g2;
    const double at_plus = (1.0 - lambda) * (1.0 - lambda);
    const double at_minus = (1.0 + lambda) * (1.0 + lambda);
    double best = std::min(at_plus, at_minus);
    if (a > 0.0) {
        const double x = lambda / a;
        if (std::abs(x) <= 1.0) {
            const double vertex = g2 * (a - lambda * lambda) / a;
            best = std::min(best, vertex);
        }
    }
    return std::sqrt(std::max(best, 0.0));
}

double finite_gap(double gamma, double lambda, int n_sites)
{
    const MomentumGrid grid = momentum_grid(n_sites);
    double best = std::numeric_limits<double>::infinity();
    for (double a : grid.alpha) best = std::min(best, dispersion(a, gamma, lambda));
    return best;
}

MomentumGrid momentum_grid(int n_sites)
{
    if (n_sites < 4 || n_sites % 2 != 0) {
        throw Error(ErrorKind::BadSize, "momentum grid needs even n_sites >= 4, got " + std::to_string(n_sites));
    }
    MomentumGrid grid;
    grid.n_sites = n_sites;
    grid.k.reserve(n_sites);
    grid.alpha.reserve(n_sites);
    for (int k = -n_sites / 2 + 1; k <= n_sites / 2; ++k) {
        grid.k.push_back(k);
        grid.alpha.push_back(2.0 * pi * k / n_sites);
    }
    return grid;
}

Mode make_mode(int k, int n_sites, double gamma, double lambda, int k_t)
{
    Mode m;
    m.k = k;
    m.alpha = 2.0 * pi * k / n_sites;
    m.energy = dispersion(m.alpha, gamma, lambda);
    m.theta = bogoliubov_angle(m.alpha, gamma, lambda);
    m.band = std::abs(k) <= k_t ? Band::Hole : Band::Particle;
    return m;
}

} // namespace xyqpt
