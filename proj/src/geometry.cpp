#include <xyqpt/geometry.hpp>
#include <xyqpt/oracle.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

namespace xyqpt {

double curvature_profile(double alpha, double gamma, double lambda)
{
    const double s = std::sin(alpha);
    const double e = dispersion(alpha, gamma, lambda);
    return gamma * s * s * (lambda - std::cos(alpha)) / (e * e * e);
}

cplx berry_curvature_mode(double alpha, const ModelParams& params, Band band)
{
    const double theta = bogoliubov_angle(alpha, params.gamma, params.lambda);
    const double value = std::sin(theta) * bogoliubov_angle_dgamma(alpha, params.gamma, params.lambda);
    return {0.0, band == Band::Particle ? value : -value};
}

namespace {

void require_gapped(double gamma, double lambda)
{
    if (gap(gamma, lambda) < kCriticalTol) {
        throw Error(ErrorKind::CriticalPoint,
                    "gap vanishes at gamma=" + std::to_string(gamma) + " lambda=" + std::to_string(lambda));
    }
}

} // namespace

QuadratureResult curvature_integral(double gamma, double lambda, double rel_tol)
{
    const double a_f = fermi_momentum(gamma, lambda);
    std::array<double, 4> bp = {0.0, pi, pi, pi};
    std::size_t n = 2;
    if (a_f > 0.0 && a_f < pi) bp[n++] = a_f;
    if (lambda < 1.0) bp[n++] = std::acos(lambda);
    std::sort(bp.begin(), bp.begin() + n);
    // The hole/particle sign flips exactly on the a_f breakpoint.
    const auto signed_profile = [&](double a) {
        const double f = curvature_profile(a, gamma, lambda);
        return a < a_f ? -f : f;
    };
    return integrate(signed_profile, std::span<const double>(bp.data(), n), QuadratureOptions{1e-13, rel_tol, 2000});
}

CurvatureDensity berry_curvature_density(double gamma, double lambda)
{
    require_gapped(gamma, lambda);
    const auto r = curvature_integral(gamma, lambda);
    if (!r.converged) {
        throw Error(ErrorKind::QuadratureNotConverged, "curvature density at gamma=" + std::to_string(gamma) +
                                                           " lambda=" + std::to_string(lambda));
    }
    return {cplx(0.0, r.value), gamma, lambda};
}

cplx berry_curvature_sum(const ModelParams& params, int n_sites)
{
    require_gapped(params.gamma, params.lambda);
    const GroundState gs = build_ground_state(params, n_sites);
    double total = 0.0;
    for (const auto& m : gs.modes) {
        if (!m.paired) continue;
        total += berry_curvature_mode(m.mode.alpha, params, m.mode.band).imag();
    }
    return {0.0, 2.0 * pi / n_sites * total};
}

namespace {

using Amp = Eigen::Vector2cd;

std::vector<Amp> amplitudes(const GroundState& s)
{
    std::vector<Amp> out;
    out.reserve(s.modes.size());
    for (const auto& m : s.modes) out.emplace_back(m.amp.u, m.amp.v);
    return out;
}

ModelParams shifted(const ModelParams& p, int mu, double dx)
{
    ModelParams q = p;
    if (mu == 0) q.phi += dx;
    if (mu == 1) q.gamma += dx;
    if (mu == 2) q.lambda += dx;
    return q;
}

// A segment that straddles lambda = 1 or (gamma = 0, lambda < 1) flips an
// occupation even if both endpoints look gapped.
void check_stencil(const ModelParams& p, double h)
{
    for (int mu = 0; mu < 3; ++mu) {
        for (double sgn : {-1.0, 1.0}) {
            const ModelParams q = shifted(p, mu, sgn * h);
            if (gap(q.gamma, q.lambda) < 1e-10) {
                throw Error(ErrorKind::StencilCrossesCritical, "stencil point gap below 1e-10");
            }
        }
    }
    const bool crosses_field = (p.lambda - h - 1.0) * (p.lambda + h - 1.0) <= 0.0;
    const bool crosses_isotropic = p.lambda < 1.0 && (p.gamma - h) * (p.gamma + h) <= 0.0;
    if (crosses_field || crosses_isotropic) {
        throw Error(ErrorKind::StencilCrossesCritical, "stencil straddles a critical line");
    }
}

cmat qgt_at_step(const ModelParams& p, int n_sites, int k_t, double h)
{
    const auto centre = amplitudes(build_ground_state_with_cutoff(p, n_sites, k_t));
    std::array<std::vector<Amp>, 3> plus, minus;
    for (int mu = 0; mu < 3; ++mu) {
        plus[mu] = amplitudes(build_ground_state_with_cutoff(shifted(p, mu, h), n_sites, k_t));
        minus[mu] = amplitudes(build_ground_state_with_cutoff(shifted(p, mu, -h), n_sites, k_t));
    }
    cmat g = cmat::Zero(3, 3);
    std::array<Amp, 3> d;
    for (std::size_t i = 0; i < centre.size(); ++i) {
        for (int mu = 0; mu < 3; ++mu) d[mu] = (plus[mu][i] - minus[mu][i]) / (2.0 * h);
        const Amp& a = centre[i];
        for (int mu = 0; mu < 3; ++mu) {
            for (int nu = 0; nu < 3; ++nu) {
                g(mu, nu) += d[mu].dot(d[nu]) - d[mu].dot(a) * a.dot(d[nu]);
            }
        }
    }
    return 0.5 * (g + g.adjoint());
}

} // namespace

GeometricTensor qgt_finite_diff(const ModelParams& params, int n_sites, double step)
{
    if (!(step >= 1e-6 && step <= 1e-3)) {
        throw Error(ErrorKind::InvalidParams, "finite-difference step must lie in [1e-6, 1e-3]");
    }
    require_gapped(params.gamma, params.lambda);
    check_stencil(params, step);
    const int k_t = effective_fermi_cutoff(params.gamma, params.lambda, n_sites);

    GeometricTensor t;
    t.g = qgt_at_step(params, n_sites, k_t, step);
    const cmat half = qgt_at_step(params, n_sites, k_t, 0.5 * step);
    const double scale = std::max(1.0, half.cwiseAbs().maxCoeff());
    const double diff = (t.g - half).cwiseAbs().maxCoeff();
    if (diff > 1e-6 * scale) {
        throw Error(ErrorKind::RichardsonMismatch,
                    "steps h and h/2 disagree by " + std::to_string(diff) + " (scale " + std::to_string(scale) + ")");
    }
    return t;
}

rmat metric_real(const ModelParams& params, int n_sites)
{
    const rmat re = qgt_finite_diff(params, n_sites).g.real();
    return 0.5 * (re + re.transpose());
}

GeometricTensor qgt_spectral(const ModelParams& params, int n_sites)
{
    GeometricTensor t;
    for (const auto& term : oracle::qgt_matrix_elements(params, n_sites)) t.g += term.contribution;
    return t;
}

} // namespace xyqpt
