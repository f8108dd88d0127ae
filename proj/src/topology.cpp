#include <xyqpt/geometry.hpp>
#include <xyqpt/parallel.hpp>
#include <xyqpt/topology.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace xyqpt {

namespace {

ChernResult finish(double value, double error, ChernMethod method, int nodes)
{
    ChernResult c;
    c.value = value;
    c.abs_error_estimate = error;
    c.nearest_integer = static_cast<int>(std::lround(value));
    c.residual = std::abs(value - c.nearest_integer);
    c.method = method;
    c.node_count = nodes;
    return c;
}

} // namespace

ChernResult chern_number(double lambda, const QuadratureConfig& config)
{
    if (std::abs(lambda - 1.0) <= 1e-3) {
        throw Error(ErrorKind::TooCloseToCritical, "lambda=" + std::to_string(lambda) + " is within 1e-3 of 1");
    }
    // The hole window in gamma opens at sqrt(1 - lambda), closes at 1 and
    // reopens with a jump (all modes holes) at sqrt(1 + lambda).
    std::vector<double> bp = {0.0, pi / 4, std::atan(std::sqrt(1.0 + lambda)), pi / 2};
    if (lambda < 1.0) bp.push_back(std::atan(std::sqrt(1.0 - lambda)));
    std::sort(bp.begin(), bp.end());

    int inner_failures = 0;
    int evaluations = 0;
    const auto integrand = [&](double beta) {
        const double gamma = std::tan(beta);
        const auto r = curvature_integral(gamma, lambda, config.inner_rel_tol);
        if (!r.converged) ++inner_failures;
        ++evaluations;
        return r.value * (1.0 + gamma * gamma);
    };
    const auto outer = integrate(integrand, std::span<const double>(bp),
                                 QuadratureOptions{config.abs_tol * pi, 0.0, config.max_intervals});
    if (!outer.converged || inner_failures > 0) {
        throw Error(ErrorKind::QuadratureNotConverged,
                    "lambda=" + std::to_string(lambda) + ": outer error " + std::to_string(outer.abs_error / pi) +
                        ", inner failures " + std::to_string(inner_failures));
    }
    return finish(-outer.value / pi, outer.abs_error / pi, ChernMethod::Quadrature, evaluations);
}

namespace {

cplx link(const GroundState& a, const GroundState& b)
{
    cplx w{1.0, 0.0};
    for (std::size_t m = 0; m < a.modes.size(); ++m) {
        const cplx o = mode_overlap(a.modes[m].amp, b.modes[m].amp);
        if (std::abs(o) < 1e-12) {
            throw Error(ErrorKind::VortexOnPlaquette, "vanishing overlap on mode k=" + std::to_string(a.modes[m].mode.k));
        }
        w *= o / std::abs(o);
    }
    return w;
}

// Sum of plaquette phases between two consecutive rows, fixed order.
double row_flux(const std::vector<GroundState>& lo, const std::vector<GroundState>& hi)
{
    if (lo.size() != hi.size()) throw Error(ErrorKind::GridMismatch, "rows of different length");
    double total = 0.0;
    for (std::size_t i = 0; i < lo.size(); ++i) {
        const std::size_t i2 = (i + 1) % lo.size();
        const cplx loop = link(lo[i], lo[i2]) * link(lo[i2], hi[i2]) * link(hi[i2], hi[i]) * link(hi[i], lo[i]);
        const double phase = std::arg(loop);
        if (std::abs(phase) > pi - 1e-9) {
            throw Error(ErrorKind::VortexOnPlaquette, "plaquette phase " + std::to_string(phase) + " at column " +
                                                          std::to_string(i) + "; refine the grid");
        }
        total += phase;
    }
    return total;
}

double row_holonomy(const std::vector<GroundState>& row)
{
    cplx w{1.0, 0.0};
    for (std::size_t i = 0; i < row.size(); ++i) w *= link(row[i], row[(i + 1) % row.size()]);
    return std::arg(w);
}

} // namespace

ChernResult plaquette_chern(const std::vector<std::vector<GroundState>>& rows)
{
    double total = 0.0;
    int nodes = 0;
    for (std::size_t j = 0; j + 1 < rows.size(); ++j) total += row_flux(rows[j], rows[j + 1]);
    for (const auto& r : rows) nodes += static_cast<int>(r.size());
    const double top = rows.empty() ? 0.0 : row_holonomy(rows.back());
    return finish(-total / (2.0 * pi), std::abs(top) / (2.0 * pi), ChernMethod::DiscretePlaquette, nodes);
}

ChernResult chern_discrete(double lambda, const PlaquetteGrid& grid, int n_sites, int workers)
{
    if (grid.n_phi < 16 || grid.n_beta < 16) throw Error(ErrorKind::BadSize, "plaquette grid must be at least 16x16");
    if (n_sites < 256 || n_sites % 2 != 0) throw Error(ErrorKind::BadSize, "chern_discrete needs even N >= 256");

    const auto build_row = [&](int j) {
        std::vector<GroundState> row(grid.n_phi);
        const double beta = j * (pi / 2) / grid.n_beta;
        parallel_for(
            row.size(),
            [&](std::size_t i) {
                const double phi = i * pi / grid.n_phi;
                if (j == 0) {
                    row[i] = build_limit_ground_state(phi, lambda, n_sites, GammaLimit::Zero);
                } else if (j == grid.n_beta) {
                    row[i] = build_limit_ground_state(phi, lambda, n_sites, GammaLimit::Infinity);
                } else {
                    try {
                        row[i] = build_ground_state({phi, std::tan(beta), lambda, n_sites}, n_sites);
                    } catch (const Error& e) {
                        if (e.kind() != ErrorKind::CriticalPoint && e.kind() != ErrorKind::GaplessMode) throw;
                        throw Error(ErrorKind::GaplessOnGrid, e.what());
                    }
                }
            },
            workers);
        return row;
    };

    double total = 0.0;
    std::vector<GroundState> lower = build_row(0);
    for (int j = 1; j <= grid.n_beta; ++j) {
        std::vector<GroundState> upper = build_row(j);
        total += row_flux(lower, upper);
        lower = std::move(upper);
    }
    const double top = row_holonomy(lower);
    return finish(-total / (2.0 * pi), std::abs(top) / (2.0 * pi), ChernMethod::DiscretePlaquette,
                  grid.n_phi * (grid.n_beta + 1));
}

std::string_view to_string(PhaseLabel label) noexcept
{
    switch (label) {
    case PhaseLabel::ChernMinusOne: return "ChernMinusOne";
    case PhaseLabel::Boundary: return "Boundary";
    case PhaseLabel::ChernZero: return "ChernZero";
    }
    return "Unknown";
}

PhasePoint classify_phase(double lambda, const QuadratureConfig& config)
{
    if (!(lambda >= 0.0)) throw Error(ErrorKind::InvalidParams, "lambda must be >= 0");
    PhasePoint p;
    p.lambda = lambda;
    p.gap_at_gamma_one = gap(1.0, lambda);
    if (std::abs(lambda - 1.0) <= 1e-3) {
        p.label = PhaseLabel::Boundary;
        return p;
    }
    p.chern = chern_number(lambda, config);
    switch (p.chern->nearest_integer) {
    case -1: p.label = PhaseLabel::ChernMinusOne; break;
    case 0: p.label = PhaseLabel::ChernZero; break;
    default:
        throw Error(ErrorKind::NonTopologicalValue,
                    "C1(" + std::to_string(lambda) + ") = " + std::to_string(p.chern->value));
    }
    return p;
}

TransitionInterval detect_transition(double lambda_lo, double lambda_hi, double tol, const TransitionConfig& config)
{
    if (!(lambda_lo < lambda_hi) || !(tol > 0.0)) {
        throw Error(ErrorKind::InvalidParams, "need lambda_lo < lambda_hi and tol > 0");
    }
    const PhaseLabel a = classify_phase(lambda_lo, config.quadrature).label;
    const PhaseLabel b = classify_phase(lambda_hi, config.quadrature).label;
    if (a == PhaseLabel::Boundary || b == PhaseLabel::Boundary) {
        throw Error(ErrorKind::InvalidParams, "bracket endpoints must not be Boundary points");
    }
    if (a == b) throw Error(ErrorKind::NoJumpFound, "both endpoints are " + std::string(to_string(a)));

    // A midpoint can land exactly on a grid Fermi point at gamma -> 0; step
    // off it by a tiny fraction of the bracket.
    const auto label = [&](double lambda, double width) {
        for (double nudge : {0.0, 1e-7, -1e-7, 3e-7}) {
            try {
                return chern_discrete(lambda + nudge * width, config.grid, config.n_sites).nearest_integer;
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::GaplessOnGrid) throw;
            }
        }
        throw Error(ErrorKind::GaplessOnGrid, "no gapped grid near lambda=" + std::to_string(lambda));
    };

    TransitionInterval t{lambda_lo, lambda_hi, 0, 0, 0};
    t.label_lo = label(lambda_lo, lambda_hi - lambda_lo);
    t.label_hi = label(lambda_hi, lambda_hi - lambda_lo);
    if (t.label_lo == t.label_hi) {
        throw Error(ErrorKind::NoJumpFound, "discrete Chern labels agree at both ends (" +
                                                std::to_string(t.label_lo) + ")");
    }
    while (t.hi - t.lo > tol) {
        const double mid = 0.5 * (t.lo + t.hi);
        if (label(mid, t.hi - t.lo) == t.label_lo) {
            t.lo = mid;
        } else {
            t.hi = mid;
        }
        ++t.bisections;
    }
    return t;
}

} // namespace xyqpt
