#pragma once
#include <xyqpt/ground_state.hpp>

#include <optional>
#include <string_view>
#include <vector>

namespace xyqpt {

enum class ChernMethod { Quadrature, DiscretePlaquette };

struct ChernResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    int nearest_integer = 0;
    double residual = 0.0;
    ChernMethod method = ChernMethod::Quadrature;
    int node_count = 0;
};

struct QuadratureConfig {
    double abs_tol = 1e-6;        // on C1
    double inner_rel_tol = 1e-9;  // alpha integral at each gamma
    int max_intervals = 4000;     // outer beta panels
};

/// C1 = (i/pi) int_0^inf dgamma D(gamma, lambda), with the phi integral done
/// analytically and gamma = tan(beta). Throws TooCloseToCritical for
/// |lambda - 1| <= 1e-3 and QuadratureNotConverged.
ChernResult chern_number(double lambda, const QuadratureConfig& config = {});

struct PlaquetteGrid {
    int n_phi = 64;
    int n_beta = 64;
};

/// Sum of plaquette phases over rows of states on a (phi, beta) grid,
/// periodic in phi (the inner index) and open in beta, divided by -2 pi.
/// Links use the fixed |00>,|11> basis so band relabelling between rows is
/// seen by the overlaps. Throws VortexOnPlaquette.
ChernResult plaquette_chern(const std::vector<std::vector<GroundState>>& rows);

/// Plaquette sum over phi in [0, pi) x beta in [0, pi/2] with the gamma -> 0
/// and gamma -> infinity limit states as the first and last rows. The
/// abs_error_estimate is the uncancelled holonomy of the top row over 2 pi.
/// Throws BadSize (grid < 16, N < 256), GaplessOnGrid, VortexOnPlaquette.
ChernResult chern_discrete(double lambda, const PlaquetteGrid& grid = {}, int n_sites = 1024, int workers = 0);

enum class PhaseLabel { ChernMinusOne, Boundary, ChernZero };

std::string_view to_string(PhaseLabel label) noexcept;

struct PhasePoint {
    double lambda = 0.0;
    std::optional<ChernResult> chern; // absent at the Boundary
    double gap_at_gamma_one = 0.0;
    PhaseLabel label = PhaseLabel::Boundary;
};

/// Boundary within 1e-3 of lambda = 1, else the nearest integer of
/// chern_number. Throws NonTopologicalValue when that integer is not -1 or 0.
PhasePoint classify_phase(double lambda, const QuadratureConfig& config = {});

struct TransitionInterval {
    double lo = 0.0;
    double hi = 0.0;
    int label_lo = 0;
    int label_hi = 0;
    int bisections = 0;
};

struct TransitionConfig {
    PlaquetteGrid grid{};
    int n_sites = 1024;
    QuadratureConfig quadrature{};
};

/// Bisection on the nearest integer of chern_discrete between two points
/// that classify_phase labels differently. Throws NoJumpFound when they
/// agree, InvalidParams if either is Boundary.
TransitionInterval detect_transition(double lambda_lo, double lambda_hi, double tol,
                                     const TransitionConfig& config = {});

} // namespace xyqpt
