#pragma once
#include <Eigen/Core>
#include <complex>
#include <numbers>
#include <optional>
#include <string_view>

namespace xyqpt {

template <class Scalar_, int Rows_ = Eigen::Dynamic, int Cols_ = Eigen::Dynamic>
using mat_type = Eigen::Matrix<Scalar_, Rows_, Cols_>;

template <class Scalar_, int Rows_ = Eigen::Dynamic>
using vec_type = Eigen::Matrix<Scalar_, Rows_, 1>;

using cplx = std::complex<double>;
using cvec = vec_type<cplx>;
using cmat = mat_type<cplx>;
using rvec = vec_type<double>;
using rmat = mat_type<double>;

inline constexpr double pi = std::numbers::pi;

/// Gap below which a mode or a parameter point is treated as critical.
inline constexpr double kCriticalTol = 1e-12;

/// Quasiparticle band of a momentum pair in the particle-hole picture.
/// Hole modes (|k| <= k_T) enter the ground state with the flipped pairing.
enum class Band { Particle, Hole };

inline constexpr std::string_view to_string(Band b) noexcept
{
    return b == Band::Particle ? "particle" : "hole";
}

/// Point (phi, gamma, lambda) on the parameter manifold of the rotated XY
/// chain, with an optional even chain length (absent means thermodynamic
/// limit).
struct ModelParams {
    double phi = 0.0;
    double gamma = 1.0;
    double lambda = 0.0;
    std::optional<int> n_sites;

    /// Throws InvalidParams on values outside the in-scope quadrant.
    void validate() const;
};

/// One momentum sector.
struct Mode {
    int k = 0;
    double alpha = 0.0;
    double energy = 0.0;
    double theta = 0.0;
    Band band = Band::Particle;
};

/// Coordinates of the parameter manifold, in tensor index order.
enum class Coord : int { Phi = 0, Gamma = 1, Lambda = 2 };

} // namespace xyqpt
