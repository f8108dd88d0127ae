#pragma once
#include <xyqpt/errors.hpp>
#include <xyqpt/types.hpp>

#include <bit>
#include <cstdint>
#include <string>

namespace xyqpt::oracle::detail {

using state_t = std::uint32_t;

/// Coefficients of one ring operator sum_j [hop (s+s- + s-s+) + raise s+s+ +
/// lower s-s- + field s^z_j]; H and its parameter derivatives all take
/// this form.
struct RingCoefficients {
    cplx hop{0.0, 0.0};
    cplx raise{0.0, 0.0};
    cplx lower{0.0, 0.0};
    cplx field{0.0, 0.0};
};

inline RingCoefficients hamiltonian_coefficients(const ModelParams& p)
{
    const cplx e2 = std::polar(1.0, 2.0 * p.phi);
    return {-0.5, -0.5 * p.gamma * e2, -0.5 * p.gamma * std::conj(e2), -0.5 * p.lambda};
}

inline RingCoefficients derivative_coefficients(const ModelParams& p, Coord c)
{
    const cplx e2 = std::polar(1.0, 2.0 * p.phi);
    const cplx i{0.0, 1.0};
    switch (c) {
    case Coord::Phi: return {0.0, -i * p.gamma * e2, i * p.gamma * std::conj(e2), 0.0};
    case Coord::Gamma: return {0.0, -0.5 * e2, -0.5 * std::conj(e2), 0.0};
    case Coord::Lambda: return {0.0, 0.0, 0.0, -0.5};
    }
    return {};
}

inline void check_sites(int n_sites, int max_sites)
{
    if (n_sites < 2 || n_sites > max_sites) {
        throw Error(ErrorKind::SizeLimit,
                    "dense oracle supports 2 <= N <= " + std::to_string(max_sites) + ", got " + std::to_string(n_sites));
    }
}

/// Calls emit(target, amplitude) for every nonzero <target|O|s>.
template <class Emit>
void apply_ring(const RingCoefficients& c, int n_sites, state_t s, Emit&& emit)
{
    if (c.field != 0.0) {
        const int up = std::popcount(s);
        emit(s, c.field * static_cast<double>(2 * up - n_sites));
    }
    for (int j = 0; j < n_sites; ++j) {
        const int j2 = (j + 1) % n_sites;
        const state_t mask = (state_t{1} << j) | (state_t{1} << j2);
        const bool up1 = (s >> j) & 1u;
        const bool up2 = (s >> j2) & 1u;
        if (up1 != up2) {
            if (c.hop != 0.0) emit(s ^ mask, c.hop);
        } else if (!up1) {
            if (c.raise != 0.0) emit(s ^ mask, c.raise);
        } else {
            if (c.lower != 0.0) emit(s ^ mask, c.lower);
        }
    }
}

/// Number of down spins (= fermions) mod 2.
inline int fermion_parity(state_t s, int n_sites) { return (n_sites - std::popcount(s)) & 1; }

} // namespace xyqpt::oracle::detail
