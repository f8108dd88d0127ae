#include "sampling.hpp"

#include <xyqpt/ground_state.hpp>
#include <xyqpt/oracle.hpp>

#include <doctest.h>

#include <cmath>

using namespace xyqpt;
using doctest::Approx;

namespace {

ErrorKind kind_of(auto&& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::InvalidParams;
}

} // namespace

TEST_CASE("mode amplitudes per band")
{
    const ModelParams p{0.0, 1.0, 0.0};
    const auto part = mode_amplitudes(pi / 2, p, Band::Particle);
    CHECK(std::abs(part.u - cplx(std::cos(pi / 4), 0)) < 1e-15);
    CHECK(std::abs(part.v - cplx(0, std::sin(pi / 4))) < 1e-15);
    const auto hole = mode_amplitudes(pi / 2, p, Band::Hole);
    CHECK(std::abs(hole.v - cplx(std::cos(pi / 4), 0)) < 1e-15);
    CHECK(std::abs(hole.u - cplx(0, -std::sin(pi / 4))) < 1e-15);

    const auto trivial = pair_amplitudes(0.0, 0.3, Band::Particle);
    CHECK(trivial.u == cplx(1, 0));
    CHECK(std::abs(trivial.v) == 0.0);
}

TEST_CASE("band flip swaps the moduli")
{
    Sampler s(11);
    for (int i = 0; i < 200; ++i) {
        const double th = s.uniform(-pi, pi), phi = s.uniform(0, pi);
        const auto a = pair_amplitudes(th, phi, Band::Particle);
        const auto b = pair_amplitudes(th, phi, Band::Hole);
        CHECK(std::abs(a.u) == Approx(std::abs(b.v)).epsilon(1e-15));
        CHECK(std::abs(a.v) == Approx(std::abs(b.u)).epsilon(1e-15));
        CHECK(std::norm(a.u) + std::norm(a.v) == Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("ground state layout")
{
    const auto gs = build_ground_state({0.0, 1.0, 0.0}, 8);
    CHECK(gs.k_t == 2);
    REQUIRE(gs.modes.size() == 5);
    CHECK_FALSE(gs.modes.front().paired);
    CHECK_FALSE(gs.modes.back().paired);
    for (const auto& m : gs.modes) {
        if (!m.paired) continue;
        CHECK((m.mode.band == Band::Hole) == (m.mode.k <= 2));
    }
    // lambda < 1: the k = 0 level lies below zero and is filled.
    CHECK(gs.modes.front().mode.band == Band::Hole);
    CHECK(gs.modes.back().mode.band == Band::Particle);

    const auto strong = build_ground_state({0.0, 0.5, 2.0}, 8);
    CHECK(strong.k_t == 0);
    for (const auto& m : strong.modes) CHECK(m.mode.band == Band::Particle);

    CHECK(kind_of([] { build_ground_state({0.0, 0.4, 1.0}, 8); }) == ErrorKind::CriticalPoint);
    CHECK(kind_of([] { build_ground_state({0.0, 0.4, 0.5}, 7); }) == ErrorKind::BadSize);
}

TEST_CASE("normalisation on random samples")
{
    Sampler s(12);
    for (int i = 0; i < 50; ++i) {
        const ModelParams p{s.uniform(0, pi), s.uniform(0.05, 3), s.uniform(0, 3)};
        if (gap(p.gamma, p.lambda) < 1e-3) continue;
        const auto gs = build_ground_state(p, 2 * static_cast<int>(s.uniform(2, 200)));
        CHECK(gs.norm() == Approx(1.0).epsilon(1e-10));
        CHECK(std::abs(overlap(gs, gs) - 1.0) < 1e-10);
    }
}

TEST_CASE("phi period pi")
{
    Sampler s(13);
    for (int i = 0; i < 20; ++i) {
        const ModelParams p{s.uniform(0, pi), s.uniform(0.05, 2), s.uniform(0, 2)};
        if (gap(p.gamma, p.lambda) < 1e-3) continue;
        ModelParams q = p;
        q.phi += pi;
        CHECK(std::abs(overlap(build_ground_state(p, 64), build_ground_state(q, 64))) == Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("overlap examples")
{
    // Single mode at theta = pi/2: cos^2(pi/4) + e^{-i pi} sin^2(pi/4) = 0.
    const auto a = pair_amplitudes(pi / 2, 0.0, Band::Particle);
    const auto b = pair_amplitudes(pi / 2, pi / 2, Band::Particle);
    CHECK(std::abs(mode_overlap(a, b)) < 1e-15);

    const auto s0 = build_ground_state({0.0, 1.0, 0.0}, 8);
    const auto s1 = build_ground_state({0.0, 1.0, 0.1}, 8);
    CHECK(kind_of([&] { overlap(s0, s1); }) == ErrorKind::BandMismatch);
    CHECK(std::abs(overlap(s0, s1, OverlapPolicy::FixedBasis)) < 1.0);

    const auto t0 = build_ground_state({0.0, 0.5, 1.5}, 8);
    const auto t1 = build_ground_state({0.0, 0.5, 1.6}, 8);
    const double m = std::abs(overlap(t0, t1));
    CHECK(m < 1.0);
    CHECK(m > 0.9);
    CHECK(kind_of([&] { overlap(t0, build_ground_state({0.0, 0.5, 1.5}, 10)); }) == ErrorKind::GridMismatch);
}

TEST_CASE("overlap modulus agrees with the embedded Fock vectors")
{
    const ModelParams p{0.2, 0.6, 1.4}, q{0.5, 0.7, 1.8};
    const auto a = build_ground_state(p, 8), b = build_ground_state(q, 8);
    const cvec va = oracle::embed_fock_state(a), vb = oracle::embed_fock_state(b);
    CHECK(std::abs(va.dot(vb) - overlap(a, b)) < 1e-12);
}

TEST_CASE("isotropic ground state")
{
    const auto zero = isotropic_ground_state(0.0, 100);
    REQUIRE(zero.occupation_mask);
    const auto grid = momentum_grid(100);
    int occupied = 0;
    for (std::size_t i = 0; i < grid.k.size(); ++i) {
        const bool in = std::abs(grid.k[i]) <= 25;
        CHECK((*zero.occupation_mask)[i] == in);
        occupied += (*zero.occupation_mask)[i];
    }
    CHECK(occupied == 51);

    const auto strong = isotropic_ground_state(2.0, 100);
    for (bool b : *strong.occupation_mask) CHECK_FALSE(b);

    const auto edge = isotropic_ground_state(1.0, 100);
    for (std::size_t i = 0; i < grid.k.size(); ++i) CHECK((*edge.occupation_mask)[i] == (grid.k[i] == 0));
}

TEST_CASE("isotropic state energy matches exact diagonalisation")
{
    // gamma = 0 conserves the fermion number; with k_T = 1 at N = 8 three
    // fermions fill k = -1, 0, 1 and the state is the periodic-fermion ground state.
    const auto iso = isotropic_ground_state(0.5, 8);
    const cvec v = oracle::embed_fock_state(iso);
    const cmat h = oracle::fermion_hamiltonian_periodic({0.0, 0.0, 0.5}, 8);
    double expect = 0.0;
    for (double a : momentum_grid(8).alpha) expect -= 0.5 * std::abs(0.5 - std::cos(a));
    CHECK(v.dot(h * v).real() == Approx(expect).epsilon(1e-12));
}

TEST_CASE("ground energy")
{
    CHECK(ground_energy({0.0, 1.0, 0.0}, 8) == Approx(-4.0).epsilon(1e-14));
    CHECK(ground_energy_density(1.0, 0.0) == Approx(-0.5).epsilon(1e-13));
    const ModelParams p{0.0, 0.5, 0.5};
    const double ed = oracle::ed_ground(p, 8).energies(0);
    const double ff = oracle::free_fermion_parity_spectrum(p, 8).ground_energy;
    CHECK(ed == Approx(ff).epsilon(1e-12));
    // The product-state energy ignores the parity boundary term: O(1/N) per site.
    CHECK(std::abs(ground_energy(p, 8) - ed) / 8 < 0.05);
}

TEST_CASE("limit states")
{
    const auto z = build_limit_ground_state(0.3, 0.5, 256, GammaLimit::Zero);
    CHECK(z.k_t == fermi_cutoff(0.0, 0.5, 256));
    for (const auto& m : z.modes) CHECK((m.mode.band == Band::Hole) == (m.mode.alpha < std::acos(0.5)));
    const auto inf = build_limit_ground_state(0.3, 0.5, 256, GammaLimit::Infinity);
    CHECK(inf.k_t == 64);
    CHECK(inf.norm() == Approx(1.0));
    // lambda = 0 puts k = N/4 on the Fermi point; the limit is still the
    // small-gamma state.
    const auto f = build_limit_ground_state(0.4, 0.0, 8, GammaLimit::Zero);
    const auto small = build_ground_state({0.4, 1e-9, 0.0}, 8);
    CHECK(std::abs(overlap(f, small, OverlapPolicy::FixedBasis)) == Approx(1.0).epsilon(1e-9));
}
