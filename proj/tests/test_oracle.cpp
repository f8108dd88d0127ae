#include "sampling.hpp"

#include <xyqpt/geometry.hpp>
#include <xyqpt/oracle.hpp>

#include <Eigen/Eigenvalues>
#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>

using namespace xyqpt;
using namespace xyqpt::oracle;
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

rvec dense_spectrum(const cmat& h)
{
    return Eigen::SelfAdjointEigenSolver<cmat>(h, Eigen::EigenvaluesOnly).eigenvalues();
}

} // namespace

TEST_CASE("two-site ring by hand")
{
    // Both bonds of the N = 2 ring join the same pair of sites, so every
    // coupling doubles. Basis |s1 s2| with bit 0 = site 1.
    const double g = 0.6, l = 0.3, phi = 0.2;
    const cmat h = build_spin_hamiltonian({phi, g, l}, 2);
    REQUIRE(h.rows() == 4);
    CHECK(h(3, 3).real() == Approx(-l));
    CHECK(h(0, 0).real() == Approx(l));
    CHECK(std::abs(h(1, 1)) < 1e-15);
    CHECK(h(1, 2).real() == Approx(-1.0));
    CHECK(std::abs(h(3, 0) - cplx(-g) * std::polar(1.0, 2 * phi)) < 1e-15);

    // Sectors: {|01>,|10>} gives -1, +1; {|00>,|11>} gives +-sqrt(l^2 + g^2).
    rvec expected(4);
    expected << -std::sqrt(l * l + g * g), -1.0, 1.0, std::sqrt(l * l + g * g);
    std::sort(expected.begin(), expected.end());
    CHECK((dense_spectrum(h) - expected).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("spin Hamiltonian is Hermitian and phi only rotates it")
{
    Sampler s(41);
    for (int n : {3, 4, 7}) {
        const ModelParams p{s.uniform(0, pi), s.uniform(0, 2), s.uniform(0, 2)};
        const cmat h = build_spin_hamiltonian(p, n);
        CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() == 0.0);
        const rvec e0 = dense_spectrum(build_spin_hamiltonian({0.0, p.gamma, p.lambda}, n));
        CHECK((dense_spectrum(h) - e0).cwiseAbs().maxCoeff() < 1e-12);
    }
    CHECK(kind_of([] { build_spin_hamiltonian({}, 13); }) == ErrorKind::SizeLimit);
    CHECK(kind_of([] { build_spin_hamiltonian({}, 1); }) == ErrorKind::SizeLimit);
}

TEST_CASE("derivative operators")
{
    const ModelParams p{0.3, 0.7, 0.4};
    const int n = 5;
    const double h = 1e-6;
    const auto shifted = [&](Coord c, double d) {
        ModelParams q = p;
        (c == Coord::Phi ? q.phi : c == Coord::Gamma ? q.gamma : q.lambda) += d;
        return build_spin_hamiltonian(q, n);
    };
    for (Coord c : {Coord::Phi, Coord::Gamma, Coord::Lambda}) {
        const cmat fd = (shifted(c, h) - shifted(c, -h)) / (2 * h);
        CHECK((spin_hamiltonian_derivative(p, n, c) - fd).cwiseAbs().maxCoeff() < 1e-8);
    }
    // dH/dlambda = -1/2 sum_j sigma^z_j is diagonal with -(ups - downs)/2.
    const cmat dl = spin_hamiltonian_derivative(p, n, Coord::Lambda);
    for (int b = 0; b < (1 << n); ++b) CHECK(dl(b, b).real() == Approx(-0.5 * (2 * std::popcount(unsigned(b)) - n)));
}

TEST_CASE("block diagonalisation reproduces the dense spectrum")
{
    Sampler s(42);
    for (int n : {2, 3, 5, 8}) {
        const ModelParams p{s.uniform(0, pi), s.uniform(0, 2), s.uniform(0, 2)};
        const auto ed = ed_ground(p, n);
        CHECK((ed.energies - dense_spectrum(build_spin_hamiltonian(p, n))).cwiseAbs().maxCoeff() < 1e-12);
        const cmat h = build_spin_hamiltonian(p, n);
        CHECK(ed.ground_vector.norm() == Approx(1.0).epsilon(1e-13));
        CHECK((h * ed.ground_vector - ed.energies(0) * ed.ground_vector).norm() < 1e-10);
    }
}

TEST_CASE("exact ground energy equals the parity-sector free-fermion energy")
{
    Sampler s(43);
    for (int n : {4, 6, 8, 10}) {
        for (int i = 0; i < 8; ++i) {
            const ModelParams p{s.uniform(0, pi), s.uniform(0, 2), s.uniform(0, 2)};
            const double ed = ed_ground(p, n).energies(0);
            CHECK(std::abs(ed - free_fermion_parity_spectrum(p, n).ground_energy) < 1e-10);
        }
    }
}

TEST_CASE("parity sectors")
{
    const auto r = free_fermion_parity_spectrum({0.0, 1.0, 0.5}, 8);
    CHECK(r.momenta_even.size() == 8);
    CHECK(r.momenta_odd.size() == 8);
    CHECK(r.momenta_even.front() == Approx(-7 * pi / 8));
    CHECK(r.ground_energy == std::min(r.even_sector_energy, r.odd_sector_energy));
    CHECK(kind_of([] { free_fermion_parity_spectrum({}, 7); }) == ErrorKind::BadSize);
    CHECK(kind_of([] { free_fermion_parity_spectrum({}, 0); }) == ErrorKind::BadSize);
    CHECK_NOTHROW(free_fermion_parity_spectrum({}, 4096));
}

TEST_CASE("strong field polarises the chain")
{
    const auto ed = ed_ground({0.0, 0.5, 50.0}, 8);
    CHECK(std::norm(ed.ground_vector((1 << 8) - 1)) > 0.99);
}

TEST_CASE("finite-size gaps at gamma = 1")
{
    const auto gap_at = [](double l) {
        const auto e = ed_ground({0.0, 1.0, l}, 10).energies;
        return e(1) - e(0);
    };
    // Ordered side: the two parity ground states are split only by tunnelling.
    CHECK(gap_at(0.3) < 1e-4);
    // Disordered side: the gap opens with the field.
    CHECK(gap_at(1.0) < gap_at(1.4));
    CHECK(gap_at(1.4) < gap_at(2.0));
}

TEST_CASE("Jordan-Wigner map on the odd-fermion subspace")
{
    const int n = 6;
    const ModelParams p{0.4, 0.8, 0.3};
    const cmat diff = build_spin_hamiltonian(p, n) - fermion_hamiltonian_periodic(p, n);
    // One down spin is one fermion; odd down-spin counts are odd sectors.
    double odd = 0.0, even = 0.0;
    for (int a = 0; a < (1 << n); ++a) {
        for (int b = 0; b < (1 << n); ++b) {
            const int downs = n - std::popcount(unsigned(a));
            (downs % 2 ? odd : even) = std::max(downs % 2 ? odd : even, std::abs(diff(a, b)));
        }
    }
    CHECK(odd < 1e-14);
    CHECK(even > 0.5);
}

TEST_CASE("embedded product state is an exact eigenvector without holes")
{
    // No holes above the field: every pair sits in its own ground state of
    // the periodic fermion Hamiltonian.
    const ModelParams p{0.3, 0.7, 1.6};
    const auto gs = build_ground_state(p, 8);
    REQUIRE(gs.k_t == 0);
    const cvec v = embed_fock_state(gs);
    CHECK(v.norm() == Approx(1.0).epsilon(1e-12));
    const cmat hf = fermion_hamiltonian_periodic(p, 8);
    CHECK((hf * v - ground_energy(p, 8) * v).norm() < 1e-10);
}

TEST_CASE("wilson loop")
{
    const ModelParams p{0.0, 0.6, 0.4};
    const std::vector<ModelParams> still(5, p);
    CHECK(wilson_loop_berry_phase(still, 16) == 0.0);

    // phi circle at fixed gamma: product of per-pair phases, computed from
    // the amplitudes directly.
    const int m = 200, n = 16;
    std::vector<ModelParams> circle;
    for (int i = 0; i < m; ++i) circle.push_back({i * pi / m, 0.6, 1.5});
    const GroundState g0 = build_ground_state(circle[0], n);
    cplx expected{1.0, 0.0};
    for (const auto& e : g0.modes) {
        const double s2 = std::pow(std::sin(e.mode.theta / 2), 2);
        const cplx step = (1.0 - s2) + s2 * std::polar(1.0, -2 * pi / m * (e.mode.band == Band::Particle ? 1 : -1));
        expected *= std::pow(step / std::abs(step), m);
    }
    CHECK(wilson_loop_berry_phase(circle, n) == Approx(std::arg(expected)).epsilon(1e-10));
}

TEST_CASE("wilson loop gauge invariance and flux")
{
    const double h = 0.05;
    const std::vector<ModelParams> square = {
        {0.2, 0.7, 1.4}, {0.2 + h, 0.7, 1.4}, {0.2 + h, 0.7 + h, 1.4}, {0.2, 0.7 + h, 1.4}};
    const int n = 8;
    std::vector<cvec> vs;
    for (const auto& p : square) vs.push_back(ed_ground(p, n).ground_vector);
    const double ref = wilson_loop_phase(std::span<const cvec>(vs));
    Sampler s(44);
    for (auto& v : vs) v *= std::polar(1.0, s.uniform(-pi, pi));
    CHECK(wilson_loop_phase(std::span<const cvec>(vs)) == Approx(ref).epsilon(1e-12));
    CHECK(wilson_loop_berry_phase_ed(square, n) == Approx(ref).epsilon(1e-12));
    // Product-state loop against curvature times area.
    const double flux = berry_curvature_sum({0.2 + h / 2, 0.7 + h / 2, 1.4}, 64).imag() * 64 / (2 * pi) * h * h;
    CHECK(wilson_loop_berry_phase(square, 64) == Approx(flux).epsilon(0.01));

    const cvec a = cvec::Unit(4, 0), b = cvec::Unit(4, 1);
    const std::vector<cvec> orth = {a, b};
    CHECK(kind_of([&] { wilson_loop_phase(std::span<const cvec>(orth)); }) == ErrorKind::ZeroOverlap);
}

TEST_CASE("spectral QGT terms")
{
    CHECK(kind_of([] { qgt_matrix_elements({0.0, 0.5, 0.5}, 12); }) == ErrorKind::SizeLimit);

    const ModelParams p{0.3, 0.8, 0.4};
    const auto terms = qgt_matrix_elements(p, 6);
    REQUIRE(!terms.empty());
    for (const auto& t : terms) {
        CHECK(t.excitation > 0.0);
        CHECK((t.contribution - t.contribution.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    }
    // Against the finite-difference tensor of the exact ground vector.
    cmat sum = cmat::Zero(3, 3);
    for (const auto& t : terms) sum += t.contribution;
    CHECK((sum - qgt_ed_finite_diff(p, 6)).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("spectral QGT refuses a degenerate ground state")
{
    // gamma = 1, lambda = 0 on six sites: even and odd sectors tie.
    const auto e = ed_ground({0.0, 1.0, 0.0}, 6).energies;
    REQUIRE(e(1) - e(0) < 1e-10);
    CHECK(kind_of([] { qgt_matrix_elements({0.0, 1.0, 0.0}, 6); }) == ErrorKind::DegenerateGroundState);
}

TEST_CASE("spectral metric grows towards the transition")
{
    double prev = 0.0;
    for (double l : {0.3, 0.6, 0.8, 0.95}) {
        const double g = qgt_spectral({0.0, 1.0, l}, 8).g(2, 2).real();
        CHECK(g > prev);
        prev = g;
    }
}
