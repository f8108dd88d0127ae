#include "terms.hpp"

#include <xyqpt/oracle.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>

namespace xyqpt::oracle {

using detail::state_t;

namespace {

state_t rotate(state_t s, int t, int n_sites)
{
    const state_t full = (state_t{1} << n_sites) - 1;
    t %= n_sites;
    if (t == 0) return s;
    return ((s << t) | (s >> (n_sites - t))) & full;
}

// Orbits of the translation T (site j -> j+1, i.e. a left bit rotation).
struct Orbits {
    std::vector<state_t> rep;  // representative (smallest member) of each state
    std::vector<int> shift;    // T^shift s = rep
    std::vector<int> period;   // orbit length, valid at representatives
};

Orbits build_orbits(int n_sites)
{
    const state_t dim = state_t{1} << n_sites;
    Orbits o;
    o.rep.resize(dim);
    o.shift.resize(dim);
    o.period.assign(dim, 0);
    for (state_t s = 0; s < dim; ++s) {
        state_t best = s;
        int best_t = 0;
        int period = n_sites;
        for (int t = 1; t < n_sites; ++t) {
            const state_t r = rotate(s, t, n_sites);
            if (r == s && period == n_sites) period = t;
            if (r < best) {
                best = r;
                best_t = t;
            }
        }
        o.rep[s] = best;
        o.shift[s] = best_t;
        if (best == s) o.period[s] = period;
    }
    return o;
}

struct Block {
    int parity = 0;
    int momentum = 0;
    std::vector<state_t> reps;
};

std::vector<Block> build_blocks(const Orbits& o, int n_sites)
{
    std::vector<Block> blocks;
    for (int parity = 0; parity < 2; ++parity) {
        for (int m = 0; m < n_sites; ++m) {
            Block b{parity, m, {}};
            for (state_t s = 0; s < o.rep.size(); ++s) {
                if (o.rep[s] != s || detail::fermion_parity(s, n_sites) != parity) continue;
                if ((m * o.period[s]) % n_sites == 0) b.reps.push_back(s);
            }
            if (!b.reps.empty()) blocks.push_back(std::move(b));
        }
    }
    return blocks;
}

// <b(k)|H|a(k)> = sum over terms H|a> -> c |s>, s = T^{-t} b: c e^{-ikt} sqrt(R_a / R_b).
cmat block_matrix(const Block& b, const Orbits& o, const detail::RingCoefficients& c, int n_sites)
{
    const int dim = static_cast<int>(b.reps.size());
    std::vector<int> index(o.rep.size(), -1);
    for (int i = 0; i < dim; ++i) index[b.reps[i]] = i;
    const double k = 2.0 * pi * b.momentum / n_sites;
    cmat h = cmat::Zero(dim, dim);
    for (int a = 0; a < dim; ++a) {
        const state_t ra = b.reps[a];
        detail::apply_ring(c, n_sites, ra, [&](state_t s, cplx amp) {
            const int bi = index[o.rep[s]];
            if (bi < 0) return;  // orbit incompatible with this momentum
            const double ratio = static_cast<double>(o.period[ra]) / o.period[o.rep[s]];
            h(bi, a) += amp * std::polar(std::sqrt(ratio), -k * o.shift[s]);
        });
    }
    return h;
}

cvec expand_block_vector(const Block& b, const Orbits& o, const cvec& coeffs, int n_sites)
{
    cvec psi = cvec::Zero(static_cast<Eigen::Index>(o.rep.size()));
    const double k = 2.0 * pi * b.momentum / n_sites;
    for (std::size_t a = 0; a < b.reps.size(); ++a) {
        const int period = o.period[b.reps[a]];
        const double norm = 1.0 / std::sqrt(static_cast<double>(period));
        for (int r = 0; r < period; ++r) {
            psi(rotate(b.reps[a], r, n_sites)) += coeffs(a) * std::polar(norm, -k * r);
        }
    }
    return psi;
}

// Largest component real positive; near-ties resolved by lowest index so
// that roundoff cannot move the reference component.
void fix_gauge(Eigen::Ref<cvec> v)
{
    const double top = v.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) >= top * (1.0 - 1e-9)) {
            v *= std::conj(v(i)) / std::abs(v(i));
            return;
        }
    }
}

} // namespace

SpinSpectrum ed_ground(const ModelParams& params, int n_sites)
{
    detail::check_sites(n_sites, kMaxSites);
    const Orbits orbits = build_orbits(n_sites);
    const auto coeffs = detail::hamiltonian_coefficients(params);

    SpinSpectrum out;
    out.n_sites = n_sites;
    std::vector<double> energies;
    energies.reserve(orbits.rep.size());
    double best = std::numeric_limits<double>::infinity();
    for (const Block& b : build_blocks(orbits, n_sites)) {
        const cmat h = block_matrix(b, orbits, coeffs, n_sites);
        Eigen::SelfAdjointEigenSolver<cmat> es(h);
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) energies.push_back(es.eigenvalues()(i));
        if (es.eigenvalues()(0) < best - 1e-13) {
            best = es.eigenvalues()(0);
            out.ground_vector = expand_block_vector(b, orbits, es.eigenvectors().col(0), n_sites);
        }
    }
    std::sort(energies.begin(), energies.end());
    out.energies = Eigen::Map<rvec>(energies.data(), static_cast<Eigen::Index>(energies.size()));
    out.ground_vector.normalize();
    fix_gauge(out.ground_vector);
    return out;
}

SectorEigensystem ground_sector_eigensystem(const ModelParams& params, int n_sites)
{
    detail::check_sites(n_sites, kMaxSites);
    const SpinSpectrum ed = ed_ground(params, n_sites);
    Eigen::Index top = 0;
    ed.ground_vector.cwiseAbs().maxCoeff(&top);
    const int parity = detail::fermion_parity(static_cast<state_t>(top), n_sites);

    const state_t dim = state_t{1} << n_sites;
    std::vector<state_t> basis;
    std::vector<int> index(dim, -1);
    for (state_t s = 0; s < dim; ++s) {
        if (detail::fermion_parity(s, n_sites) != parity) continue;
        index[s] = static_cast<int>(basis.size());
        basis.push_back(s);
    }
    const auto n = static_cast<Eigen::Index>(basis.size());
    cmat h = cmat::Zero(n, n);
    const auto coeffs = detail::hamiltonian_coefficients(params);
    for (Eigen::Index a = 0; a < n; ++a) {
        detail::apply_ring(coeffs, n_sites, basis[a], [&](state_t t, cplx amp) { h(index[t], a) += amp; });
    }
    Eigen::SelfAdjointEigenSolver<cmat> es(h);

    SectorEigensystem sys;
    sys.energies = es.eigenvalues();
    sys.vectors = cmat::Zero(dim, n);
    for (Eigen::Index a = 0; a < n; ++a) sys.vectors.row(basis[a]) = es.eigenvectors().row(a);
    fix_gauge(sys.vectors.col(0));
    sys.global_gap = ed.energies(1) - ed.energies(0);
    return sys;
}

std::vector<QgtTerm> qgt_matrix_elements(const ModelParams& params, int n_sites)
{
    detail::check_sites(n_sites, kMaxSpectralSites);
    const SectorEigensystem sys = ground_sector_eigensystem(params, n_sites);
    if (sys.global_gap < 1e-10) {
        throw Error(ErrorKind::DegenerateGroundState, "E1 - E0 = " + std::to_string(sys.global_gap));
    }
    const cvec psi0 = sys.vectors.col(0);
    // x(m, mu) = <m| d_mu H |0>
    cmat dh_psi = cmat::Zero(psi0.size(), 3);
    for (int mu = 0; mu < 3; ++mu) {
        const auto c = detail::derivative_coefficients(params, static_cast<Coord>(mu));
        for (Eigen::Index s = 0; s < psi0.size(); ++s) {
            if (psi0(s) == 0.0) continue;
            detail::apply_ring(c, n_sites, static_cast<state_t>(s),
                               [&](state_t t, cplx amp) { dh_psi(t, mu) += amp * psi0(s); });
        }
    }
    const cmat x = sys.vectors.adjoint() * dh_psi;

    std::vector<QgtTerm> terms;
    for (Eigen::Index m = 1; m < sys.energies.size(); ++m) {
        const double de = sys.energies(m) - sys.energies(0);
        QgtTerm t;
        t.m = static_cast<int>(m);
        t.excitation = de;
        t.contribution = x.row(m).adjoint() * x.row(m) / (de * de);
        terms.push_back(std::move(t));
    }
    return terms;
}

cmat qgt_ed_finite_diff(const ModelParams& params, int n_sites, double step)
{
    const cvec psi0 = ed_ground(params, n_sites).ground_vector;
    const auto aligned = [&](ModelParams p) {
        cvec v = ed_ground(p, n_sites).ground_vector;
        const cplx o = psi0.dot(v);
        if (std::abs(o) < 1e-12) throw Error(ErrorKind::ZeroOverlap, "ground vector rotated away within one step");
        return cvec(v * (std::conj(o) / std::abs(o)));
    };
    const auto shifted = [&](int mu, double dx) {
        ModelParams p = params;
        (mu == 0 ? p.phi : mu == 1 ? p.gamma : p.lambda) += dx;
        return p;
    };
    // Five-point stencil, O(h^4).
    std::array<cvec, 3> d;
    for (int mu = 0; mu < 3; ++mu) {
        const cvec p1 = aligned(shifted(mu, step)), m1 = aligned(shifted(mu, -step));
        const cvec p2 = aligned(shifted(mu, 2 * step)), m2 = aligned(shifted(mu, -2 * step));
        d[mu] = (8.0 * (p1 - m1) - (p2 - m2)) / (12.0 * step);
    }
    cmat g(3, 3);
    for (int mu = 0; mu < 3; ++mu) {
        for (int nu = 0; nu < 3; ++nu) g(mu, nu) = d[mu].dot(d[nu]) - d[mu].dot(psi0) * psi0.dot(d[nu]);
    }
    return g;
}

} // namespace xyqpt::oracle
