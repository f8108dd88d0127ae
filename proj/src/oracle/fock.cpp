#include "terms.hpp"

#include <xyqpt/oracle.hpp>

#include <optional>
#include <utility>

namespace xyqpt::oracle {

using detail::state_t;

namespace {

// Site l = 1..N lives on bit l-1. a_l^dag empties (flips down) an up spin,
// with the Jordan-Wigner string counting down spins on sites before l.
int string_sign(state_t s, int l)
{
    const state_t below = (state_t{1} << (l - 1)) - 1;
    const int downs = (l - 1) - std::popcount(s & below);
    return downs % 2 == 0 ? 1 : -1;
}

std::optional<std::pair<state_t, int>> create(int l, state_t s)
{
    const state_t bit = state_t{1} << (l - 1);
    if (!(s & bit)) return std::nullopt;
    return std::pair{s & ~bit, string_sign(s, l)};
}

std::optional<std::pair<state_t, int>> annihilate(int l, state_t s)
{
    const state_t bit = state_t{1} << (l - 1);
    if (s & bit) return std::nullopt;
    return std::pair{s | bit, string_sign(s, l)};
}

// d_k^dag psi with alpha = 2 pi k / N.
cvec apply_mode_creation(const cvec& psi, int k, int n_sites)
{
    cvec out = cvec::Zero(psi.size());
    const double alpha = 2.0 * pi * k / n_sites;
    const double norm = 1.0 / std::sqrt(static_cast<double>(n_sites));
    for (int l = 1; l <= n_sites; ++l) {
        const cplx c = std::polar(norm, alpha * l);
        for (Eigen::Index s = 0; s < psi.size(); ++s) {
            if (psi(s) == 0.0) continue;
            if (auto r = create(l, static_cast<state_t>(s))) out(r->first) += c * static_cast<double>(r->second) * psi(s);
        }
    }
    return out;
}

enum class Op { Create, Annihilate };

struct Ladder {
    Op op;
    int site;
};

// Applies ops right to left (ops[1] first) to basis state s.
std::optional<std::pair<state_t, int>> apply_pair(Ladder left, Ladder right, state_t s)
{
    const auto one = [](Ladder x, state_t t) { return x.op == Op::Create ? create(x.site, t) : annihilate(x.site, t); };
    auto r1 = one(right, s);
    if (!r1) return std::nullopt;
    auto r2 = one(left, r1->first);
    if (!r2) return std::nullopt;
    return std::pair{r2->first, r1->second * r2->second};
}

} // namespace

cvec embed_fock_state(const GroundState& state)
{
    const int n = state.n_sites;
    detail::check_sites(n, kMaxSites);
    const state_t dim = state_t{1} << n;
    cvec psi = cvec::Zero(dim);
    psi(dim - 1) = 1.0; // fermion vacuum: all spins up
    for (const auto& m : state.modes) {
        const int k = m.mode.k;
        if (m.paired) {
            const cvec pair = apply_mode_creation(apply_mode_creation(psi, -k, n), k, n);
            psi = m.amp.u * psi + m.amp.v * pair;
        } else {
            psi = m.amp.u * psi + m.amp.v * apply_mode_creation(psi, k, n);
        }
    }
    return psi;
}

cmat fermion_hamiltonian_periodic(const ModelParams& params, int n_sites)
{
    detail::check_sites(n_sites, kMaxSites);
    const state_t dim = state_t{1} << n_sites;
    const cplx e2 = std::polar(1.0, 2.0 * params.phi);
    cmat h = cmat::Zero(dim, dim);
    for (state_t s = 0; s < dim; ++s) {
        const auto add = [&](Ladder a, Ladder b, cplx coeff) {
            if (auto r = apply_pair(a, b, s)) h(r->first, s) += coeff * static_cast<double>(r->second);
        };
        for (int l = 1; l <= n_sites; ++l) {
            const int next = l % n_sites + 1;
            add({Op::Create, next}, {Op::Annihilate, l}, -0.5);
            add({Op::Create, l}, {Op::Annihilate, next}, -0.5);
            add({Op::Annihilate, next}, {Op::Annihilate, l}, -0.5 * params.gamma * e2);
            add({Op::Create, l}, {Op::Create, next}, -0.5 * params.gamma * std::conj(e2));
            // lambda (1 - 2 n_l)
            const bool occupied = !((s >> (l - 1)) & 1u);
            h(s, s) += -0.5 * params.lambda * (occupied ? -1.0 : 1.0);
        }
    }
    return h;
}

} // namespace xyqpt::oracle
