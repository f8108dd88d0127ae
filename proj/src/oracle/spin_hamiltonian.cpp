#include "terms.hpp"

#include <xyqpt/oracle.hpp>

namespace xyqpt::oracle {

namespace {

cmat dense_ring(const detail::RingCoefficients& c, int n_sites)
{
    const detail::state_t dim = detail::state_t{1} << n_sites;
    cmat h = cmat::Zero(dim, dim);
    for (detail::state_t s = 0; s < dim; ++s) {
        detail::apply_ring(c, n_sites, s, [&](detail::state_t t, cplx amp) { h(t, s) += amp; });
    }
    return h;
}

} // namespace

cmat build_spin_hamiltonian(const ModelParams& params, int n_sites)
{
    detail::check_sites(n_sites, kMaxSites);
    return dense_ring(detail::hamiltonian_coefficients(params), n_sites);
}

cmat spin_hamiltonian_derivative(const ModelParams& params, int n_sites, Coord coord)
{
    detail::check_sites(n_sites, kMaxSites);
    return dense_ring(detail::derivative_coefficients(params, coord), n_sites);
}

} // namespace xyqpt::oracle
