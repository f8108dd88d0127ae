#include <xyqpt/model.hpp>
#include <xyqpt/oracle.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace xyqpt::oracle {

// Even fermion number sees antiperiodic fermions (half-integer momenta, all
// paired); odd sees periodic ones, where the self-paired k = 0 and k = N/2
// carry a single fermion each and fix the parity of the BCS vacuum.
ParitySectorResult free_fermion_parity_spectrum(const ModelParams& params, int n_sites)
{
    if (n_sites < 2 || n_sites % 2 != 0 || n_sites > 4096) {
        throw Error(ErrorKind::BadSize, "parity spectrum needs even 2 <= N <= 4096, got " + std::to_string(n_sites));
    }
    const double g = params.gamma, l = params.lambda;
    ParitySectorResult r;
    double even = 0.0, odd = 0.0, cheapest_odd = std::numeric_limits<double>::infinity();
    for (int k = -n_sites / 2; k < n_sites / 2; ++k) {
        const double a = 2.0 * pi * (k + 0.5) / n_sites;
        r.momenta_even.push_back(a);
        even -= 0.5 * dispersion(a, g, l);
    }
    for (int k = -n_sites / 2 + 1; k <= n_sites / 2; ++k) {
        const double a = 2.0 * pi * k / n_sites;
        r.momenta_odd.push_back(a);
        const double e = dispersion(a, g, l);
        odd -= 0.5 * e;
        cheapest_odd = std::min(cheapest_odd, e);
    }
    // Occupied k = 0 makes the integer-momentum vacuum odd; otherwise one
    // quasiparticle has to be added.
    const bool vacuum_odd = l - 1.0 < 0.0;
    if (!vacuum_odd) odd += cheapest_odd;
    r.even_sector_energy = even;
    r.odd_sector_energy = odd;
    r.ground_energy = std::min(even, odd);
    return r;
}

} // namespace xyqpt::oracle
