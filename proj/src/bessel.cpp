#include "casimir/bessel.hpp"

#include <cmath>

namespace casimir {

// K0 and K1 come from the standard library (series-plus-asymptotic,
// full double precision); K2 and K3 follow by upward recurrence
//   K_{n+1}(u) = K_{n-1}(u) + (2n/u) K_n(u),
// which is stable for the second-kind family.
double bessel_k(BesselOrder order, double u)
{
    if (!(u > 0.0))
        throw std::domain_error("bessel_k: argument must be positive");
    if (bessel_k_underflows(u))
        return 0.0;

    const double k0 = std::cyl_bessel_k(0.0, u);
    if (order == BesselOrder::k0)
        return k0;
    const double k1 = std::cyl_bessel_k(1.0, u);
    if (order == BesselOrder::k1)
        return k1;
    const double k2 = k0 + 2.0 * k1 / u;
    if (order == BesselOrder::k2)
        return k2;
    return k1 + 4.0 * k2 / u;
}

} // namespace casimir
