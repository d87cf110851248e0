#pragma once

#include <stdexcept>

namespace casimir {

// Modified Bessel functions of the second kind K_0..K_3, the kernel
// primitives of the closed-form van der Waals expressions.
//
// Arguments beyond the exponential underflow threshold (~u > 705) return 0;
// callers that care can check bessel_k_underflows().

enum class BesselOrder : int { k0 = 0, k1 = 1, k2 = 2, k3 = 3 };

inline constexpr double kBesselUnderflowThreshold = 705.0;

inline bool bessel_k_underflows(double u) { return u > kBesselUnderflowThreshold; }

// K_n(u) for n in {0,1,2,3}, u > 0.  Relative error <= 1e-12 on
// [1e-6, 700].  Throws std::domain_error for u <= 0.
double bessel_k(BesselOrder order, double u);

inline double bessel_k(int order, double u)
{
    if (order < 0 || order > 3)
        throw std::domain_error("bessel_k: order must be in {0,1,2,3}");
    return bessel_k(static_cast<BesselOrder>(order), u);
}

} // namespace casimir
