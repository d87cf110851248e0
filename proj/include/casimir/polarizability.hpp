#pragma once

#include <array>

#include "casimir/materials.hpp"

namespace casimir {

// 3x3 symmetric polarizability tensor of a prolate spheroid at arbitrary
// orientation.  Stored as the six independent components; symmetry holds
// by construction.
struct PolarizabilityTensor {
    double xx = 0, yy = 0, zz = 0, xy = 0, xz = 0, yz = 0;

    double trace() const { return xx + yy + zz; }

    // (m, n) entry, m and n in {0,1,2} for {x,y,z}
    double operator()(int m, int n) const
    {
        static constexpr int idx[3][3] = {{0, 3, 4}, {3, 1, 5}, {4, 5, 2}};
        const double* c[6] = {&xx, &yy, &zz, &xy, &xz, &yz};
        return *c[idx[m][n]];
    }
};

// Depolarizing factor d(r) of a prolate spheroid with aspect ratio r >= 1.
// d(1) = 1/3 (sphere), d -> 0 as r -> infinity (needle).  The closed form
// is 0/0 at r = 1; a series in r^2 - 1 takes over near the sphere limit.
double depolarizing_factor(double r);

struct PrincipalPolarizabilities {
    double parallel;  // along the spheroid axis
    double normal;
};

// Clausius-Mossotti-type principal polarizabilities of the spheroid,
// in SI (units of eps0 * m^3).  eps_p may be the infinite marker.
PrincipalPolarizabilities principal_polarizabilities(const Permittivity& eps_p,
                                                     double volume, double d);

// Rotate the principal polarizabilities to spherical orientation angles
// (theta, phi) of the spheroid axis.
PolarizabilityTensor oriented_tensor(double alpha_par, double alpha_perp,
                                     double theta, double phi);

// Spheroidal particle: geometry, material and orientation.
struct ParticleModel {
    double aspect_ratio = 1.0;  // r >= 1
    double volume = 0.0;        // m^3
    PermittivityModel material = PermittivityModel::perfect_conductor();
    double theta = 0.0;         // polar angle of the axis, rad
    double phi = 0.0;           // azimuthal angle, rad

    void validate() const;

    // alpha_mn(i xi), SI
    PolarizabilityTensor tensor_at(double xi) const;

    // dimensionless tensor alpha_mn(i xi)/(eps0 V)
    PolarizabilityTensor reduced_tensor_at(double xi) const;

    // static limit alpha_mn(0)/(eps0 V)
    PolarizabilityTensor reduced_static_tensor() const;
};

} // namespace casimir
