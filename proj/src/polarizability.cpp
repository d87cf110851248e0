#include "casimir/polarizability.hpp"

#include <cmath>

#include "casimir/constants.hpp"

namespace casimir {

double depolarizing_factor(double r)
{
    if (!(r >= 1.0))
        throw std::domain_error("depolarizing_factor: oblate (r < 1) not supported");
    const double t = r * r - 1.0;
    if (t < 2e-4) {
        // series in t = r^2 - 1; truncation error < 1e-16 here
        return 1.0 / 3.0 + t * (-2.0 / 15.0 + t * (8.0 / 105.0 + t * (-16.0 / 315.0 + t * (128.0 / 3465.0))));
    }
    const double s = std::sqrt(t);
    return -1.0 / t + r * std::log((r + s) / (r - s)) / (2.0 * t * s);
}

PrincipalPolarizabilities principal_polarizabilities(const Permittivity& eps_p,
                                                     double volume, double d)
{
    if (!(volume > 0.0))
        throw std::invalid_argument("principal_polarizabilities: volume must be positive");
    if (!(d > 0.0 && d <= 1.0 / 3.0))
        throw std::invalid_argument("principal_polarizabilities: d out of (0, 1/3]");
    const double e0V = kVacuumPermittivity * volume;
    if (eps_p.infinite)
        return {e0V / d, 2.0 * e0V / (1.0 - d)};
    const double em1 = eps_p.minus_one;
    return {e0V * em1 / (1.0 + em1 * d),
            e0V * em1 / (1.0 + 0.5 * em1 * (1.0 - d))};
}

PolarizabilityTensor oriented_tensor(double alpha_par, double alpha_perp,
                                     double theta, double phi)
{
    // snap rounding residue of the trig factors so that the special
    // orientations (axis along a coordinate axis / in a coordinate plane)
    // produce exact structural zeros in the off-diagonal entries
    auto snap = [](double x) { return std::fabs(x) < 4e-16 ? 0.0 : x; };
    const double da = alpha_par - alpha_perp;
    const double st = snap(std::sin(theta)), ct = snap(std::cos(theta));
    const double sp = snap(std::sin(phi)), cp = snap(std::cos(phi));
    const double s2t = snap(std::sin(2.0 * theta));
    const double s2p = snap(std::sin(2.0 * phi));
    PolarizabilityTensor a;
    a.xx = alpha_perp + da * st * st * cp * cp;
    a.yy = alpha_perp + da * st * st * sp * sp;
    a.zz = alpha_perp + da * ct * ct;
    a.xy = 0.5 * da * s2p * st * st;
    a.xz = 0.5 * da * s2t * cp;
    a.yz = 0.5 * da * s2t * sp;
    return a;
}

void ParticleModel::validate() const
{
    if (!(aspect_ratio >= 1.0))
        throw std::invalid_argument("particle: aspect ratio must be >= 1");
    if (!(volume > 0.0))
        throw std::invalid_argument("particle: volume must be positive");
    if (!(theta >= 0.0 && theta <= kPi))
        throw std::invalid_argument("particle: theta out of [0, pi]");
}

PolarizabilityTensor ParticleModel::tensor_at(double xi) const
{
    const double d = depolarizing_factor(aspect_ratio);
    const auto p = principal_polarizabilities(material.at(xi), volume, d);
    return oriented_tensor(p.parallel, p.normal, theta, phi);
}

PolarizabilityTensor ParticleModel::reduced_tensor_at(double xi) const
{
    PolarizabilityTensor a = tensor_at(xi);
    const double n = 1.0 / (kVacuumPermittivity * volume);
    a.xx *= n; a.yy *= n; a.zz *= n; a.xy *= n; a.xz *= n; a.yz *= n;
    return a;
}

PolarizabilityTensor ParticleModel::reduced_static_tensor() const
{
    const double d = depolarizing_factor(aspect_ratio);
    const auto p = principal_polarizabilities(material.at(0.0), volume, d);
    const double n = 1.0 / (kVacuumPermittivity * volume);
    return oriented_tensor(p.parallel * n, p.normal * n, theta, phi);
}

} // namespace casimir
