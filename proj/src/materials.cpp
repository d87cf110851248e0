#include "casimir/materials.hpp"

#include <sstream>

#include "casimir/constants.hpp"

namespace casimir {

double plasma_wavelength(double omega_p)
{
    if (!(omega_p > 0.0))
        throw std::domain_error("plasma_wavelength: omega_p must be positive");
    return 2.0 * kPi * kSpeedOfLight / omega_p;
}

std::string PermittivityModel::describe() const
{
    std::ostringstream os;
    switch (kind_) {
    case MaterialKind::Plasma:
        os << "plasma(omega_p=" << omega_p_ << ")";
        break;
    case MaterialKind::Constant:
        os << "constant(eps=" << eps_ << ")";
        break;
    case MaterialKind::PerfectConductor:
        os << "perfect";
        break;
    }
    return os.str();
}

} // namespace casimir
