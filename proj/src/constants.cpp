#include "loopmode/constants.hpp"

#include <cmath>
#include <stdexcept>

namespace loopmode {

ConstantsProfile make_profile(ConstantsMode mode) {
    ConstantsProfile p;
    p.electron_mass = kElectronMassKg;
    p.elementary_charge = kElementaryChargeC;
    p.reduced_planck = kReducedPlanckJs;
    p.mode = mode;
    // sqrt(2 m e)/hbar is in m^-1 eV^-1/2; 1e-9 converts to nm^-1.
    const double k0_si =
        std::sqrt(2.0 * p.electron_mass * p.elementary_charge) / p.reduced_planck * 1e-9;
    p.k0 = (mode == ConstantsMode::SI) ? k0_si : k0_si * 1e-3;
    return p;
}

ConstantsProfile scaled_profile(const ConstantsProfile& p, double s) {
    if (!(s > 0.0)) throw std::domain_error("profile scale factor must be positive");
    ConstantsProfile q = p;
    q.k0 *= s;
    return q;
}

double wavenumber(const ConstantsProfile& p, double energy_ev) {
    if (!(energy_ev > 0.0)) throw std::domain_error("energy must be positive");
    return p.k0 * std::sqrt(energy_ev);
}

double decay_constant(const ConstantsProfile& p, double energy_ev, double potential_v) {
    if (!(energy_ev > 0.0)) throw std::domain_error("energy must be positive");
    if (!(energy_ev < potential_v))
        throw std::domain_error("energy must be below barrier potential");
    return p.k0 * std::sqrt(potential_v - energy_ev);
}

}  // namespace loopmode
