#pragma once

namespace loopmode {

// Unit calibration for the model.  SI uses CODATA-2018 constants with
// energies in eV, potentials in V and lengths in nm.  PaperEffective
// rescales the wavenumber calibration by exactly 1e-3, which is the
// calibration the published tables are internally consistent with.
enum class ConstantsMode { SI, PaperEffective };

// CODATA 2018
inline constexpr double kElectronMassKg = 9.1093837015e-31;
inline constexpr double kElementaryChargeC = 1.602176634e-19;
inline constexpr double kReducedPlanckJs = 1.054571817e-34;

struct ConstantsProfile {
    double electron_mass;      // kg
    double elementary_charge;  // C
    double reduced_planck;     // J s
    double k0;                 // nm^-1 eV^-1/2, sqrt(2 m e)/hbar
    ConstantsMode mode;
};

ConstantsProfile make_profile(ConstantsMode mode);

// Same profile with k0 multiplied by s.  Used for scale-invariance checks.
ConstantsProfile scaled_profile(const ConstantsProfile& p, double s);

// k = k0 sqrt(E).  Throws std::domain_error for E <= 0.
double wavenumber(const ConstantsProfile& p, double energy_ev);

// beta = k0 sqrt(V - E).  Throws std::domain_error unless 0 < E < V.
double decay_constant(const ConstantsProfile& p, double energy_ev, double potential_v);

}  // namespace loopmode
