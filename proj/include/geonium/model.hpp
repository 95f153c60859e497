#ifndef GEONIUM_MODEL_HPP
#define GEONIUM_MODEL_HPP

#include <utility>

#include "geonium/config.hpp"

namespace geonium {

// Mode frequencies from the trap hardware, Gaussian-CGS convention
// (the axial formula keeps the factor of c):
//   omega_z = sqrt(e V0 / (m0 c d^2)),  omega_c = e B / (m0 c),
//   omega_m = omega_z^2 / (2 omega_c).
ModeFrequencies derive_frequencies(const TrapParameters& trap);

// Drive couplings from the field amplitude alpha:
//   epsilon = sqrt(2 e^3 B / (hbar m0^2 c^3)) alpha,
//   chi     = (e^2 / (hbar m0 c^2)) |alpha|^2,
//   kappa^2 = hbar k^2 / (2 m0 omega_z),
//   varphi  = arg alpha.
// The identity 2 omega_c chi = |epsilon|^2 is checked to 1e-12 relative.
DriveConfig derive_drive_couplings(cd alpha, const TrapParameters& trap,
                                   const ModeFrequencies& freq, double wavenumber,
                                   double drive_frequency, double standing_phase,
                                   double hbar = kHbarCgs);

// Weights of the two coupling channels of the standing wave split
// cos(k z + phi) = cos(phi) cos(k z) - sin(phi) sin(k z):
// first = cos(phi) (quadratic channel), second = -sin(phi) (linear channel).
std::pair<double, double> classify_regime(double phi);

}  // namespace geonium

#endif
