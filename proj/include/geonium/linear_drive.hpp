#ifndef GEONIUM_LINEAR_DRIVE_HPP
#define GEONIUM_LINEAR_DRIVE_HPP

#include <vector>

#include "geonium/cat_states.hpp"
#include "geonium/config.hpp"
#include "geonium/parallel.hpp"

namespace geonium {

struct AxialMeanState {
    double z = 0.0;    // cm
    double p_z = 0.0;  // g cm/s
};

struct QuadratureSetting {
    double varphi = 0.0;
    double mean = 0.0;  // X-bar, dimensionless
};

// Mean axial motion under the linear (phi = pi/2) standing-wave channel:
// a shifted harmonic oscillation with constant force F = -sqrt(2) hbar k
// |epsilon| X-bar, the undamped limit of the thermal equations of motion.
AxialMeanState axial_mean_trajectory(const AxialMeanState& initial,
                                     const QuadratureSetting& quad, double eps_abs,
                                     double wavenumber, double omega_z, double mass,
                                     double t, double hbar = kHbarCgs);

// Driven-damped axial momentum noise spectrum,
//   [2 (hbar k |eps|)^2 S_X + 2 gamma_z kB T] / |w^2 - w_z^2 - i w gamma_z/m0|^2.
// force_scale is hbar k |epsilon|; kb_T the Johnson noise temperature scale.
double linear_momentum_spectrum(double omega, double s_x, double gamma_z, double kb_T,
                                double force_scale, double omega_z, double mass);

// r = gamma_z kB T / (hbar k |eps|)^2; r << 1 means the thermal floor does not
// mask the cyclotron vacuum noise.
double observability_ratio(double gamma_z, double temperature, double force_scale,
                           double k_B = kBoltzmannCgs);

struct MarginalPoint {
    double x;
    double density;
};

// Quadrature marginal P(X) of a superposition of coherent states, computed by
// expanding each component in the Fock basis rotated by varphi and projecting
// onto the oscillator eigenfunctions.
std::vector<MarginalPoint> quadrature_marginal(const CoherentSuperposition& state,
                                               double varphi,
                                               const std::vector<double>& x_grid,
                                               par::Execution exec = par::Execution::parallel);

}  // namespace geonium

#endif
