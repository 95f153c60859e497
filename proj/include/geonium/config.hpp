#ifndef GEONIUM_CONFIG_HPP
#define GEONIUM_CONFIG_HPP

#include <complex>
#include <optional>
#include <string>

#include "geonium/constants.hpp"
#include "geonium/errors.hpp"

namespace geonium {

using cd = std::complex<double>;

// Gaussian-CGS trap hardware parameters.
struct TrapParameters {
    double charge = 0.0;       // e, esu
    double mass = 0.0;         // m0, g
    double light_speed = 0.0;  // c, cm/s
    double potential = 0.0;    // V0, statvolt
    double trap_size = 0.0;    // d, cm
    double field = 0.0;        // B, gauss
};

struct ModeFrequencies {
    double omega_z = 0.0;  // rad/s
    double omega_c = 0.0;
    double omega_m = 0.0;
};

struct DriveConfig {
    cd alpha = 0.0;            // standing-wave field amplitude
    cd epsilon = 0.0;          // rad/s
    double chi = 0.0;          // rad/s
    double wavenumber = 0.0;   // k, 1/cm
    double standing_phase = 0.0;  // phi, rad
    double drive_frequency = 0.0; // Omega, rad/s
    double kappa_sq = 0.0;     // dimensionless
    double varphi = 0.0;       // arg(epsilon), rad
};

struct DissipationConfig {
    double gamma_c = 0.0;      // 1/s, cyclotron damping
    double Gamma = 0.0;        // 1/s, effective axial damping gamma_z/m0
    double N_th = 0.0;         // thermal occupation
    std::optional<double> temperature;  // K, only for the noise-budget check
    double axial_drive = 0.0;  // f, 1/s
    double d44_scale = 1.0;    // 1 = D44 as printed; 2 = from the xi correlator
};

struct NumericsConfig {
    int grid_points = 161;
    double extent = 8.0;
    int fock_max = 0;          // 0 = choose from the Poisson tail
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_subdiv = 20000;
    double half_width = 8.0;
    int spectrum_points = 2001;
    double peak_prominence = 1e-3;
};

struct ModelConfig {
    std::optional<TrapParameters> trap;
    ModeFrequencies frequencies;
    DriveConfig drive;
    DissipationConfig dissipation;
    double detuning = 0.0;     // Delta = omega_c - Omega, rad/s
    NumericsConfig numerics;
};

// Invariant checks. Throw ConfigError naming the offending key.
void validate(const TrapParameters& trap);
void validate(const ModeFrequencies& freq);
void validate(const DriveConfig& drive);
void validate(const DissipationConfig& diss);
void validate(const NumericsConfig& num);
void validate(const ModelConfig& config);

// Flat key = value text format, '#' comments, complex values as re+imj.
ModelConfig parse_config(const std::string& text);
ModelConfig load_config(const std::string& path);
std::string serialize_config(const ModelConfig& config);

std::string format_complex(cd z);
cd parse_complex(const std::string& text);

}  // namespace geonium

#endif
