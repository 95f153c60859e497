#include "geonium/model.hpp"

#include <cmath>
#include <sstream>

namespace geonium {

ModeFrequencies derive_frequencies(const TrapParameters& trap) {
    validate(trap);
    ModeFrequencies f;
    f.omega_z = std::sqrt(trap.charge * trap.potential /
                          (trap.mass * trap.light_speed * trap.trap_size * trap.trap_size));
    f.omega_c = trap.charge * trap.field / (trap.mass * trap.light_speed);
    f.omega_m = f.omega_z * f.omega_z / (2.0 * f.omega_c);
    if (f.omega_z > f.omega_c) {
        std::ostringstream os;
        os << "hierarchy violation: omega_z=" << f.omega_z << " exceeds omega_c=" << f.omega_c;
        throw ConfigError(os.str());
    }
    return f;
}

DriveConfig derive_drive_couplings(cd alpha, const TrapParameters& trap,
                                   const ModeFrequencies& freq, double wavenumber,
                                   double drive_frequency, double standing_phase,
                                   double hbar) {
    if (trap.mass <= 0.0) throw ConfigError("trap.m0 must be positive");
    if (trap.charge <= 0.0) throw ConfigError("trap.e must be positive");
    if (trap.light_speed <= 0.0) throw ConfigError("trap.c must be positive");
    if (trap.field <= 0.0) throw ConfigError("trap.B must be positive");
    if (freq.omega_z <= 0.0) throw ConfigError("frequencies.omega_z must be positive");
    if (hbar <= 0.0) throw ConfigError("hbar must be positive");
    if (wavenumber < 0.0) throw ConfigError("drive.k must be non-negative");

    const double e = trap.charge, m0 = trap.mass, c = trap.light_speed, B = trap.field;
    DriveConfig d;
    d.alpha = alpha;
    d.epsilon = std::sqrt(2.0 * e * e * e * B / (hbar * m0 * m0 * c * c * c)) * alpha;
    d.chi = e * e / (hbar * m0 * c * c) * std::norm(alpha);
    d.wavenumber = wavenumber;
    d.standing_phase = standing_phase;
    d.drive_frequency = drive_frequency;
    d.kappa_sq = hbar * wavenumber * wavenumber / (2.0 * m0 * freq.omega_z);
    d.varphi = std::arg(alpha);

    const double lhs = 2.0 * freq.omega_c * d.chi;
    const double rhs = std::norm(d.epsilon);
    if (rhs > 0.0 && std::abs(lhs - rhs) > 1e-12 * rhs)
        throw NumericError("drive coupling identity 2 omega_c chi = |epsilon|^2 violated");
    return d;
}

std::pair<double, double> classify_regime(double phi) {
    return {std::cos(phi), -std::sin(phi)};
}

}  // namespace geonium
