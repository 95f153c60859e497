#include "geonium/linear_drive.hpp"

#include <cmath>

namespace geonium {

AxialMeanState axial_mean_trajectory(const AxialMeanState& initial,
                                     const QuadratureSetting& quad, double eps_abs,
                                     double wavenumber, double omega_z, double mass,
                                     double t, double hbar) {
    if (omega_z <= 0.0) throw ConfigError("axial_mean_trajectory: omega_z must be positive");
    if (mass <= 0.0) throw ConfigError("axial_mean_trajectory: mass must be positive");
    const double force = -std::sqrt(2.0) * hbar * wavenumber * eps_abs * quad.mean;
    const double z_shift = force / (mass * omega_z * omega_z);
    const double c = std::cos(omega_z * t), s = std::sin(omega_z * t);
    AxialMeanState out;
    out.z = (initial.z - z_shift) * c + initial.p_z / (mass * omega_z) * s + z_shift;
    out.p_z = initial.p_z * c - mass * omega_z * (initial.z - z_shift) * s;
    return out;
}

double linear_momentum_spectrum(double omega, double s_x, double gamma_z, double kb_T,
                                double force_scale, double omega_z, double mass) {
    if (s_x < 0.0) throw ConfigError("linear_momentum_spectrum: S_X must be non-negative");
    if (mass <= 0.0) throw ConfigError("linear_momentum_spectrum: mass must be positive");
    const double re = omega * omega - omega_z * omega_z;
    const double im = omega * gamma_z / mass;
    const double denom = re * re + im * im;
    return (2.0 * force_scale * force_scale * s_x + 2.0 * gamma_z * kb_T) / denom;
}

double observability_ratio(double gamma_z, double temperature, double force_scale,
                           double k_B) {
    if (force_scale <= 0.0)
        throw ConfigError("observability_ratio: force scale hbar k |epsilon| must be positive");
    return gamma_z * k_B * temperature / (force_scale * force_scale);
}

std::vector<MarginalPoint> quadrature_marginal(const CoherentSuperposition& state,
                                               double varphi,
                                               const std::vector<double>& x_grid,
                                               par::Execution exec) {
    if (state.coeffs.empty()) throw ConfigError("quadrature_marginal: empty state");

    // Rotated component amplitudes and the Fock-basis expansion
    // A_j = sum_i c_i e^{-|w_i|^2/2} w_i^j / sqrt(j!), w_i = zeta_i e^{i varphi}.
    const std::size_t ncomp = state.coeffs.size();
    std::vector<cd> rotated(ncomp);
    double lambda_max = 0.0;
    for (std::size_t i = 0; i < ncomp; ++i) {
        rotated[i] = state.amplitudes[i] * std::polar(1.0, varphi);
        lambda_max = std::max(lambda_max, std::norm(rotated[i]));
    }
    const int j_max =
        static_cast<int>(std::ceil(lambda_max + 12.0 * std::sqrt(lambda_max + 1.0) + 30.0));

    std::vector<cd> fock(static_cast<std::size_t>(j_max) + 1, 0.0);
    double total = 0.0;
    for (int j = 0; j <= j_max; ++j) {
        cd a = 0.0;
        for (std::size_t i = 0; i < ncomp; ++i)
            a += state.coeffs[i] * poisson_amplitude(rotated[i], j);
        fock[static_cast<std::size_t>(j)] = a;
        total += std::norm(a);
    }
    if (1.0 - total > 1e-8)
        throw TruncationError("quadrature_marginal: Fock tail weight above 1e-8");

    std::vector<MarginalPoint> out(x_grid.size());
    par::for_each_index(x_grid.size(), exec, [&](std::size_t ix) {
        const double x = x_grid[ix];
        // psi_j(x) by the stable normalized recurrence, accumulated in place.
        double p0 = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
        cd amp = fock[0] * p0;
        if (j_max >= 1) {
            double p1 = std::sqrt(2.0) * x * p0;
            amp += fock[1] * p1;
            for (int j = 1; j < j_max; ++j) {
                double p2 = x * std::sqrt(2.0 / (j + 1.0)) * p1 - std::sqrt(j / (j + 1.0)) * p0;
                p0 = p1;
                p1 = p2;
                amp += fock[static_cast<std::size_t>(j) + 1] * p2;
            }
        }
        out[ix] = {x, std::norm(amp)};
    });
    return out;
}

}  // namespace geonium
