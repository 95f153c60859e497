#include "geonium/decoherence.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace geonium {

namespace {

void check_bath(const BathParams& bath) {
    if (bath.Gamma < 0.0) throw ConfigError("bath.Gamma must be non-negative");
    if (bath.tau < 0.0) throw ConfigError("bath.tau must be non-negative");
    if (bath.N_th < 0.0) throw ConfigError("bath.N_th must be non-negative");
}

double b_tilde(const BathParams& bath) {
    const double e2 = std::exp(-2.0 * bath.Gamma * bath.tau);
    return e2 + 2.0 * bath.N_th * (1.0 - e2);
}

}  // namespace

ABCCoefficients abc_coefficients(cd beta, const BathParams& bath, double Z, double P_z) {
    check_bath(bath);
    const double G = bath.Gamma, tau = bath.tau, nth = bath.N_th;
    if (G <= 0.0) throw ConfigError("abc_coefficients: Gamma must be positive");
    const double eG = std::exp(-G * tau);
    const double e2G = std::exp(-2.0 * G * tau);

    ABCCoefficients co;
    co.A = (eG - 1.0) * (eG - 1.0) / (G * G) + 1.0 + 2.0 * nth / (G * G) * (1.0 - e2G) -
           8.0 * nth / (G * G) * (1.0 - eG) + 4.0 * nth / G * tau;
    co.B = e2G + 2.0 * nth * (1.0 - e2G);
    co.C = -(2.0 / G) * eG * (eG - 1.0) - 4.0 * nth / G * (1.0 - e2G) +
           8.0 * nth / G * (1.0 - eG);

    const double disc = 4.0 * co.A * co.B - co.C * co.C;
    if (disc <= 0.0) {
        std::ostringstream os;
        os << "abc_coefficients: 4AB - C^2 = " << disc << " is not positive";
        throw NumericError(os.str());
    }
    co.near_degenerate = disc < 1e-12;

    const double br = beta.real(), bi = beta.imag();
    const double s2 = std::sqrt(2.0);
    const cd i(0.0, 1.0);
    // The Gamma-dependent drift terms carry 2 sqrt(2)/Gamma (direct Gaussian
    // reduction of the characteristics solution; see the oracle test).
    const double g2 = 2.0 * s2 / G;
    co.D[0] = -2.0 * s2 * i * bi - g2 * i * br * eG + g2 * i * br + 2.0 * i * Z;
    co.D[1] = +2.0 * s2 * i * bi + g2 * i * br * eG - g2 * i * br + 2.0 * i * Z;
    co.D[2] = -2.0 * s2 * br + g2 * bi * eG - g2 * bi + 2.0 * i * Z;
    co.D[3] = +2.0 * s2 * br - g2 * bi * eG + g2 * bi + 2.0 * i * Z;
    co.E[0] = -2.0 * s2 * i * br * eG - 2.0 * i * P_z;
    co.E[1] = +2.0 * s2 * i * br * eG - 2.0 * i * P_z;
    co.E[2] = +2.0 * s2 * bi * eG - 2.0 * i * P_z;
    co.E[3] = -2.0 * s2 * bi * eG - 2.0 * i * P_z;
    return co;
}

cd characteristics_propagate(const std::function<cd(double, double)>& initial,
                             double q, double v, const BathParams& bath) {
    check_bath(bath);
    if (bath.Gamma <= 0.0)
        throw ConfigError(
            "characteristics_propagate: the closed-form solution divides by Gamma; "
            "Gamma = 0 is unsupported (use a small positive Gamma)");
    const double G = bath.Gamma, tau = bath.tau, nth = bath.N_th;
    const double eG = std::exp(-G * tau);
    const double e2G = std::exp(-2.0 * G * tau);
    const double a = v + q / G;
    const double v0 = a * eG - q / G;
    const double damping = -2.0 * nth * a * a * (1.0 - e2G) +
                           8.0 * nth / G * q * a * (1.0 - eG) - 4.0 * q * q * nth * tau / G;
    return initial(q, v0) * std::exp(damping);
}

cd initial_transform_central(const EntangledExpansion& exp, double Q, double Y,
                             double q, double v) {
    // Coherent-state position wavefunction <x|zeta>, dimensionless convention.
    auto coh = [](double x, cd zeta) {
        return std::pow(M_PI, -0.25) *
               std::exp(-0.5 * x * x + std::sqrt(2.0) * zeta * x - 0.5 * zeta * zeta -
                        0.5 * std::norm(zeta));
    };
    const int n_max = exp.n_max;
    std::vector<cd> c(static_cast<std::size_t>(n_max) + 1);
    for (int m = 0; m <= n_max; ++m) {
        double lognorm = -0.5 * (m * std::log(2.0) + num::log_factorial(m));
        c[static_cast<std::size_t>(m)] = std::pow(M_PI, -0.25) * std::exp(lognorm) *
                                         exp.weights[static_cast<std::size_t>(m)] *
                                         coh(Q + Y, exp.zetas[static_cast<std::size_t>(m)]);
    }
    std::vector<cd> cbar(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
        double lognorm = -0.5 * (n * std::log(2.0) + num::log_factorial(n));
        cbar[static_cast<std::size_t>(n)] =
            std::pow(M_PI, -0.25) * std::exp(lognorm) *
            std::conj(exp.weights[static_cast<std::size_t>(n)]) *
            std::conj(coh(Q - Y, exp.zetas[static_cast<std::size_t>(n)]));
    }

    const double r2 = 2.0 * (v * v + q * q);
    const cd base = std::sqrt(M_PI) * std::exp(-v * v - q * q);
    const cd mvq(-v, -q);  // (-v - i q)
    cd sum = 0.0;
    for (int m = 0; m <= n_max; ++m) {
        for (int n = 0; n <= n_max; ++n) {
            const cd cc = c[static_cast<std::size_t>(m)] * cbar[static_cast<std::size_t>(n)];
            if (std::abs(cc) < 1e-300) continue;
            if (m < n) {
                double pref = std::exp((n) * std::log(2.0) + num::log_factorial(m));
                sum += cc * pref * std::pow(mvq, n - m) *
                       num::assoc_laguerre(m, n - m, r2);
            } else if (m == n) {
                double pref = std::exp(n * std::log(2.0) + num::log_factorial(n));
                sum += cc * pref * num::assoc_laguerre(m, 0, r2);
            } else {
                double pref = std::exp(m * std::log(2.0) + num::log_factorial(n));
                sum += cc * pref * std::pow(mvq, m - n) *
                       num::assoc_laguerre(n, m - n, r2);
            }
        }
    }
    return base * sum;
}

cd imn_integral(int m, int n, double p_z, const BathParams& bath,
                const num::QuadratureSpec& spec) {
    check_bath(bath);
    if (m < 0 || n < 0) throw ConfigError("imn_integral: negative index");
    if (n < m) return std::conj(imn_integral(n, m, p_z, bath, spec));

    const double eG = std::exp(-bath.Gamma * bath.tau);
    const double bt = b_tilde(bath);
    if (!(bt > 0.0)) throw NumericError("imn_integral: vanishing Gaussian width");
    const int k = n - m;

    num::QuadratureSpec local = spec;
    local.half_width = std::max(spec.half_width, std::sqrt((k + 60.0) / bt));

    const double pref = std::exp(n * std::log(2.0) + num::log_factorial(m));
    auto integrand = [&](double v) -> cd {
        const double gauss = std::exp(-bt * v * v);
        const double poly = num::assoc_laguerre(m, k, 2.0 * v * v * eG * eG);
        double power = 1.0;
        if (k > 0) power = std::pow(-v * eG, k);
        const double phase = -2.0 * p_z * v;
        return gauss * poly * power * cd(std::cos(phase), std::sin(phase));
    };
    return pref * num::integrate_line(integrand, local);
}

namespace {

WignerGrid realize_normalized(const WignerAxes& axes, std::vector<cd>&& values,
                              double imag_tol, const char* what) {
    WignerGrid w;
    w.grid = num::Grid2D::make(axes.q_min, axes.q_max, axes.nq, axes.p_min, axes.p_max, axes.np);
    // Imaginary residual is checked relative to the peak magnitude: the raw
    // sums here carry arbitrary overall normalization.
    double imag_max = 0.0, mag_max = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        imag_max = std::max(imag_max, std::abs(values[i].imag()));
        mag_max = std::max(mag_max, std::abs(values[i]));
        w.grid.values[i] = values[i].real();
    }
    w.imag_residual = mag_max > 0.0 ? imag_max / mag_max : 0.0;
    if (w.imag_residual > imag_tol)
        throw NumericError(std::string(what) + ": imaginary residual above tolerance");
    w.integral_raw = num::grid_integral(w.grid);
    if (!(w.integral_raw > 0.0))
        throw NumericError(std::string(what) + ": non-positive grid mass");
    for (double& v : w.grid.values) v /= w.integral_raw;
    w.norm_factor = w.integral_raw;
    return w;
}

}  // namespace

WignerGrid decohered_conditional_wigner(const EntangledExpansion& exp, double p_z,
                                        const BathParams& bath, const WignerAxes& axes,
                                        const num::QuadratureSpec& spec,
                                        par::Execution exec) {
    const int n_max = exp.n_max;
    const std::size_t dim = static_cast<std::size_t>(n_max) + 1;

    // I_{m,n} table, Hermitian by construction.
    std::vector<cd> itab(dim * dim);
    for (int m = 0; m <= n_max; ++m)
        for (int n = m; n <= n_max; ++n) {
            cd v = imn_integral(m, n, p_z, bath, spec);
            itab[static_cast<std::size_t>(m) * dim + static_cast<std::size_t>(n)] = v;
            itab[static_cast<std::size_t>(n) * dim + static_cast<std::size_t>(m)] = std::conj(v);
        }

    // Combined coefficient beta^m/m! (beta*)^n/n! 2^{-(m+n)/2} I_{m,n}.
    std::vector<cd> coef(dim * dim);
    for (int m = 0; m <= n_max; ++m) {
        cd bm = m == 0 ? cd(1.0)
                       : std::pow(std::abs(exp.beta), m) *
                             std::polar(1.0, std::arg(exp.beta) * m);
        for (int n = 0; n <= n_max; ++n) {
            cd bn = n == 0 ? cd(1.0)
                           : std::pow(std::abs(exp.beta), n) *
                                 std::polar(1.0, -std::arg(exp.beta) * n);
            double logw = -num::log_factorial(m) - num::log_factorial(n) -
                          0.5 * (m + n) * std::log(2.0);
            coef[static_cast<std::size_t>(m) * dim + static_cast<std::size_t>(n)] =
                bm * bn * std::exp(logw) *
                itab[static_cast<std::size_t>(m) * dim + static_cast<std::size_t>(n)];
        }
    }

    std::vector<cd> values(axes.nq * axes.np);
    const std::size_t np = axes.np;
    par::for_each_index(axes.nq, exec, [&](std::size_t iq) {
        double q = axes.q_min + (axes.q_max - axes.q_min) * static_cast<double>(iq) /
                                    static_cast<double>(axes.nq - 1);
        for (std::size_t ip = 0; ip < np; ++ip) {
            double p = axes.p_min + (axes.p_max - axes.p_min) * static_cast<double>(ip) /
                                        static_cast<double>(np - 1);
            cd sum = 0.0;
            for (int m = 0; m <= n_max; ++m) {
                const cd zm = exp.zetas[static_cast<std::size_t>(m)];
                for (int n = 0; n <= n_max; ++n) {
                    const cd zn = exp.zetas[static_cast<std::size_t>(n)];
                    cd ex = -q * q - p * p - 0.5 * std::norm(zm) - 0.5 * std::norm(zn) +
                            M_SQRT2 * q * (zm + std::conj(zn)) -
                            M_SQRT2 * cd(0.0, 1.0) * p * (zm - std::conj(zn)) -
                            zm * std::conj(zn);
                    sum += coef[static_cast<std::size_t>(m) * dim +
                                static_cast<std::size_t>(n)] *
                           std::exp(ex);
                }
            }
            values[iq * np + ip] = sum;
        }
    });
    return realize_normalized(axes, std::move(values), 1e-8, "decohered_conditional_wigner");
}

WignerGrid decohered_cat_wigner(cd beta, const BathParams& bath, const WignerAxes& axes,
                                par::Execution exec) {
    check_bath(bath);
    const double b2 = std::norm(beta);
    const double br = beta.real(), bi = beta.imag();
    const cd pref = 0.5 * std::exp(-b2 + 0.5 * beta * beta +
                                   0.5 * std::conj(beta) * std::conj(beta));
    std::vector<cd> values(axes.nq * axes.np);
    const std::size_t np = axes.np;
    par::for_each_index(axes.nq, exec, [&](std::size_t iq) {
        double z = axes.q_min + (axes.q_max - axes.q_min) * static_cast<double>(iq) /
                                    static_cast<double>(axes.nq - 1);
        for (std::size_t ip = 0; ip < np; ++ip) {
            double p = axes.p_min + (axes.p_max - axes.p_min) * static_cast<double>(ip) /
                                        static_cast<double>(np - 1);
            ABCCoefficients co = abc_coefficients(beta, bath, z, p);
            const double disc = 4.0 * co.A * co.B - co.C * co.C;
            auto I = [&](int i) {
                return 2.0 / (M_PI * std::sqrt(disc)) *
                       std::exp((co.B * co.D[static_cast<std::size_t>(i)] *
                                     co.D[static_cast<std::size_t>(i)] +
                                 co.C * co.D[static_cast<std::size_t>(i)] *
                                     co.E[static_cast<std::size_t>(i)] +
                                 co.A * co.E[static_cast<std::size_t>(i)] *
                                     co.E[static_cast<std::size_t>(i)]) /
                                disc);
            };
            // The fringe pair enters with +i (tied to the cat phases the Kerr
            // evolution actually produces; checked against the oracle).
            cd w = pref * (std::exp(2.0 * bi * bi) * (I(0) + I(1)) +
                           cd(0.0, 1.0) * std::exp(-2.0 * br * br) * (I(2) - I(3)));
            values[iq * np + ip] = w;
        }
    });
    WignerGrid w = realize_normalized(axes, std::move(values), 1e-8, "decohered_cat_wigner");
    w.q_label = "Z";
    w.p_label = "P_z";
    return w;
}

cd cat_initial_transform(cd beta, double q, double v) {
    const double br = beta.real(), bi = beta.imag();
    const double s2 = 2.0 * std::sqrt(2.0);
    const cd i(0.0, 1.0);
    const cd glob = 0.5 * std::exp(-std::norm(beta) - q * q - v * v + 0.5 * beta * beta +
                                   0.5 * std::conj(beta) * std::conj(beta));
    const cd t1 = std::exp(cd(2.0 * bi * bi, -s2 * bi * q - s2 * br * v));
    const cd t2 = std::exp(cd(2.0 * bi * bi, s2 * bi * q + s2 * br * v));
    const cd t3 = std::exp(cd(-2.0 * br * br - s2 * br * q + s2 * bi * v, 0.0));
    const cd t4 = std::exp(cd(-2.0 * br * br + s2 * br * q - s2 * bi * v, 0.0));
    // Cross terms carry +i / -i for the cat the Kerr evolution reaches.
    return glob * (t1 + t2 + i * t3 - i * t4);
}

WignerGrid decohered_cat_oracle(cd beta, const BathParams& bath, const WignerAxes& axes,
                                const num::QuadratureSpec& spec, par::Execution exec) {
    check_bath(bath);
    if (bath.Gamma <= 0.0)
        throw ConfigError("decohered_cat_oracle: Gamma must be positive");

    const std::function<cd(double, double)> initial = [beta](double q, double v) {
        return cat_initial_transform(beta, q, v);
    };

    // q decay: e^{-q^2} times e^{-4 q^2 Nth tau / Gamma}; v decay through the
    // flowed initial Gaussian plus the thermal factor.
    num::QuadratureSpec inner = spec;
    const double bt = b_tilde(bath);
    inner.half_width =
        std::max(spec.half_width, 9.0 / std::sqrt(std::min(1.0, bt)) + std::abs(beta) * 4.0);
    num::QuadratureSpec outer = spec;
    outer.half_width = std::max(spec.half_width, 9.0 + std::abs(beta) * 2.0);

    std::vector<cd> values(axes.nq * axes.np);
    const std::size_t np = axes.np;
    par::for_each_index(axes.nq, exec, [&](std::size_t iq) {
        double z = axes.q_min + (axes.q_max - axes.q_min) * static_cast<double>(iq) /
                                    static_cast<double>(axes.nq - 1);
        for (std::size_t ip = 0; ip < np; ++ip) {
            double p = axes.p_min + (axes.p_max - axes.p_min) * static_cast<double>(ip) /
                                        static_cast<double>(np - 1);
            auto outer_f = [&](double q) -> cd {
                auto inner_f = [&](double v) -> cd {
                    const double phase = -2.0 * p * v;
                    return characteristics_propagate(initial, q, v, bath) *
                           cd(std::cos(phase), std::sin(phase));
                };
                cd iv = num::integrate_line(inner_f, inner);
                const double phase = 2.0 * q * z;
                return iv * cd(std::cos(phase), std::sin(phase));
            };
            values[iq * np + ip] = num::integrate_line(outer_f, outer) / (M_PI * M_PI);
        }
    });
    WignerGrid w = realize_normalized(axes, std::move(values), 1e-8, "decohered_cat_oracle");
    w.q_label = "Z";
    w.p_label = "P_z";
    return w;
}

}  // namespace geonium
