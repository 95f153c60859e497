#include "geonium/cat_states.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace geonium {

namespace {
constexpr double kTailTarget = 1e-8;
}

cd poisson_amplitude(cd beta, int n) {
    if (n == 0) return std::exp(-0.5 * std::norm(beta));
    double mag = std::abs(beta);
    if (mag == 0.0) return 0.0;
    double logmag = -0.5 * std::norm(beta) + n * std::log(mag) - 0.5 * num::log_factorial(n);
    double phase = std::arg(beta) * n;
    return std::exp(logmag) * cd(std::cos(phase), std::sin(phase));
}

cd coherent_overlap(cd zeta_m, cd zeta_n) {
    return std::exp(-0.5 * std::norm(zeta_m) - 0.5 * std::norm(zeta_n) +
                    std::conj(zeta_m) * zeta_n);
}

double normalize_superposition(CoherentSuperposition& state) {
    cd total = 0.0;
    const std::size_t k = state.coeffs.size();
    for (std::size_t m = 0; m < k; ++m)
        for (std::size_t n = 0; n < k; ++n)
            total += std::conj(state.coeffs[m]) * state.coeffs[n] *
                     coherent_overlap(state.amplitudes[m], state.amplitudes[n]);
    double norm2 = total.real();
    if (!(norm2 > 0.0))
        throw DegenerateOutcomeError("superposition has zero norm");
    double n = 1.0 / std::sqrt(norm2);
    for (auto& c : state.coeffs) c *= n;
    state.norm_constant = n;
    return n;
}

int poisson_truncation(cd beta, double tail) {
    double lambda = std::norm(beta);
    double term = std::exp(-lambda);
    double cum = term;
    int n = 0;
    while (1.0 - cum > tail && n < 4000) {
        ++n;
        term *= lambda / n;
        cum += term;
    }
    return n;
}

// ---------------------------------------------------------------------------

EntangledExpansion central_resonance_expansion(cd beta, cd epsilon, double kappa_sq,
                                               double t, int n_max) {
    if (n_max == 0) n_max = 2 * std::max(poisson_truncation(beta, kTailTarget), 4);
    if (n_max < 0) throw ConfigError("central_resonance_expansion: negative truncation");

    EntangledExpansion e;
    e.beta = beta;
    e.epsilon = epsilon;
    e.kappa_sq = kappa_sq;
    e.time = t;
    e.n_max = n_max;
    e.weights.resize(static_cast<std::size_t>(n_max) + 1);
    e.zetas.resize(static_cast<std::size_t>(n_max) + 1);
    double sum = 0.0;
    const cd theta_unit = cd(0.0, 1.0) * epsilon * kappa_sq;  // theta_n = i eps k^2 n
    for (int n = 0; n <= n_max; ++n) {
        e.weights[static_cast<std::size_t>(n)] = poisson_amplitude(beta, n);
        e.zetas[static_cast<std::size_t>(n)] = theta_unit * static_cast<double>(n) * t;
        sum += std::norm(e.weights[static_cast<std::size_t>(n)]);
    }
    e.tail_weight = 1.0 - sum;
    if (e.tail_weight > kTailTarget) {
        std::ostringstream os;
        os << "central_resonance_expansion: truncation tail " << e.tail_weight
           << " above 1e-8 at n_max=" << n_max << "; increase the truncation";
        throw TruncationError(os.str());
    }
    e.disregarded_displacement = -cd(0.0, 1.0) * epsilon * (1.0 - kappa_sq / 2.0) * t;
    return e;
}

CoherentSuperposition condition_on_momentum(const EntangledExpansion& exp, double p_z,
                                            PhaseConvention conv) {
    CoherentSuperposition s;
    const std::size_t k = exp.weights.size();
    s.coeffs.resize(k);
    s.amplitudes = exp.zetas;
    double max_abs = 0.0;
    for (std::size_t n = 0; n < k; ++n) {
        double psi = num::hermite_function(static_cast<int>(n), p_z);
        cd phase = 1.0;
        if (conv == PhaseConvention::standard) {
            switch (n % 4) {  // (-i)^n
                case 0: phase = {1.0, 0.0}; break;
                case 1: phase = {0.0, -1.0}; break;
                case 2: phase = {-1.0, 0.0}; break;
                default: phase = {0.0, 1.0}; break;
            }
        }
        s.coeffs[n] = exp.weights[n] * phase * psi;
        max_abs = std::max(max_abs, std::abs(s.coeffs[n]));
    }
    if (max_abs < 1e-200)
        throw DegenerateOutcomeError("condition_on_momentum: probability-zero outcome");
    normalize_superposition(s);
    return s;
}

double most_probable_momentum(const EntangledExpansion& exp) {
    const int n_max = exp.n_max;
    auto marginal = [&](double p) {
        double m = 0.0;
        for (int n = 0; n <= n_max; ++n) {
            double psi = num::hermite_function(n, p);
            m += std::norm(exp.weights[static_cast<std::size_t>(n)]) * psi * psi;
        }
        return m;
    };
    // Dense scan; the marginal support is a few oscillator widths.
    double span = std::sqrt(2.0 * n_max + 1.0) + 2.0;
    const int samples = 4001;
    double best_p = 0.0, best_v = -1.0;
    for (int i = 0; i < samples; ++i) {
        double p = -span + 2.0 * span * i / (samples - 1);
        double v = marginal(p);
        // deterministic tie-break toward smaller |P_z|
        if (v > best_v * (1.0 + 1e-12) ||
            (std::abs(v - best_v) <= 1e-12 * best_v && std::abs(p) < std::abs(best_p))) {
            best_v = v;
            best_p = p;
        }
    }
    // Golden-section refinement around the best sample.
    double h = 2.0 * span / (samples - 1);
    double a = best_p - h, b = best_p + h;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = marginal(c), fd = marginal(d);
    for (int it = 0; it < 200 && (b - a) > 1e-12; ++it) {
        if (fc > fd) {
            b = d; d = c; fd = fc;
            c = b - gr * (b - a);
            fc = marginal(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + gr * (b - a);
            fd = marginal(d);
        }
    }
    double p = 0.5 * (a + b);
    // The marginal is even; report the non-negative representative.
    return std::abs(p) < 1e-9 ? 0.0 : std::abs(p);
}

// ---------------------------------------------------------------------------

namespace {

// Eq.-style cross kernel for |zeta_n><zeta_m| at phase-space point (Q, P).
inline cd wigner_cross_term(cd zn, cd zm, double q, double p) {
    const double s2 = M_SQRT2;
    cd ex = -q * q - p * p - 0.5 * std::norm(zm) - 0.5 * std::norm(zn) +
            s2 * q * (zn + std::conj(zm)) - s2 * cd(0.0, 1.0) * p * (zn - std::conj(zm)) -
            zn * std::conj(zm);
    return std::exp(ex);
}

struct ComplexGridResult {
    std::vector<cd> values;
    double imag_residual = 0.0;
};

WignerGrid realize_grid(const WignerAxes& axes, std::vector<cd>&& values,
                        bool renormalize, const char* what) {
    WignerGrid w;
    w.grid = num::Grid2D::make(axes.q_min, axes.q_max, axes.nq, axes.p_min, axes.p_max, axes.np);
    double imag_max = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        imag_max = std::max(imag_max, std::abs(values[i].imag()));
        w.grid.values[i] = values[i].real();
    }
    w.imag_residual = imag_max;
    if (imag_max > 1e-10)
        throw NumericError(std::string(what) + ": imaginary residual above 1e-10");

    w.integral_raw = num::grid_integral(w.grid);
    if (renormalize) {
        if (!(w.integral_raw > 0.0))
            throw NumericError(std::string(what) + ": non-positive grid mass");
        for (double& v : w.grid.values) v /= w.integral_raw;
        w.norm_factor = w.integral_raw;
    }

    // Boundary containment: the grid must hold the state.
    double wmax = 0.0;
    for (double v : w.grid.values) wmax = std::max(wmax, std::abs(v));
    double boundary = 0.0;
    const std::size_t nq = w.grid.q_axis.size(), np = w.grid.p_axis.size();
    for (std::size_t j = 0; j < np; ++j) {
        boundary = std::max(boundary, std::abs(w.grid.at(0, j)));
        boundary = std::max(boundary, std::abs(w.grid.at(nq - 1, j)));
    }
    for (std::size_t i = 0; i < nq; ++i) {
        boundary = std::max(boundary, std::abs(w.grid.at(i, 0)));
        boundary = std::max(boundary, std::abs(w.grid.at(i, np - 1)));
    }
    if (boundary > 1e-6 * wmax) {
        std::ostringstream os;
        os << what << ": grid too small, boundary |W| = " << boundary << " vs max " << wmax;
        throw GridDomainError(os.str());
    }
    return w;
}

}  // namespace

WignerGrid wigner_of_superposition(const CoherentSuperposition& state,
                                   const WignerAxes& axes, par::Execution exec) {
    const std::size_t k = state.coeffs.size();
    if (k == 0) throw ConfigError("wigner_of_superposition: empty state");
    std::vector<cd> values(axes.nq * axes.np);
    const std::size_t np = axes.np;
    par::for_each_index(axes.nq, exec, [&](std::size_t iq) {
        double q = axes.q_min + (axes.q_max - axes.q_min) * static_cast<double>(iq) /
                                    static_cast<double>(axes.nq - 1);
        for (std::size_t ip = 0; ip < np; ++ip) {
            double p = axes.p_min + (axes.p_max - axes.p_min) * static_cast<double>(ip) /
                                        static_cast<double>(np - 1);
            cd sum = 0.0;
            for (std::size_t m = 0; m < k; ++m)
                for (std::size_t n = 0; n < k; ++n)
                    sum += std::conj(state.coeffs[m]) * state.coeffs[n] *
                           wigner_cross_term(state.amplitudes[n], state.amplitudes[m], q, p);
            values[iq * np + ip] = sum / M_PI;
        }
    });
    return realize_grid(axes, std::move(values), true, "wigner_of_superposition");
}

KerrParams effective_kerr_constant(double eps_abs, double kappa_sq, double delta,
                                   double omega_z) {
    if (delta == 0.0) throw ConfigError("effective_kerr_constant: delta must be nonzero");
    KerrParams k;
    k.eps_abs = eps_abs;
    k.kappa_sq = kappa_sq;
    k.delta = delta;
    k.G = eps_abs * eps_abs * kappa_sq * kappa_sq / (4.0 * delta);
    k.adiabaticity = omega_z > 0.0 ? std::abs(delta) / omega_z : 0.0;
    return k;
}

FockExpansion kerr_evolve(cd beta, double G, double t, int n_max) {
    if (n_max == 0) n_max = std::max(poisson_truncation(beta, 1e-12) + 10, 16);
    FockExpansion f;
    f.coeffs.resize(static_cast<std::size_t>(n_max) + 1);
    double sum = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        double phase = G * t * (static_cast<double>(n) * n - n);
        f.coeffs[static_cast<std::size_t>(n)] =
            poisson_amplitude(beta, n) * cd(std::cos(phase), std::sin(phase));
        sum += std::norm(f.coeffs[static_cast<std::size_t>(n)]);
    }
    f.tail_weight = 1.0 - sum;
    if (f.tail_weight > kTailTarget)
        throw TruncationError("kerr_evolve: truncation tail above 1e-8; increase n_max");
    double scale = 1.0 / std::sqrt(sum);
    for (auto& c : f.coeffs) c *= scale;
    return f;
}

CoherentSuperposition yurke_stoler_cat(cd beta) {
    CoherentSuperposition s;
    const double r = 1.0 / std::sqrt(2.0);
    s.coeffs = {r * std::polar(1.0, M_PI / 4.0), r * std::polar(1.0, -M_PI / 4.0)};
    s.amplitudes = {-cd(0.0, 1.0) * beta, cd(0.0, 1.0) * beta};
    normalize_superposition(s);
    return s;
}

cd overlap(const CoherentSuperposition& state, const FockExpansion& fock) {
    // <state|fock> = sum_n conj(<n|state>) ... expand each coherent component.
    cd result = 0.0;
    for (std::size_t n = 0; n < fock.coeffs.size(); ++n) {
        cd state_n = 0.0;
        for (std::size_t j = 0; j < state.coeffs.size(); ++j)
            state_n += state.coeffs[j] * poisson_amplitude(state.amplitudes[j], static_cast<int>(n));
        result += std::conj(state_n) * fock.coeffs[n];
    }
    return result;
}

WignerGrid wigner_ys_cat(cd beta, const WignerAxes& axes, par::Execution exec) {
    const double b2 = std::norm(beta);
    const double br = beta.real(), bi = beta.imag();
    const double s2 = 2.0 * M_SQRT2;
    std::vector<cd> values(axes.nq * axes.np);
    const std::size_t np = axes.np;
    par::for_each_index(axes.nq, exec, [&](std::size_t iq) {
        double z = axes.q_min + (axes.q_max - axes.q_min) * static_cast<double>(iq) /
                                    static_cast<double>(axes.nq - 1);
        for (std::size_t ip = 0; ip < np; ++ip) {
            double p = axes.p_min + (axes.p_max - axes.p_min) * static_cast<double>(ip) /
                                        static_cast<double>(np - 1);
            double w = (1.0 / M_PI) * std::exp(-b2 - z * z - p * p) *
                       (std::exp(-b2) * std::cosh(s2 * p * br - s2 * z * bi) +
                        std::exp(b2) * std::sin(s2 * p * bi + s2 * z * br));
            values[iq * np + ip] = w;
        }
    });
    WignerGrid w = realize_grid(axes, std::move(values), false, "wigner_ys_cat");
    w.q_label = "Z";
    w.p_label = "P_z";
    return w;
}

}  // namespace geonium
