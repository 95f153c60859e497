#include "geonium/steady_state.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace geonium {

namespace {

struct ScalarProblem {
    double omega_z, f, kappa_sq, eta;
    // g(Z) = f - [omega_z + eta (1 - kappa^2 Z^2)] Z; eta = 4 k^2 Delta |e|^2/|D|^2
    double operator()(double z) const {
        return f - (omega_z + eta * (1.0 - kappa_sq * z * z)) * z;
    }
    double derivative(double z) const {
        return -(omega_z + eta) + 3.0 * eta * kappa_sq * z * z;
    }
};

double coupling_eta(const ModelConfig& c) {
    const double gc = c.dissipation.gamma_c;
    const double delta = c.detuning;
    const double denom = 0.25 * gc * gc + delta * delta;
    if (denom == 0.0) return 0.0;  // undamped resonant drive: handled by caller
    return 4.0 * c.drive.kappa_sq * delta * std::norm(c.drive.epsilon) / denom;
}

// All roots of g in [lo, hi] from a dense scan plus bisection/Newton polish.
std::vector<double> bracket_roots(const ScalarProblem& g, double lo, double hi) {
    std::vector<double> roots;
    if (!(hi > lo)) return roots;
    const int n = 4096;
    double x0 = lo, g0 = g(x0);
    for (int i = 1; i <= n; ++i) {
        double x1 = lo + (hi - lo) * static_cast<double>(i) / n;
        double g1 = g(x1);
        if (g0 == 0.0) roots.push_back(x0);
        if ((g0 < 0.0 && g1 > 0.0) || (g0 > 0.0 && g1 < 0.0)) {
            double a = x0, b = x1, ga = g0;
            for (int it = 0; it < 200; ++it) {
                double m = 0.5 * (a + b), gm = g(m);
                if (gm == 0.0) { a = b = m; break; }
                if ((ga < 0.0) == (gm < 0.0)) { a = m; ga = gm; }
                else b = m;
            }
            double r = 0.5 * (a + b);
            for (int it = 0; it < 50; ++it) {  // Newton polish
                double d = g.derivative(r);
                if (d == 0.0) break;
                double step = g(r) / d;
                double next = r - step;
                if (next < lo || next > hi) break;
                r = next;
                if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(r))) break;
            }
            roots.push_back(r);
        }
        x0 = x1;
        g0 = g1;
    }
    if (g0 == 0.0) roots.push_back(x0);
    std::sort(roots.begin(), roots.end());
    // merge duplicates
    std::vector<double> out;
    for (double r : roots)
        if (out.empty() || std::abs(r - out.back()) > 1e-9 * std::max(1.0, std::abs(r)))
            out.push_back(r);
    return out;
}

cd alpha_of_z(const ModelConfig& c, double z) {
    const cd denom(0.5 * c.dissipation.gamma_c, c.detuning);
    if (std::abs(denom) == 0.0) {
        if (std::abs(c.drive.epsilon) * std::abs(1.0 - c.drive.kappa_sq * z * z) == 0.0)
            return 0.0;
        throw SteadyStateError(
            "steady state undefined: gamma_c = Delta = 0 with a nonzero drive");
    }
    return -cd(0.0, 1.0) * c.drive.epsilon * (1.0 - c.drive.kappa_sq * z * z) / denom;
}

}  // namespace

SteadyState solve_steady_state(const ModelConfig& config) {
    validate(config);
    const double omega_z = config.frequencies.omega_z;
    const double f = config.dissipation.axial_drive;
    const double kappa_sq = config.drive.kappa_sq;
    if (omega_z <= 0.0) throw ConfigError("frequencies.omega_z must be positive");

    SteadyState ss;
    const double linear_root = f / omega_z;

    const double eta_full = coupling_eta(config);
    if (kappa_sq == 0.0 || std::abs(config.drive.epsilon) == 0.0 || eta_full == 0.0 ||
        f == 0.0) {
        // Decoupled, undriven, or Delta = 0 limits: the scalar equation is
        // linear in Z.
        ss.Z_bar = (f == 0.0) ? 0.0 : linear_root;
    } else {
        const double lo = std::min(0.0, 2.0 * linear_root);
        const double hi = std::max(0.0, 2.0 * linear_root);
        ScalarProblem g{omega_z, f, kappa_sq, eta_full};
        std::vector<double> roots = bracket_roots(g, lo, hi);
        if (roots.empty()) {
            std::ostringstream os;
            os << "no steady-state root in the bracket [" << lo << ", " << hi
               << "]; scalar equation values: g(lo)=" << g(lo) << ", g(mid)=" << g(0.5 * (lo + hi))
               << ", g(hi)=" << g(hi)
               << " (the quadratic coupling has folded away the weak-coupling branch)";
            throw SteadyStateError(os.str());
        }
        ss.root_count = static_cast<int>(roots.size());

        // Continuation from the kappa -> 0 root: scale the coupling up in
        // steps, tracking the nearest root of the rescaled equation.
        double z = linear_root;
        const int steps = 64;
        bool lost = false;
        for (int k = 1; k <= steps && !lost; ++k) {
            double s = static_cast<double>(k) / steps;
            ScalarProblem gs{omega_z, f, s * kappa_sq, s * eta_full};
            std::vector<double> rs = bracket_roots(gs, lo, hi);
            if (rs.empty()) { lost = true; break; }
            double best = rs.front();
            for (double r : rs)
                if (std::abs(r - z) < std::abs(best - z)) best = r;
            if (std::abs(best - z) > 0.5 * std::max(std::abs(linear_root), std::abs(z))) {
                lost = true;
                break;
            }
            z = best;
        }
        if (lost) {
            std::ostringstream os;
            os << "steady-state branch connected to Z=f/omega_z is lost at a fold; "
               << ss.root_count << " root(s) remain in the bracket";
            throw SteadyStateError(os.str());
        }
        // snap to the polished root list
        double best = roots.front();
        for (double r : roots)
            if (std::abs(r - z) < std::abs(best - z)) best = r;
        ss.Z_bar = best;
    }

    ss.P_bar = 0.0;
    ss.alpha_c = alpha_of_z(config, ss.Z_bar);

    // Scaled residuals of the four stationarity relations.
    const cd denom(0.5 * config.dissipation.gamma_c, config.detuning);
    const cd r1 = -denom * ss.alpha_c -
                  cd(0.0, 1.0) * config.drive.epsilon * (1.0 - kappa_sq * ss.Z_bar * ss.Z_bar);
    const cd r2 = -std::conj(denom) * std::conj(ss.alpha_c) +
                  cd(0.0, 1.0) * std::conj(config.drive.epsilon) *
                      (1.0 - kappa_sq * ss.Z_bar * ss.Z_bar);
    const double quad = 2.0 * (std::conj(config.drive.epsilon) * ss.alpha_c).real();
    const double r4 = -(omega_z - 2.0 * kappa_sq * quad) * ss.Z_bar + f;
    const double s1 = std::max({std::abs(denom) * std::abs(ss.alpha_c),
                                std::abs(config.drive.epsilon) *
                                    (1.0 + kappa_sq * ss.Z_bar * ss.Z_bar),
                                1e-300});
    const double s4 = std::max({omega_z * std::abs(ss.Z_bar),
                                2.0 * kappa_sq * std::abs(quad) * std::abs(ss.Z_bar),
                                std::abs(f), 1e-300});
    ss.residuals = {std::abs(r1) / s1, std::abs(r2) / s1, 0.0, std::abs(r4) / s4};
    for (double r : ss.residuals)
        if (r > 1e-10) {
            std::ostringstream os;
            os << "steady-state residual " << r << " above 1e-10";
            throw SteadyStateError(os.str());
        }
    return ss;
}

DriftMatrix build_drift(const ModelConfig& config, const SteadyState& ss,
                        DriftProvenance provenance) {
    const double gc = config.dissipation.gamma_c;
    const double delta = config.detuning;
    const double omega_z = config.frequencies.omega_z;
    const double Gamma = config.dissipation.Gamma;
    const double k2 = config.drive.kappa_sq;
    const cd eps = config.drive.epsilon;
    const cd i(0.0, 1.0);
    const double quad = (std::conj(eps) * ss.alpha_c + eps * std::conj(ss.alpha_c)).real();

    DriftMatrix d;
    d.provenance = provenance;
    num::ComplexMatrix4& m = d.m;
    m(0, 0) = -cd(0.5 * gc, delta);
    m(0, 2) = 2.0 * i * eps * k2 * ss.Z_bar;
    m(1, 1) = -cd(0.5 * gc, -delta);
    m(1, 2) = -2.0 * i * std::conj(eps) * k2 * ss.Z_bar;
    m(2, 3) = omega_z;
    const double sign = provenance == DriftProvenance::paper_verbatim ? -1.0 : 1.0;
    m(3, 0) = sign * 2.0 * std::conj(eps) * k2 * ss.Z_bar;
    m(3, 1) = sign * 2.0 * eps * k2 * ss.Z_bar;
    m(3, 2) = -omega_z + 2.0 * k2 * quad;
    m(3, 3) = -Gamma;
    return d;
}

DiffusionMatrix build_diffusion(const ModelConfig& config) {
    DiffusionMatrix d;
    d.m(0, 1) = config.dissipation.gamma_c;
    d.m(3, 3) = config.dissipation.Gamma * config.dissipation.N_th *
                config.dissipation.d44_scale;
    return d;
}

num::ComplexMatrix4 spectral_matrix(const DriftMatrix& drift, const DiffusionMatrix& diff,
                                    double omega) {
    const cd iw(0.0, omega);
    num::ComplexMatrix4 a;  // i w I - M
    num::ComplexMatrix4 b;  // -i w I - M, for the transposed solve
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            a(r, c) = (r == c ? iw : cd(0.0)) - drift.m(r, c);
            b(r, c) = (r == c ? -iw : cd(0.0)) - drift.m(r, c);
        }
    // X = (i w I - M)^{-1} D, column by column.
    num::ComplexMatrix4 x;
    for (int c = 0; c < 4; ++c) {
        num::Vec4 col{diff.m(0, c), diff.m(1, c), diff.m(2, c), diff.m(3, c)};
        num::Vec4 sol = solve4(a, col);
        for (int r = 0; r < 4; ++r) x(r, c) = sol[static_cast<std::size_t>(r)];
    }
    // S solves S (-i w I - M^T) = X, i.e. (-i w I - M) S^T = X^T.
    num::ComplexMatrix4 st;
    for (int c = 0; c < 4; ++c) {
        num::Vec4 col{x(c, 0), x(c, 1), x(c, 2), x(c, 3)};
        num::Vec4 sol = solve4(b, col);
        for (int r = 0; r < 4; ++r) st(r, c) = sol[static_cast<std::size_t>(r)];
    }
    return st.transpose();
}

StabilityReport stability(const DriftMatrix& drift) {
    StabilityReport rep;
    rep.eigenvalues = num::eigenvalues4(drift.m);
    const double scale = std::max(1.0, drift.m.max_abs());
    rep.stable = true;
    for (const cd& l : rep.eigenvalues) {
        if (!(l.real() < 0.0)) rep.stable = false;
        if (std::abs(l.real()) <= 1e-10 * scale) rep.marginal = true;
    }
    if (rep.marginal) rep.stable = false;
    return rep;
}

std::vector<double> spectrum_window(const std::vector<DriftMatrix>& drifts,
                                    int backbone_points) {
    std::vector<std::pair<double, double>> resonances;  // (frequency, width)
    for (const DriftMatrix& d : drifts) {
        for (const cd& l : num::eigenvalues4(d.m))
            if (l.imag() > 0.0)
                resonances.emplace_back(l.imag(), std::max(std::abs(l.real()), 1e-3));
    }
    if (resonances.empty()) throw NumericError("spectrum_window: no positive resonance");
    std::vector<double> pts;
    double fmin = resonances.front().first, fmax = fmin;
    for (auto [freq, width] : resonances) {
        fmin = std::min(fmin, freq);
        fmax = std::max(fmax, freq);
        double half = std::max(60.0 * width, 500.0);
        for (int i = 0; i < 600; ++i)
            pts.push_back(freq - half + 2.0 * half * i / 599.0);
    }
    double lo = std::max(0.0, 0.5 * fmin), hi = 1.15 * fmax;
    for (int i = 0; i < backbone_points; ++i)
        pts.push_back(lo + (hi - lo) * static_cast<double>(i) / (backbone_points - 1));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    pts.erase(std::remove_if(pts.begin(), pts.end(), [](double w) { return w < 0.0; }),
              pts.end());
    return pts;
}

SpectrumCurve axial_momentum_spectrum(const DriftMatrix& drift, const DiffusionMatrix& diff,
                                      const std::vector<double>& omega_grid,
                                      bool allow_unstable, par::Execution exec) {
    StabilityReport rep = stability(drift);
    if (!rep.stable && !allow_unstable)
        throw StabilityError("axial_momentum_spectrum: drift matrix is not stable");

    SpectrumCurve curve;
    curve.omega = omega_grid;
    curve.value.resize(omega_grid.size());
    std::vector<double> imag_ratio(omega_grid.size(), 0.0);
    par::for_each_index(omega_grid.size(), exec, [&](std::size_t i) {
        num::ComplexMatrix4 s = spectral_matrix(drift, diff, omega_grid[i]);
        const cd v = s(3, 3);
        curve.value[i] = v.real();
        double mag = std::abs(v);
        imag_ratio[i] = mag > 0.0 ? std::abs(v.imag()) / mag : 0.0;
    });
    curve.max_imag_ratio = *std::max_element(imag_ratio.begin(), imag_ratio.end());
    for (double v : curve.value)
        if (v < -1e-9)
            throw NumericError("axial_momentum_spectrum: negative spectral value beyond rounding");
    return curve;
}

namespace {

struct EntryIntegrals {
    cd s11, s12, s21, s22;
};

// Adaptive Simpson on the four needed entries simultaneously.
class VarianceIntegrator {
public:
    VarianceIntegrator(const DriftMatrix& drift, const DiffusionMatrix& diff)
        : drift_(drift), diff_(diff) {}

    EntryIntegrals eval(double w) const {
        num::ComplexMatrix4 s = spectral_matrix(drift_, diff_, w);
        return {s(0, 0), s(0, 1), s(1, 0), s(1, 1)};
    }

    static double magnitude(const EntryIntegrals& e) {
        return std::abs(e.s11) + std::abs(e.s12) + std::abs(e.s21) + std::abs(e.s22);
    }

    EntryIntegrals integrate(double a, double b, double tol, int depth = 0) const {
        EntryIntegrals fa = eval(a), fm = eval(0.5 * (a + b)), fb = eval(b);
        return adapt(a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), tol, depth);
    }

    double peak_magnitude(double a, double b) const {
        double peak = 0.0;
        for (int i = 0; i <= 32; ++i)
            peak = std::max(peak, magnitude(eval(a + (b - a) * i / 32.0)));
        return peak;
    }

private:
    static EntryIntegrals simpson(double a, double b, const EntryIntegrals& fa,
                                  const EntryIntegrals& fm, const EntryIntegrals& fb) {
        const double h = (b - a) / 6.0;
        return {h * (fa.s11 + 4.0 * fm.s11 + fb.s11), h * (fa.s12 + 4.0 * fm.s12 + fb.s12),
                h * (fa.s21 + 4.0 * fm.s21 + fb.s21), h * (fa.s22 + 4.0 * fm.s22 + fb.s22)};
    }
    static EntryIntegrals add(const EntryIntegrals& x, const EntryIntegrals& y) {
        return {x.s11 + y.s11, x.s12 + y.s12, x.s21 + y.s21, x.s22 + y.s22};
    }
    static double diff_norm(const EntryIntegrals& x, const EntryIntegrals& y) {
        return std::abs(x.s11 - y.s11) + std::abs(x.s12 - y.s12) + std::abs(x.s21 - y.s21) +
               std::abs(x.s22 - y.s22);
    }

    EntryIntegrals adapt(double a, double b, const EntryIntegrals& fa, const EntryIntegrals& fm,
                         const EntryIntegrals& fb, const EntryIntegrals& whole, double tol,
                         int depth) const {
        const double m = 0.5 * (a + b);
        EntryIntegrals flm = eval(0.5 * (a + m)), frm = eval(0.5 * (m + b));
        EntryIntegrals left = simpson(a, m, fa, flm, fm);
        EntryIntegrals right = simpson(m, b, fm, frm, fb);
        EntryIntegrals refined = add(left, right);
        if (depth >= 40 || diff_norm(refined, whole) < 15.0 * tol) return refined;
        EntryIntegrals l = adapt(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1);
        EntryIntegrals r = adapt(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
        return add(l, r);
    }

    const DriftMatrix& drift_;
    const DiffusionMatrix& diff_;
};

}  // namespace

QuadratureVariances quadrature_variances(const DriftMatrix& drift,
                                         const DiffusionMatrix& diff, double varphi) {
    StabilityReport rep = stability(drift);
    if (!rep.stable)
        throw StabilityError("quadrature_variances: drift matrix is not stable");

    VarianceIntegrator vi(drift, diff);

    // Segment boundaries around each resolvent pole.
    std::vector<double> cuts;
    double peak = 0.0;
    for (const cd& l : rep.eigenvalues) {
        double w0 = l.imag();
        double width = std::max(std::abs(l.real()), 1e-6);
        peak = std::max(peak, VarianceIntegrator::magnitude(vi.eval(w0)));
        for (double k : {-30.0, -8.0, -2.0, 0.0, 2.0, 8.0, 30.0})
            cuts.push_back(w0 + k * width);
    }
    cuts.push_back(0.0);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    if (peak <= 0.0) {
        return {0.0, 0.0, 0.0};  // zero diffusion
    }

    const double tol = 1e-10 * peak * std::max(1.0, cuts.back() - cuts.front());
    EntryIntegrals total{0.0, 0.0, 0.0, 0.0};
    auto acc = [&](const EntryIntegrals& e) {
        total.s11 += e.s11;
        total.s12 += e.s12;
        total.s21 += e.s21;
        total.s22 += e.s22;
    };
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        acc(vi.integrate(cuts[i], cuts[i + 1], tol));

    // Tails: extend by doubling until the local integrand is below 1e-12 of
    // the peak and the last contribution is negligible.
    for (int dir : {+1, -1}) {
        double edge = dir > 0 ? cuts.back() : cuts.front();
        double span = std::max(1.0, cuts.back() - cuts.front());
        for (int k = 0; k < 60; ++k) {
            double next = edge + dir * span;
            EntryIntegrals seg = dir > 0 ? vi.integrate(edge, next, tol)
                                         : vi.integrate(next, edge, tol);
            acc(seg);
            edge = next;
            span *= 2.0;
            double local = VarianceIntegrator::magnitude(vi.eval(edge));
            double contrib = std::abs(seg.s11) + std::abs(seg.s12) + std::abs(seg.s21) +
                             std::abs(seg.s22);
            if (local < 1e-12 * peak && contrib < 1e-9 * (std::abs(total.s12) + 1e-300)) break;
            if (k == 59)
                throw IntegrationError("quadrature_variances: tail integration did not converge",
                                       total.s12);
        }
    }

    const cd rot = std::polar(1.0, -2.0 * varphi);
    const double inv = 0.5 / (2.0 * M_PI);
    cd amp = inv * (total.s12 + total.s21 + rot * total.s11 + std::conj(rot) * total.s22);
    cd ort = inv * (total.s12 + total.s21 - rot * total.s11 - std::conj(rot) * total.s22);
    QuadratureVariances out;
    out.amplitude = amp.real();
    out.orthogonal = ort.real();
    out.imag_residual = std::max(std::abs(amp.imag()), std::abs(ort.imag()));
    return out;
}

}  // namespace geonium
