#ifndef GEONIUM_CAT_STATES_HPP
#define GEONIUM_CAT_STATES_HPP

#include <string>
#include <vector>

#include "geonium/config.hpp"
#include "geonium/numerics.hpp"
#include "geonium/parallel.hpp"

namespace geonium {

// Momentum-wavefunction phase convention <P|n> = (-i)^n psi_n(P) (standard
// Fourier transform of the position eigenfunctions) or the plain psi_n(P).
enum class PhaseConvention { standard, plain };

// Joint cyclotron-axial state at the central resonance,
//   sum_n w_n |zeta_n>_c (x) |n>_z,  w_n = e^{-|b|^2/2} b^n/sqrt(n!),
//   zeta_n = i epsilon kappa^2 n t.
struct EntangledExpansion {
    cd beta;
    cd epsilon;
    double kappa_sq = 0.0;
    double time = 0.0;
    int n_max = 0;
    std::vector<cd> weights;  // w_n, n = 0..n_max
    std::vector<cd> zetas;    // zeta_n
    double tail_weight = 0.0; // 1 - sum |w_n|^2
    // Overall cyclotron displacement -i eps (1 - kappa^2/2) t dropped from
    // every component (the initial alpha is not tracked here).
    cd disregarded_displacement;
};

// Superposition of coherent states sum_j c_j |zeta_j> with coefficients
// normalized including the coherent overlaps.
struct CoherentSuperposition {
    std::vector<cd> coeffs;
    std::vector<cd> amplitudes;
    double norm_constant = 1.0;  // N applied to the raw coefficients
};

// Fock-basis expansion of a single-mode state (unit norm after truncation).
struct FockExpansion {
    std::vector<cd> coeffs;
    double tail_weight = 0.0;
};

struct WignerAxes {
    double q_min = -8.0, q_max = 8.0;
    std::size_t nq = 161;
    double p_min = -8.0, p_max = 8.0;
    std::size_t np = 161;

    static WignerAxes symmetric(double extent, std::size_t n) {
        return {-extent, extent, n, -extent, extent, n};
    }
};

struct WignerGrid {
    num::Grid2D grid;
    double integral_raw = 0.0;    // grid integral before any renormalization
    double norm_factor = 1.0;     // values were divided by this
    double imag_residual = 0.0;   // max |Im| before realization
    std::string q_label = "Q";
    std::string p_label = "P";
};

struct KerrParams {
    double G = 0.0;        // rad/s
    double delta = 0.0;    // rad/s
    double eps_abs = 0.0;  // rad/s
    double kappa_sq = 0.0;
    double adiabaticity = 0.0;  // |delta|/omega_z when provided, else 0
};

// n_max = 0 picks the smallest truncation with Poisson tail < 1e-8, doubled
// (cross terms of the Wigner double sum converge slower than the weights).
EntangledExpansion central_resonance_expansion(cd beta, cd epsilon, double kappa_sq,
                                               double t, int n_max = 0);

// Projection of the entangled state onto the axial momentum eigenvalue P_z.
CoherentSuperposition condition_on_momentum(const EntangledExpansion& exp, double p_z,
                                            PhaseConvention conv = PhaseConvention::standard);

// Argmax of the axial momentum marginal sum_n |w_n|^2 |<P|n>|^2, refined by
// golden-section search; ties broken toward the smaller |P_z| and the
// non-negative representative of the +-P pair.
double most_probable_momentum(const EntangledExpansion& exp);

// Wigner function of a coherent-state superposition via the closed-form
// double sum over components; numerically renormalized to unit mass.
WignerGrid wigner_of_superposition(const CoherentSuperposition& state,
                                   const WignerAxes& axes,
                                   par::Execution exec = par::Execution::parallel);

// Effective Kerr constant G = |eps|^2 kappa^4 / (4 delta) of the sideband
// resonance after adiabatic elimination of the cyclotron mode.
KerrParams effective_kerr_constant(double eps_abs, double kappa_sq, double delta,
                                   double omega_z = 0.0);

// Kerr evolution exp[i G ((a+ a)^2 - a+ a) t] |beta> in the Fock basis.
FockExpansion kerr_evolve(cd beta, double G, double t, int n_max = 0);

// The two-component cat the Kerr evolution reaches at t = pi/(2G):
// (e^{+i pi/4} |-i beta> + e^{-i pi/4} |+i beta>)/sqrt(2).
CoherentSuperposition yurke_stoler_cat(cd beta);

// Closed-form Wigner function of the Yurke-Stoler cat (evaluated verbatim,
// not renormalized; integral recorded as a diagnostic).
WignerGrid wigner_ys_cat(cd beta, const WignerAxes& axes,
                         par::Execution exec = par::Execution::parallel);

// ---------------------------------------------------------------------------
// Helpers shared with tests and the decoherence module.

// e^{-|b|^2/2} b^n / sqrt(n!), evaluated in log space.
cd poisson_amplitude(cd beta, int n);

// <zeta_m | zeta_n>
cd coherent_overlap(cd zeta_m, cd zeta_n);

// Normalize raw coefficients including overlaps; returns the applied N.
double normalize_superposition(CoherentSuperposition& state);

// Overlap <state | fock> of a coherent superposition with a Fock expansion.
cd overlap(const CoherentSuperposition& state, const FockExpansion& fock);

// Smallest n with Poisson(|beta|^2) tail below `tail`.
int poisson_truncation(cd beta, double tail);

}  // namespace geonium

#endif
