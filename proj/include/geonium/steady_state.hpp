#ifndef GEONIUM_STEADY_STATE_HPP
#define GEONIUM_STEADY_STATE_HPP

#include <array>
#include <string>
#include <vector>

#include "geonium/config.hpp"
#include "geonium/numerics.hpp"
#include "geonium/parallel.hpp"

namespace geonium {

struct SteadyState {
    cd alpha_c = 0.0;
    double Z_bar = 0.0;
    double P_bar = 0.0;  // forced to zero by the omega_z P relation
    std::array<double, 4> residuals{};  // scaled residuals of the four relations
    int root_count = 1;   // real roots of the scalar equation in the bracket
};

// Row-4 coupling entries: paper_verbatim keeps the printed signs
// (-2 eps* k^2 Z, -2 eps k^2 Z); rederived uses the direct linearization
// (+2 k^2 eps* Z, +2 k^2 eps Z).
enum class DriftProvenance { paper_verbatim, rederived };

struct DriftMatrix {
    num::ComplexMatrix4 m;
    DriftProvenance provenance = DriftProvenance::paper_verbatim;
};

struct DiffusionMatrix {
    num::ComplexMatrix4 m;
};

struct StabilityReport {
    bool stable = false;    // all Re(lambda) < 0
    bool marginal = false;  // some |Re(lambda)| at rounding scale
    std::array<cd, 4> eigenvalues{};
};

struct SpectrumCurve {
    std::vector<double> omega;
    std::vector<double> value;          // Re S_44
    double max_imag_ratio = 0.0;        // max |Im S44| / |S44| diagnostic
    std::string element = "S44";
};

struct QuadratureVariances {
    double amplitude = 0.0;    // Var X at phi' = varphi
    double orthogonal = 0.0;   // Var X at phi' = varphi + pi/2
    double imag_residual = 0.0;
};

// Stationary point of the nonlinear mean equations: alpha_c is eliminated,
// the real scalar equation for Z-bar is solved by a bracketing scan over
// [0, 2f/omega_z] (mirrored for f < 0) with bisection/Newton polish, and the
// root continuously connected to the kappa -> 0 solution f/omega_z is chosen
// by continuation in the coupling strength.
SteadyState solve_steady_state(const ModelConfig& config);

DriftMatrix build_drift(const ModelConfig& config, const SteadyState& ss,
                        DriftProvenance provenance = DriftProvenance::paper_verbatim);

// D12 = gamma_c, D44 = Gamma N_th d44_scale, all else zero.
DiffusionMatrix build_diffusion(const ModelConfig& config);

// S(w) = (i w I - M)^-1 D (-i w I - M^T)^-1 via linear solves per column.
num::ComplexMatrix4 spectral_matrix(const DriftMatrix& drift, const DiffusionMatrix& diff,
                                    double omega);

StabilityReport stability(const DriftMatrix& drift);

// Dense evaluation grid clustered around the resonances of the given drift
// matrices (positive eigenfrequencies), with a coarse backbone in between.
std::vector<double> spectrum_window(const std::vector<DriftMatrix>& drifts,
                                    int backbone_points);

// Re S_44 over the grid. Throws StabilityError for an unstable drift matrix
// unless allow_unstable.
SpectrumCurve axial_momentum_spectrum(const DriftMatrix& drift, const DiffusionMatrix& diff,
                                      const std::vector<double>& omega_grid,
                                      bool allow_unstable = false,
                                      par::Execution exec = par::Execution::parallel);

// Integrated cyclotron quadrature variances at phi' = varphi and
// varphi + pi/2, normalized so the uncoupled vacuum gives exactly 1/2:
//   Var = (1/2)(1/2pi) Int dw [S12 + S21 + e^{-2i phi'} S11 + e^{+2i phi'} S22].
// The integration refines adaptively around the resolvent poles and extends
// the tails until the integrand falls below 1e-12 of its peak.
QuadratureVariances quadrature_variances(const DriftMatrix& drift,
                                         const DiffusionMatrix& diff, double varphi);

}  // namespace geonium

#endif
