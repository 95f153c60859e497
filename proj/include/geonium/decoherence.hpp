#ifndef GEONIUM_DECOHERENCE_HPP
#define GEONIUM_DECOHERENCE_HPP

#include <functional>

#include "geonium/cat_states.hpp"
#include "geonium/config.hpp"
#include "geonium/numerics.hpp"
#include "geonium/parallel.hpp"

namespace geonium {

// Thermal bath seen by the axial mode during the measurement window, in
// axial-frequency units (Gamma/omega_z -> Gamma, tau omega_z -> tau).
struct BathParams {
    double Gamma = 0.0;
    double tau = 0.0;
    double N_th = 0.0;
};

// Gaussian coefficients of the decohered Yurke-Stoler Wigner function.
struct ABCCoefficients {
    double A = 0.0, B = 0.0, C = 0.0;
    std::array<cd, 4> D{};
    std::array<cd, 4> E{};
    bool near_degenerate = false;  // 4AB - C^2 below 1e-12
};

ABCCoefficients abc_coefficients(cd beta, const BathParams& bath, double Z, double P_z);

// Method-of-characteristics propagation of the transformed density:
// evaluates the bath-evolved transform at (q, v, tau) given its tau = 0
// values. The printed closed form divides by Gamma, so Gamma = 0 is rejected.
cd characteristics_propagate(const std::function<cd(double, double)>& initial,
                             double q, double v, const BathParams& bath);

// Initial transform of the conditional-cat density for cyclotron matrix
// element (Q + Y, Q - Y), three-branch associated-Laguerre form.
cd initial_transform_central(const EntangledExpansion& exp, double Q, double Y,
                             double q, double v);

// I_{m,n} integral of the thermally evolved conditional state; the printed
// form covers n >= m, n < m is completed by the Hermitian conjugate swap.
cd imn_integral(int m, int n, double p_z, const BathParams& bath,
                const num::QuadratureSpec& spec);

// Wigner function of the cyclotron state after a finite-time measurement:
// bath evolution for tau, then projection onto axial momentum P_z.
WignerGrid decohered_conditional_wigner(const EntangledExpansion& exp, double p_z,
                                        const BathParams& bath, const WignerAxes& axes,
                                        const num::QuadratureSpec& spec,
                                        par::Execution exec = par::Execution::parallel);

// Closed-form Wigner function of the thermally decohered Yurke-Stoler cat.
WignerGrid decohered_cat_wigner(cd beta, const BathParams& bath, const WignerAxes& axes,
                                par::Execution exec = par::Execution::parallel);

// Brute-force double integral of the transformed density; the independent
// oracle for decohered_cat_wigner.
WignerGrid decohered_cat_oracle(cd beta, const BathParams& bath, const WignerAxes& axes,
                                const num::QuadratureSpec& spec,
                                par::Execution exec = par::Execution::parallel);

// tau = 0 transform of the Yurke-Stoler cat (shared by the oracle and tests).
cd cat_initial_transform(cd beta, double q, double v);

}  // namespace geonium

#endif
