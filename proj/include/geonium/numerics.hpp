#ifndef GEONIUM_NUMERICS_HPP
#define GEONIUM_NUMERICS_HPP

#include <array>
#include <complex>
#include <functional>
#include <vector>

#include "geonium/errors.hpp"

namespace geonium::num {

using cd = std::complex<double>;

inline constexpr int kPolyOrderMax = 200;

// Physicists' Hermite polynomial H_n(x) by the three-term recurrence.
double hermite(int n, double x, int n_max = kPolyOrderMax);

// Associated Laguerre polynomial L_n^k(x).
double assoc_laguerre(int n, int k, double x, int n_max = kPolyOrderMax);

// Normalized harmonic-oscillator eigenfunction
// psi_n(x) = H_n(x) e^{-x^2/2} / sqrt(2^n n! sqrt(pi)), by stable recurrence.
double hermite_function(int n, double x);

// log(n!)
double log_factorial(int n);

// ---------------------------------------------------------------------------
// Quadrature

struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_subdiv = 20000;   // interval-split budget
    double half_width = 8.0;  // truncation half-width for real-line integrals
};

// Adaptive Simpson estimate of the integral of f over [a, b].
cd integrate_interval(const std::function<cd(double)>& f, double a, double b,
                      const QuadratureSpec& spec);

// Integral over the real line, truncated at [-half_width, half_width].
// Assumes the integrand decays at least as fast as a Gaussian there.
cd integrate_line(const std::function<cd(double)>& f, const QuadratureSpec& spec);

// ---------------------------------------------------------------------------
// Small dense complex linear algebra, fixed 4x4

struct ComplexMatrix4 {
    std::array<cd, 16> a{};

    cd& operator()(int i, int j) { return a[static_cast<std::size_t>(4 * i + j)]; }
    const cd& operator()(int i, int j) const { return a[static_cast<std::size_t>(4 * i + j)]; }

    static ComplexMatrix4 identity();
    static ComplexMatrix4 zero();
    // Throws NumericError on non-finite entries.
    static ComplexMatrix4 from_entries(const std::array<cd, 16>& entries);

    ComplexMatrix4 transpose() const;
    double max_abs() const;
    double frobenius() const;
};

ComplexMatrix4 operator*(const ComplexMatrix4& x, const ComplexMatrix4& y);
ComplexMatrix4 operator+(const ComplexMatrix4& x, const ComplexMatrix4& y);
ComplexMatrix4 operator-(const ComplexMatrix4& x, const ComplexMatrix4& y);
ComplexMatrix4 operator*(cd s, const ComplexMatrix4& x);

using Vec4 = std::array<cd, 4>;

// Partial-pivot Gaussian elimination. Throws SingularMatrixError when the
// pivot magnitude drops below 1e-300.
Vec4 solve4(const ComplexMatrix4& a, const Vec4& b);

cd det4(const ComplexMatrix4& a);

// All four roots of the characteristic polynomial (multiplicities kept),
// via Faddeev-LeVerrier coefficients and Durand-Kerner iteration with
// Newton polishing.
std::array<cd, 4> eigenvalues4(const ComplexMatrix4& a);

// ---------------------------------------------------------------------------
// Grids

struct Grid2D {
    std::vector<double> q_axis;  // strictly increasing, uniform
    std::vector<double> p_axis;
    std::vector<double> values;  // row-major, row per q, column per p

    double& at(std::size_t iq, std::size_t ip) { return values[iq * p_axis.size() + ip]; }
    double at(std::size_t iq, std::size_t ip) const { return values[iq * p_axis.size() + ip]; }

    static Grid2D make(double q_min, double q_max, std::size_t nq,
                       double p_min, double p_max, std::size_t np);
};

// 2D trapezoid estimate of the integral of values over the grid.
double grid_integral(const Grid2D& g);

// ---------------------------------------------------------------------------
// Peak finding

struct Peak {
    double omega;   // parabola-refined position
    double height;  // refined height
};

// Local maxima with prominence above prominence_rel * (max - min), refined
// by a 3-point parabola (handles non-uniform sampling). Throws NumericError
// on an empty curve.
std::vector<Peak> find_peaks(const std::vector<double>& omega,
                             const std::vector<double>& value,
                             double prominence_rel = 1e-3);

}  // namespace geonium::num

#endif
