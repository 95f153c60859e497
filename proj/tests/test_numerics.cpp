#include <doctest.h>

#include <cmath>
#include <random>

#include "geonium/numerics.hpp"

using namespace geonium;
using num::cd;

TEST_CASE("hermite polynomial examples") {
    CHECK(num::hermite(0, 1.7) == 1.0);
    CHECK(num::hermite(3, 1.0) == doctest::Approx(-4.0).epsilon(1e-14));
    CHECK(num::hermite(5, 0.0) == 0.0);
    CHECK_THROWS_AS(num::hermite(201, 0.5), TruncationError);
}

TEST_CASE("hermite recurrence matches explicit polynomials") {
    auto h = [](int n, double x) -> double {
        switch (n) {
            case 0: return 1;
            case 1: return 2 * x;
            case 2: return 4 * x * x - 2;
            case 3: return 8 * x * x * x - 12 * x;
            case 4: return 16 * std::pow(x, 4) - 48 * x * x + 12;
            case 5: return 32 * std::pow(x, 5) - 160 * x * x * x + 120 * x;
            default: return 64 * std::pow(x, 6) - 480 * std::pow(x, 4) + 720 * x * x - 120;
        }
    };
    for (int n = 0; n <= 6; ++n)
        for (double x : {-2.0, -1.0, 0.0, 1.0, 2.0})
            CHECK(num::hermite(n, x) == h(n, x));  // small integers, exact
}

TEST_CASE("associated Laguerre examples and explicit polynomials") {
    CHECK(num::assoc_laguerre(0, 0, 3.3) == 1.0);
    CHECK(num::assoc_laguerre(0, 4, -1.0) == 1.0);
    CHECK(num::assoc_laguerre(1, 0, 1.0) == doctest::Approx(0.0).epsilon(1e-15));
    // L_2^1(x) = 3 - 3x + x^2/2 -> L_2^1(2) = -1
    CHECK(num::assoc_laguerre(2, 1, 2.0) == doctest::Approx(-1.0).epsilon(1e-14));
    auto l = [](int n, int k, double x) {
        switch (n) {
            case 0: return 1.0;
            case 1: return k + 1.0 - x;
            case 2: return 0.5 * x * x - (k + 2.0) * x + 0.5 * (k + 1.0) * (k + 2.0);
            default:
                return -x * x * x / 6.0 + 0.5 * (k + 3.0) * x * x -
                       0.5 * (k + 2.0) * (k + 3.0) * x +
                       (k + 1.0) * (k + 2.0) * (k + 3.0) / 6.0;
        }
    };
    for (int n = 0; n <= 3; ++n)
        for (int k = 0; k <= 3; ++k)
            for (double x : {-2.0, -1.0, 0.0, 1.0, 2.0})
                CHECK(num::assoc_laguerre(n, k, x) ==
                      doctest::Approx(l(n, k, x)).epsilon(1e-13));
}

TEST_CASE("line integrals of Gaussian-enveloped integrands") {
    num::QuadratureSpec spec;
    auto gauss = [](double x) { return cd(std::exp(-x * x), 0.0); };
    CHECK(std::abs(num::integrate_line(gauss, spec) - std::sqrt(M_PI)) < 1e-10);

    auto shifted = [](double x) {
        return std::exp(cd(-x * x, -2.0 * x));  // e^{-x^2 - 2 i P x}, P = 1
    };
    cd expect = std::sqrt(M_PI) * std::exp(-1.0);
    CHECK(std::abs(num::integrate_line(shifted, spec) - expect) < 1e-10);

    auto odd = [](double x) { return cd(x * std::exp(-x * x), 0.0); };
    CHECK(std::abs(num::integrate_line(odd, spec)) < 1e-12);
}

TEST_CASE("integrate_interval reports failure with the best estimate") {
    num::QuadratureSpec spec;
    spec.max_subdiv = 4;
    spec.abs_tol = 1e-300;
    spec.rel_tol = 1e-16;
    auto rough = [](double x) { return cd(1.0 / (1e-8 + std::abs(x - 0.3)), 0.0); };
    CHECK_THROWS_AS(num::integrate_interval(rough, 0.0, 1.0, spec), IntegrationError);
}

TEST_CASE("hermite functions are orthonormal") {
    num::QuadratureSpec spec;
    spec.half_width = 12.0;
    for (int m = 0; m <= 10; ++m)
        for (int n = m; n <= 10; ++n) {
            auto f = [m, n](double x) {
                return cd(num::hermite_function(m, x) * num::hermite_function(n, x), 0.0);
            };
            double expect = m == n ? 1.0 : 0.0;
            CHECK(std::abs(num::integrate_line(f, spec) - expect) < 1e-8);
        }
}

TEST_CASE("solve4 examples") {
    num::ComplexMatrix4 eye = num::ComplexMatrix4::identity();
    num::Vec4 b{cd(1, 2), cd(-3, 0), cd(0, 1), cd(4, 4)};
    num::Vec4 x = num::solve4(eye, b);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(x[i] - b[i]) == 0.0);

    num::ComplexMatrix4 d;
    d(0, 0) = 2.0;
    d(1, 1) = cd(0, 2);
    d(2, 2) = -1.0;
    d(3, 3) = 3.0;
    num::Vec4 ones{1.0, 1.0, 1.0, 1.0};
    x = num::solve4(d, ones);
    CHECK(std::abs(x[0] - cd(0.5, 0)) < 1e-15);
    CHECK(std::abs(x[1] - cd(0, -0.5)) < 1e-15);
    CHECK(std::abs(x[2] - cd(-1, 0)) < 1e-15);
    CHECK(std::abs(x[3] - cd(1.0 / 3.0, 0)) < 1e-15);
}

TEST_CASE("solve4 residual property on random well-conditioned systems") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 64; ++trial) {
        num::ComplexMatrix4 a;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                a(i, j) = cd(u(rng), u(rng)) + (i == j ? cd(4.0) : cd(0.0));
        num::Vec4 b{cd(u(rng), u(rng)), cd(u(rng), u(rng)), cd(u(rng), u(rng)),
                    cd(u(rng), u(rng))};
        num::Vec4 x = num::solve4(a, b);
        double bnorm = 0.0, rnorm = 0.0;
        for (int i = 0; i < 4; ++i) {
            cd r = -b[i];
            for (int j = 0; j < 4; ++j) r += a(i, j) * x[j];
            rnorm += std::norm(r);
            bnorm += std::norm(b[i]);
        }
        CHECK(std::sqrt(rnorm) <= 1e-10 * std::sqrt(bnorm));
    }
}

TEST_CASE("solve4 rejects singular systems") {
    num::ComplexMatrix4 a;  // rank deficient
    a(0, 0) = 1.0;
    a(1, 0) = 1.0;
    num::Vec4 b{1.0, 1.0, 0.0, 0.0};
    CHECK_THROWS_AS(num::solve4(a, b), SingularMatrixError);
}

TEST_CASE("eigenvalues4 diagonal and companion examples") {
    num::ComplexMatrix4 d;
    d(0, 0) = cd(1, 1);
    d(1, 1) = cd(-2, 0);
    d(2, 2) = cd(0, 3);
    d(3, 3) = cd(4, -1);
    auto ev = num::eigenvalues4(d);
    for (cd want : {cd(1, 1), cd(-2, 0), cd(0, 3), cd(4, -1)}) {
        double best = 1e300;
        for (cd got : ev) best = std::min(best, std::abs(got - want));
        CHECK(best < 1e-10);
    }

    // companion matrix of (l^2+1)(l^2+4) = l^4 + 5 l^2 + 4
    num::ComplexMatrix4 comp;
    comp(0, 3) = -4.0;
    comp(2, 3) = -5.0;
    comp(1, 0) = 1.0;
    comp(2, 1) = 1.0;
    comp(3, 2) = 1.0;
    auto roots = num::eigenvalues4(comp);
    for (cd want : {cd(0, 1), cd(0, -1), cd(0, 2), cd(0, -2)}) {
        double best = 1e300;
        for (cd got : roots) best = std::min(best, std::abs(got - want));
        CHECK(best < 1e-8);
    }
}

TEST_CASE("eigenvalues4 shift invariance and trace/det identities") {
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 32; ++trial) {
        num::ComplexMatrix4 a;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) a(i, j) = cd(u(rng), u(rng));
        auto ev = num::eigenvalues4(a);

        cd trace = a(0, 0) + a(1, 1) + a(2, 2) + a(3, 3);
        cd sum = ev[0] + ev[1] + ev[2] + ev[3];
        CHECK(std::abs(sum - trace) < 1e-8 * std::max(1.0, std::abs(trace)));

        cd prod = ev[0] * ev[1] * ev[2] * ev[3];
        cd det = num::det4(a);
        CHECK(std::abs(prod - det) < 1e-6 * std::max(1.0, std::abs(det)));

        const cd sigma(0.7, -0.3);
        num::ComplexMatrix4 shifted = a;
        for (int i = 0; i < 4; ++i) shifted(i, i) += sigma;
        auto evs = num::eigenvalues4(shifted);
        for (cd l : ev) {
            double best = 1e300;
            for (cd ls : evs) best = std::min(best, std::abs(ls - (l + sigma)));
            CHECK(best < 1e-7);
        }
    }
}

TEST_CASE("characteristic-polynomial residual stays bounded") {
    std::mt19937 rng(4242);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 16; ++trial) {
        num::ComplexMatrix4 a;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) a(i, j) = 1e4 * cd(u(rng), u(rng));
        double scale = a.max_abs();
        for (cd l : num::eigenvalues4(a)) {
            num::ComplexMatrix4 shifted = a;
            for (int i = 0; i < 4; ++i) shifted(i, i) -= l;
            CHECK(std::abs(num::det4(shifted)) <= 1e-6 * std::pow(scale, 4));
        }
    }
}

TEST_CASE("grid integral examples") {
    auto g = num::Grid2D::make(0.0, 1.0, 51, 0.0, 1.0, 41);
    for (double& v : g.values) v = 1.0;
    CHECK(num::grid_integral(g) == doctest::Approx(1.0).epsilon(1e-12));

    auto h = num::Grid2D::make(-6.0, 6.0, 121, -6.0, 6.0, 121);
    for (std::size_t i = 0; i < h.q_axis.size(); ++i)
        for (std::size_t j = 0; j < h.p_axis.size(); ++j)
            h.at(i, j) = std::exp(-h.q_axis[i] * h.q_axis[i] - h.p_axis[j] * h.p_axis[j]);
    CHECK(std::abs(num::grid_integral(h) - M_PI) < 1e-6);

    for (std::size_t i = 0; i < h.q_axis.size(); ++i)
        for (std::size_t j = 0; j < h.p_axis.size(); ++j)
            h.at(i, j) =
                h.q_axis[i] * std::exp(-h.q_axis[i] * h.q_axis[i] - h.p_axis[j] * h.p_axis[j]);
    CHECK(std::abs(num::grid_integral(h)) < 1e-12);
}

TEST_CASE("find_peaks examples") {
    auto lorentz = [](double w, double w0, double g) {
        return 1.0 / ((w - w0) * (w - w0) + g * g);
    };
    std::vector<double> ws, vs;
    for (int i = 0; i <= 2000; ++i) {
        double w = i * 0.01;
        ws.push_back(w);
        vs.push_back(lorentz(w, 7.0, 0.5));
    }
    auto peaks = num::find_peaks(ws, vs);
    REQUIRE(peaks.size() == 1);
    CHECK(std::abs(peaks[0].omega - 7.0) < 0.01);

    for (std::size_t i = 0; i < ws.size(); ++i)
        vs[i] = lorentz(ws[i], 7.0, 0.5) + 0.7 * lorentz(ws[i], 13.0, 0.3);
    peaks = num::find_peaks(ws, vs);
    REQUIRE(peaks.size() == 2);
    CHECK(std::abs(peaks[0].omega - 7.0) < 0.01);
    CHECK(std::abs(peaks[1].omega - 13.0) < 0.01);

    for (std::size_t i = 0; i < ws.size(); ++i) vs[i] = ws[i];  // monotone
    CHECK(num::find_peaks(ws, vs).empty());

    CHECK_THROWS_AS(num::find_peaks({}, {}), NumericError);
}
