#include "geonium/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace geonium::num {

double hermite(int n, double x, int n_max) {
    if (n < 0) throw NumericError("hermite: negative order");
    if (n > n_max) {
        std::ostringstream os;
        os << "hermite: order " << n << " exceeds maximum " << n_max;
        throw TruncationError(os.str());
    }
    double p0 = 1.0;
    if (n == 0) return p0;
    double p1 = 2.0 * x;
    for (int k = 1; k < n; ++k) {
        double p2 = 2.0 * x * p1 - 2.0 * k * p0;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

double assoc_laguerre(int n, int k, double x, int n_max) {
    if (n < 0 || k < 0) throw NumericError("assoc_laguerre: negative index");
    if (n > n_max || k > n_max) {
        std::ostringstream os;
        os << "assoc_laguerre: index (" << n << "," << k << ") exceeds maximum " << n_max;
        throw TruncationError(os.str());
    }
    double p0 = 1.0;
    if (n == 0) return p0;
    double p1 = 1.0 + k - x;
    for (int m = 1; m < n; ++m) {
        double p2 = ((2.0 * m + 1.0 + k - x) * p1 - (m + k) * p0) / (m + 1.0);
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

double hermite_function(int n, double x) {
    if (n < 0) throw NumericError("hermite_function: negative order");
    double p0 = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
    if (n == 0) return p0;
    double p1 = std::sqrt(2.0) * x * p0;
    for (int k = 1; k < n; ++k) {
        double p2 = x * std::sqrt(2.0 / (k + 1.0)) * p1 - std::sqrt(k / (k + 1.0)) * p0;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

double log_factorial(int n) {
    if (n < 0) throw NumericError("log_factorial: negative argument");
    return std::lgamma(n + 1.0);
}

// ---------------------------------------------------------------------------

namespace {

struct Segment {
    double a, b;
    cd fa, fm, fb;
    cd whole;
    int depth;
};

cd simpson_rule(double a, double b, cd fa, cd fm, cd fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

}  // namespace

cd integrate_interval(const std::function<cd(double)>& f, double a, double b,
                      const QuadratureSpec& spec) {
    if (!(spec.abs_tol > 0) || !(spec.rel_tol > 0))
        throw ConfigError("quadrature: tolerances must be positive");
    if (a == b) return 0.0;

    // Rough magnitude for the relative tolerance.
    cd fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    cd coarse = simpson_rule(a, b, fa, fm, fb);

    std::vector<Segment> stack;
    stack.push_back({a, b, fa, fm, fb, coarse, 0});
    cd total = 0.0;
    double err_total = 0.0;
    int splits = 0;
    bool budget_hit = false;

    while (!stack.empty()) {
        Segment s = stack.back();
        stack.pop_back();
        double m = 0.5 * (s.a + s.b);
        double lm = 0.5 * (s.a + m), rm = 0.5 * (m + s.b);
        cd flm = f(lm), frm = f(rm);
        cd left = simpson_rule(s.a, m, s.fa, flm, s.fm);
        cd right = simpson_rule(m, s.b, s.fm, frm, s.fb);
        cd refined = left + right;
        double err = std::abs(refined - s.whole) / 15.0;
        double tol = std::max(spec.abs_tol * (s.b - s.a) / (b - a),
                              spec.rel_tol * std::abs(refined));
        if (err <= tol || s.depth >= 48) {
            total += refined + (refined - s.whole) / 15.0;
            err_total += err;
        } else if (splits >= spec.max_subdiv) {
            budget_hit = true;
            total += refined + (refined - s.whole) / 15.0;
            err_total += err;
        } else {
            ++splits;
            stack.push_back({m, s.b, s.fm, frm, s.fb, right, s.depth + 1});
            stack.push_back({s.a, m, s.fa, flm, s.fm, left, s.depth + 1});
        }
    }

    if (budget_hit &&
        err_total > std::max(spec.abs_tol, spec.rel_tol * std::abs(total)) * 8.0) {
        std::ostringstream os;
        os << "integrate_interval: error " << err_total << " above tolerance after "
           << splits << " subdivisions; best estimate (" << total.real() << ","
           << total.imag() << ")";
        throw IntegrationError(os.str(), total);
    }
    return total;
}

cd integrate_line(const std::function<cd(double)>& f, const QuadratureSpec& spec) {
    double hw = spec.half_width;
    if (!(hw > 0)) throw ConfigError("integrate_line: half_width must be positive");
    // Split at 0 so even/odd structure around the origin is resolved evenly.
    return integrate_interval(f, -hw, 0.0, spec) + integrate_interval(f, 0.0, hw, spec);
}

// ---------------------------------------------------------------------------

ComplexMatrix4 ComplexMatrix4::identity() {
    ComplexMatrix4 m;
    for (int i = 0; i < 4; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix4 ComplexMatrix4::zero() { return ComplexMatrix4{}; }

ComplexMatrix4 ComplexMatrix4::from_entries(const std::array<cd, 16>& entries) {
    for (const cd& e : entries)
        if (!std::isfinite(e.real()) || !std::isfinite(e.imag()))
            throw NumericError("ComplexMatrix4: non-finite entry");
    ComplexMatrix4 m;
    m.a = entries;
    return m;
}

ComplexMatrix4 ComplexMatrix4::transpose() const {
    ComplexMatrix4 t;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) t(i, j) = (*this)(j, i);
    return t;
}

double ComplexMatrix4::max_abs() const {
    double m = 0.0;
    for (const cd& e : a) m = std::max(m, std::abs(e));
    return m;
}

double ComplexMatrix4::frobenius() const {
    double s = 0.0;
    for (const cd& e : a) s += std::norm(e);
    return std::sqrt(s);
}

ComplexMatrix4 operator*(const ComplexMatrix4& x, const ComplexMatrix4& y) {
    ComplexMatrix4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            cd s = 0.0;
            for (int k = 0; k < 4; ++k) s += x(i, k) * y(k, j);
            r(i, j) = s;
        }
    return r;
}

ComplexMatrix4 operator+(const ComplexMatrix4& x, const ComplexMatrix4& y) {
    ComplexMatrix4 r;
    for (int i = 0; i < 16; ++i) r.a[i] = x.a[i] + y.a[i];
    return r;
}

ComplexMatrix4 operator-(const ComplexMatrix4& x, const ComplexMatrix4& y) {
    ComplexMatrix4 r;
    for (int i = 0; i < 16; ++i) r.a[i] = x.a[i] - y.a[i];
    return r;
}

ComplexMatrix4 operator*(cd s, const ComplexMatrix4& x) {
    ComplexMatrix4 r;
    for (int i = 0; i < 16; ++i) r.a[i] = s * x.a[i];
    return r;
}

Vec4 solve4(const ComplexMatrix4& a, const Vec4& b) {
    std::array<std::array<cd, 5>, 4> w;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) w[i][j] = a(i, j);
        w[i][4] = b[static_cast<std::size_t>(i)];
    }
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        double best = std::abs(w[col][col]);
        for (int r = col + 1; r < 4; ++r) {
            double v = std::abs(w[r][col]);
            if (v > best) { best = v; piv = r; }
        }
        if (best < 1e-300) {
            std::ostringstream os;
            os << "solve4: singular matrix, pivot magnitude " << best << " in column " << col;
            throw SingularMatrixError(os.str(), best);
        }
        std::swap(w[col], w[piv]);
        for (int r = col + 1; r < 4; ++r) {
            cd factor = w[r][col] / w[col][col];
            for (int j = col; j < 5; ++j) w[r][j] -= factor * w[col][j];
        }
    }
    Vec4 x{};
    for (int i = 3; i >= 0; --i) {
        cd s = w[i][4];
        for (int j = i + 1; j < 4; ++j) s -= w[i][j] * x[static_cast<std::size_t>(j)];
        x[static_cast<std::size_t>(i)] = s / w[i][i];
    }
    return x;
}

cd det4(const ComplexMatrix4& a) {
    std::array<std::array<cd, 4>, 4> w;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) w[i][j] = a(i, j);
    cd det = 1.0;
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        double best = std::abs(w[col][col]);
        for (int r = col + 1; r < 4; ++r) {
            double v = std::abs(w[r][col]);
            if (v > best) { best = v; piv = r; }
        }
        if (best == 0.0) return 0.0;
        if (piv != col) {
            std::swap(w[col], w[piv]);
            det = -det;
        }
        det *= w[col][col];
        for (int r = col + 1; r < 4; ++r) {
            cd factor = w[r][col] / w[col][col];
            for (int j = col; j < 4; ++j) w[r][j] -= factor * w[col][j];
        }
    }
    return det;
}

std::array<cd, 4> eigenvalues4(const ComplexMatrix4& a) {
    if (!std::isfinite(a.max_abs())) throw NumericError("eigenvalues4: non-finite entries");
    double scale = a.max_abs();
    if (scale == 0.0) return {0.0, 0.0, 0.0, 0.0};

    ComplexMatrix4 s = (1.0 / scale) * a;

    // Faddeev-LeVerrier: characteristic polynomial of the scaled matrix,
    // lambda^4 + c1 lambda^3 + c2 lambda^2 + c3 lambda + c4.
    auto trace = [](const ComplexMatrix4& m) { return m(0, 0) + m(1, 1) + m(2, 2) + m(3, 3); };
    ComplexMatrix4 i4 = ComplexMatrix4::identity();
    ComplexMatrix4 m1 = s;
    cd c1 = -trace(m1);
    ComplexMatrix4 m2 = s * (m1 + c1 * i4);
    cd c2 = -trace(m2) / 2.0;
    ComplexMatrix4 m3 = s * (m2 + c2 * i4);
    cd c3 = -trace(m3) / 3.0;
    ComplexMatrix4 m4 = s * (m3 + c3 * i4);
    cd c4 = -trace(m4) / 4.0;

    auto poly = [&](cd z) { return (((z + c1) * z + c2) * z + c3) * z + c4; };
    auto dpoly = [&](cd z) { return ((4.0 * z + 3.0 * c1) * z + 2.0 * c2) * z + c3; };

    // Durand-Kerner from a slightly asymmetric circle.
    std::array<cd, 4> r;
    cd seed(0.4, 0.9);
    for (int i = 0; i < 4; ++i) r[static_cast<std::size_t>(i)] = std::pow(seed, i + 1);
    for (int it = 0; it < 400; ++it) {
        double moved = 0.0;
        for (int i = 0; i < 4; ++i) {
            cd zi = r[static_cast<std::size_t>(i)];
            cd denom = 1.0;
            for (int j = 0; j < 4; ++j)
                if (j != i) denom *= zi - r[static_cast<std::size_t>(j)];
            if (std::abs(denom) < 1e-280) denom = 1e-280;
            cd step = poly(zi) / denom;
            r[static_cast<std::size_t>(i)] = zi - step;
            moved = std::max(moved, std::abs(step));
        }
        if (moved < 1e-15) break;
    }
    // Newton polish.
    for (int i = 0; i < 4; ++i) {
        cd z = r[static_cast<std::size_t>(i)];
        for (int it = 0; it < 50; ++it) {
            cd d = dpoly(z);
            if (std::abs(d) < 1e-280) break;
            cd step = poly(z) / d;
            z -= step;
            if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(z))) break;
        }
        // Keep the polished root only if it did not collapse onto another one
        // (clustered roots are better represented by the Durand-Kerner set).
        bool collides = false;
        for (int j = 0; j < i; ++j)
            if (std::abs(z - r[static_cast<std::size_t>(j)]) < 1e-12 &&
                std::abs(r[static_cast<std::size_t>(i)] - r[static_cast<std::size_t>(j)]) > 1e-8)
                collides = true;
        if (!collides) r[static_cast<std::size_t>(i)] = z;
    }

    for (auto& z : r) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw NumericError("eigenvalues4: root iteration failed");
        z *= scale;
    }
    std::sort(r.begin(), r.end(), [](cd x, cd y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });
    return r;
}

// ---------------------------------------------------------------------------

Grid2D Grid2D::make(double q_min, double q_max, std::size_t nq,
                    double p_min, double p_max, std::size_t np) {
    if (nq < 2 || np < 2 || !(q_max > q_min) || !(p_max > p_min))
        throw ConfigError("Grid2D: axes must be increasing with at least two samples");
    Grid2D g;
    g.q_axis.resize(nq);
    g.p_axis.resize(np);
    for (std::size_t i = 0; i < nq; ++i)
        g.q_axis[i] = q_min + (q_max - q_min) * static_cast<double>(i) / static_cast<double>(nq - 1);
    for (std::size_t j = 0; j < np; ++j)
        g.p_axis[j] = p_min + (p_max - p_min) * static_cast<double>(j) / static_cast<double>(np - 1);
    g.values.assign(nq * np, 0.0);
    return g;
}

double grid_integral(const Grid2D& g) {
    const std::size_t nq = g.q_axis.size(), np = g.p_axis.size();
    if (nq < 2 || np < 2) throw NumericError("grid_integral: degenerate grid");
    double dq = g.q_axis[1] - g.q_axis[0];
    double dp = g.p_axis[1] - g.p_axis[0];
    double total = 0.0;
    for (std::size_t i = 0; i < nq; ++i) {
        double wq = (i == 0 || i + 1 == nq) ? 0.5 : 1.0;
        for (std::size_t j = 0; j < np; ++j) {
            double wp = (j == 0 || j + 1 == np) ? 0.5 : 1.0;
            total += wq * wp * g.at(i, j);
        }
    }
    return total * dq * dp;
}

// ---------------------------------------------------------------------------

std::vector<Peak> find_peaks(const std::vector<double>& omega,
                             const std::vector<double>& value,
                             double prominence_rel) {
    if (omega.empty() || omega.size() != value.size())
        throw NumericError("find_peaks: empty or mismatched curve");
    const std::size_t n = omega.size();
    if (n < 3) return {};

    double vmax = *std::max_element(value.begin(), value.end());
    double vmin = *std::min_element(value.begin(), value.end());
    double thresh = prominence_rel * (vmax - vmin);

    std::vector<Peak> peaks;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (!(value[i] > value[i - 1] && value[i] >= value[i + 1])) continue;
        // Prominence: drop to the lowest point before a higher sample is met,
        // on each side; the smaller drop is the prominence.
        double left_min = value[i];
        for (std::size_t j = i; j-- > 0;) {
            if (value[j] > value[i]) break;
            left_min = std::min(left_min, value[j]);
        }
        double right_min = value[i];
        for (std::size_t j = i + 1; j < n; ++j) {
            if (value[j] > value[i]) break;
            right_min = std::min(right_min, value[j]);
        }
        double prominence = value[i] - std::max(left_min, right_min);
        if (prominence < thresh) continue;

        // 3-point parabola through the neighbours (non-uniform spacing ok).
        double x0 = omega[i - 1], x1 = omega[i], x2 = omega[i + 1];
        double y0 = value[i - 1], y1 = value[i], y2 = value[i + 1];
        double d0 = (y1 - y0) / (x1 - x0);
        double d1 = (y2 - y1) / (x2 - x1);
        double curv = (d1 - d0) / (x2 - x0);
        Peak p{x1, y1};
        if (curv < 0.0) {
            double xv = 0.5 * (x0 + x1 - d0 / curv);
            if (xv > x0 && xv < x2) {
                double a2 = curv;
                double b2 = d0 - a2 * (x0 + x1);
                double c2 = y0 - (a2 * x0 + b2) * x0;
                p.omega = xv;
                p.height = (a2 * xv + b2) * xv + c2;
            }
        }
        peaks.push_back(p);
    }
    return peaks;
}

}  // namespace geonium::num
