#pragma once

// Gauss-Legendre rules and composite/graded panel integration helpers.

#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace licr {

struct GaussRule {
    std::vector<double> x; // nodes on [-1,1]
    std::vector<double> w;
};

namespace detail {

// Newton iteration on P_n via the Bonnet recurrence.
inline GaussRule make_gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n >= 1 required");
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    const int m = (n + 1) / 2;
    for (int k = 0; k < m; ++k) {
        double x = std::cos(3.14159265358979323846 * (k + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.x[k] = -x;
        r.x[n - 1 - k] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        r.w[k] = w;
        r.w[n - 1 - k] = w;
    }
    return r;
}

} // namespace detail

// Cached rules; cache is append-only and guarded, readers get stable references.
inline const GaussRule& gauss_legendre(int n) {
    static std::map<int, GaussRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, detail::make_gauss_legendre(n)).first;
    return it->second;
}

template <class F>
double gauss(F&& f, double a, double b, int n) {
    const GaussRule& r = gauss_legendre(n);
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += r.w[i] * f(c + h * r.x[i]);
    return s * h;
}

// Equal panels over [a,b].
template <class F>
double gauss_panels(F&& f, double a, double b, int panels, int n) {
    double s = 0.0;
    const double h = (b - a) / panels;
    for (int k = 0; k < panels; ++k) s += gauss(f, a + k * h, a + (k + 1) * h, n);
    return s;
}

// Geometric panels accumulating toward `a`: covers [a + (b-a) q^levels, b].
// Handles integrable algebraic endpoint singularities at `a`.
template <class F>
double gauss_graded_lo(F&& f, double a, double b, double q, int levels, int n) {
    double s = 0.0;
    const double len = b - a;
    double hi = b;
    for (int k = 1; k <= levels; ++k) {
        double lo = a + len * std::pow(q, k);
        s += gauss(f, lo, hi, n);
        hi = lo;
    }
    return s;
}

// Geometric panels toward `b`.
template <class F>
double gauss_graded_hi(F&& f, double a, double b, double q, int levels, int n) {
    double s = 0.0;
    const double len = b - a;
    double lo = a;
    for (int k = 1; k <= levels; ++k) {
        double hi = b - len * std::pow(q, k);
        s += gauss(f, lo, hi, n);
        lo = hi;
    }
    return s;
}

// Natural cubic-spline-free interpolation table: uniform grid + Catmull-Rom.
struct UniformTable {
    double x0 = 0.0, dx = 1.0;
    std::vector<double> y;

    bool covers(double x) const { return x >= x0 && x <= x0 + dx * (double)(y.size() - 1); }

    double operator()(double x) const {
        const size_t n = y.size();
        double t = (x - x0) / dx;
        if (t <= 0.0) return y.front();
        if (t >= (double)(n - 1)) return y.back();
        size_t i = (size_t)t;
        if (i == 0) i = 1;
        if (i > n - 3) i = n - 3;
        double u = t - (double)i;
        const double ym = y[i - 1], y0 = y[i], y1 = y[i + 1], y2 = y[i + 2];
        // Catmull-Rom
        const double a0 = -0.5 * ym + 1.5 * y0 - 1.5 * y1 + 0.5 * y2;
        const double a1 = ym - 2.5 * y0 + 2.0 * y1 - 0.5 * y2;
        const double a2 = -0.5 * ym + 0.5 * y1;
        return ((a0 * u + a1) * u + a2) * u + y0;
    }
};

// Golden-section minimization of a unimodal scalar function on [a,b].
template <class F>
double golden_min(F&& f, double a, double b, double tol = 1e-12, int maxit = 200) {
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < maxit && (b - a) > tol * (1.0 + std::abs(a) + std::abs(b)); ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

} // namespace licr
