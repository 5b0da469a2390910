#pragma once

// Special functions: Gamma/digamma, the Fourier-transform coefficients
// c_PF(s) and c_PF~(s) of the power-law kernels, Bessel J0, the radial
// plane-wave kernel Lambda_d, and the canonical mollifier/truncation bumps
// with their cached radial Fourier transforms.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "licr/quadrature.hpp"

namespace licr {

inline constexpr double kPi = 3.14159265358979323846;

inline double gamma_fn(double s);

// |S^{d-1}| = 2 pi^{d/2} / Gamma(d/2)
inline double surface_area(int d) {
    if (d < 1) throw std::invalid_argument("surface_area: d >= 1");
    return 2.0 * std::pow(kPi, 0.5 * d) / gamma_fn(0.5 * d);
}

// |B(0;r)| in R^d
inline double ball_volume(int d, double r) {
    return std::pow(kPi, 0.5 * d) * std::pow(r, d) / gamma_fn(0.5 * d + 1.0);
}

//------------------------------------------------------------------------
// Gamma and digamma (Lanczos g=7 plus reflection; no table dependence)
//------------------------------------------------------------------------

namespace detail {
inline bool is_nonpositive_integer(double s) {
    return s <= 0.0 && s == std::floor(s);
}
} // namespace detail

inline double gamma_fn(double s) {
    if (detail::is_nonpositive_integer(s))
        throw std::domain_error("gamma_fn: pole at non-positive integer");
    static const double g = 7.0;
    static const std::array<double, 9> c = {
        0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
        771.32342877765313,       -176.61502916214059,   12.507343278686905,
        -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};
    if (s < 0.5) {
        // reflection: Gamma(s) = pi / (sin(pi s) Gamma(1-s))
        return kPi / (std::sin(kPi * s) * gamma_fn(1.0 - s));
    }
    double z = s - 1.0;
    double x = c[0];
    for (int i = 1; i < 9; ++i) x += c[i] / (z + i);
    double t = z + g + 0.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

inline double digamma(double s) {
    if (detail::is_nonpositive_integer(s))
        throw std::domain_error("digamma: pole at non-positive integer");
    if (s < 0.0) {
        // psi(s) = psi(1-s) - pi cot(pi s)
        return digamma(1.0 - s) - kPi / std::tan(kPi * s);
    }
    double acc = 0.0;
    double x = s;
    while (x < 10.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    // asymptotic series; coefficients are -B_{2n}/(2n)
    const double inv = 1.0 / x, inv2 = inv * inv;
    double r = std::log(x) - 0.5 * inv;
    static const std::array<double, 7> b = {
        -1.0 / 12.0, 1.0 / 120.0, -1.0 / 252.0,    1.0 / 240.0,
        -1.0 / 132.0, 691.0 / 32760.0, -1.0 / 12.0};
    double p = inv2;
    for (int k = 0; k < 7; ++k) {
        r += b[k] * p;
        p *= inv2;
    }
    return acc + r;
}

//------------------------------------------------------------------------
// c_PF(s) = pi^{s-d/2} Gamma((d-s)/2) / (Gamma(s/2) s)   for s < d
// with the removable s=0 value pi^{-d/2} Gamma(d/2)/2 and exact zeros at
// s = -2, -4, ... coming from 1/Gamma(s/2).
//------------------------------------------------------------------------

namespace detail {
inline bool is_negative_even_integer(double s) {
    return s < 0.0 && s == std::floor(s) && std::fmod(-s, 2.0) == 0.0;
}
} // namespace detail

inline double c_pf(double s, int d) {
    if (!(s < (double)d)) throw std::domain_error("c_pf: requires s < d (pole at s = d)");
    if (s == 0.0) return std::pow(kPi, -0.5 * d) * gamma_fn(0.5 * d) / 2.0;
    if (detail::is_negative_even_integer(s)) return 0.0;
    return std::pow(kPi, s - 0.5 * d) * gamma_fn(0.5 * (d - s)) / (gamma_fn(0.5 * s) * s);
}

// d/ds c_PF(s).  At the zeros s = -2m the product form has a removable
// limit with closed value (-1)^{m+1} (m!/(4m)) pi^{-2m-d/2} Gamma(d/2+m).
inline double c_pf_prime(double s, int d) {
    if (!(s < (double)d)) throw std::domain_error("c_pf_prime: requires s < d");
    if (s == 0.0) throw std::domain_error("c_pf_prime: s = 0 not supported");
    if (detail::is_negative_even_integer(s)) {
        const int m = (int)std::llround(-s / 2.0);
        double mfact = 1.0;
        for (int j = 2; j <= m; ++j) mfact *= j;
        const double sign = (m % 2 == 0) ? -1.0 : 1.0;
        return sign * (mfact / (4.0 * m)) * std::pow(kPi, s - 0.5 * d) * gamma_fn(0.5 * d + m);
    }
    const double logderiv =
        std::log(kPi) - 0.5 * digamma(0.5 * (d - s)) - 0.5 * digamma(0.5 * s) - 1.0 / s;
    return c_pf(s, d) * logderiv;
}

// c_PF~(s) = c_PF(s)/s + c_PF'(s);  at s = -2m this equals c_PF'(-2m).
inline double c_pf_tilde(double s, int d) {
    if (!(s < (double)d)) throw std::domain_error("c_pf_tilde: requires s < d");
    if (s == 0.0) throw std::domain_error("c_pf_tilde: s = 0 not supported");
    if (detail::is_negative_even_integer(s)) return c_pf_prime(s, d);
    return c_pf(s, d) / s + c_pf_prime(s, d);
}

//------------------------------------------------------------------------
// Bessel J0 (series up to t=16, Hankel asymptotic beyond)
//------------------------------------------------------------------------

inline double bessel_j0(double t) {
    t = std::abs(t);
    if (t <= 16.0) {
        const double q = 0.25 * t * t;
        double term = 1.0, sum = 1.0;
        for (int k = 1; k < 64; ++k) {
            term *= -q / ((double)k * k);
            sum += term;
            if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum))) break;
        }
        return sum;
    }
    // J0(t) = sqrt(2/(pi t)) Re[ e^{i(t - pi/4)} sum_m (-i)^m a_m t^{-m} ]
    static const std::array<double, 8> a = {
        1.0,
        1.0 / 8.0,
        9.0 / 128.0,
        75.0 / 1024.0,
        3675.0 / 32768.0,
        59535.0 / 262144.0,
        2401245.0 / 4194304.0,
        57972915.0 / 33554432.0};
    std::complex<double> mi(0.0, -1.0), z(1.0, 0.0), acc(0.0, 0.0);
    double tm = 1.0;
    for (int m = 0; m < 8; ++m) {
        acc += z * (a[m] * tm);
        z *= mi;
        tm /= t;
    }
    const std::complex<double> phase = std::polar(1.0, t - 0.25 * kPi);
    return std::sqrt(2.0 / (kPi * t)) * (phase * acc).real();
}

//------------------------------------------------------------------------
// Lambda_d(t): normalized angular average of e^{i t <omega, e1>} over S^{d-1}
//   d=1: cos t,  d=2: J0(t),  d=3: sin(t)/t
// bracket_d(t) = Lambda_d(t) - 1 + t^2/(2d): the remainder after the two
// moment-cancelled Taylor terms; evaluated cancellation-free.
//------------------------------------------------------------------------

inline double plane_wave_avg(int d, double t) {
    t = std::abs(t);
    switch (d) {
        case 1: return std::cos(t);
        case 2: return bessel_j0(t);
        case 3:
            if (t < 1e-4) {
                const double t2 = t * t;
                return 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
            }
            return std::sin(t) / t;
        default:
            throw std::invalid_argument("plane_wave_avg: d in {1,2,3} required");
    }
}

inline double plane_wave_bracket(int d, double t) {
    t = std::abs(t);
    if (t >= 1.0) return plane_wave_avg(d, t) - 1.0 + t * t / (2.0 * d);
    // series sum_{k>=2} of the Lambda_d Taylor expansion
    double sum = 0.0;
    double term;
    switch (d) {
        case 1: { // cos: (-1)^k t^{2k}/(2k)!
            term = t * t / 2.0; // k=1 term magnitude
            for (int k = 2; k <= 24; ++k) {
                term *= -t * t / ((2.0 * k) * (2.0 * k - 1.0));
                sum += term;
                if (std::abs(term) < 1e-20) break;
            }
            return sum;
        }
        case 2: { // J0: (-1)^k (t/2)^{2k}/(k!)^2
            const double q = 0.25 * t * t;
            term = -q; // k=1
            for (int k = 2; k <= 24; ++k) {
                term *= -q / ((double)k * k);
                sum += term;
                if (std::abs(term) < 1e-20) break;
            }
            return sum;
        }
        case 3: { // sinc: (-1)^k t^{2k}/(2k+1)!
            term = -t * t / 6.0; // k=1
            for (int k = 2; k <= 24; ++k) {
                term *= -t * t / ((2.0 * k) * (2.0 * k + 1.0));
                sum += term;
                if (std::abs(term) < 1e-20) break;
            }
            return sum;
        }
        default:
            throw std::invalid_argument("plane_wave_bracket: d in {1,2,3} required");
    }
}

//------------------------------------------------------------------------
// Bump profiles.
// Mollifier phi(x) = N_d exp(-1/(1-|x|^2)) on |x|<1 (unit mass).
// Truncation Phi(r) = q(2-r)/(q(2-r)+q(r-1)), q(t) = exp(-1/t), t > 0.
//------------------------------------------------------------------------

enum class BumpKind { mollifier, truncation };

struct BumpProfile {
    BumpKind kind = BumpKind::mollifier;
    double scale = 1.0; // eps for phi_eps, R for Phi_R
    int d = 1;
};

namespace detail {

inline double bump_m(double r) {
    if (r >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - r * r));
}

// s(r) = -1/(1-r^2) and its first four derivatives; u = 1-r^2.
struct BumpS {
    double s1, s2, s3, s4;
};
inline BumpS bump_s_derivs(double r) {
    const double u = 1.0 - r * r;
    const double iu = 1.0 / u, iu2 = iu * iu, iu3 = iu2 * iu, iu4 = iu3 * iu, iu5 = iu4 * iu;
    BumpS s;
    s.s1 = -2.0 * r * iu2;
    s.s2 = -2.0 * iu2 - 8.0 * r * r * iu3;
    s.s3 = -24.0 * r * iu3 - 48.0 * r * r * r * iu4;
    s.s4 = -24.0 * iu3 - 288.0 * r * r * iu4 - 384.0 * r * r * r * r * iu5;
    return s;
}

// derivatives of m(r) = e^{s(r)} up to order 4 (Faa di Bruno)
struct BumpDerivs {
    double f, f1, f2, f3, f4;
};
inline BumpDerivs bump_m_derivs(double r) {
    BumpDerivs o{};
    if (r >= 1.0) return o;
    const double f = bump_m(r);
    const BumpS s = bump_s_derivs(r);
    o.f = f;
    o.f1 = f * s.s1;
    o.f2 = f * (s.s2 + s.s1 * s.s1);
    o.f3 = f * (s.s3 + 3.0 * s.s1 * s.s2 + s.s1 * s.s1 * s.s1);
    o.f4 = f * (s.s4 + 4.0 * s.s1 * s.s3 + 3.0 * s.s2 * s.s2 + 6.0 * s.s1 * s.s1 * s.s2 +
                s.s1 * s.s1 * s.s1 * s.s1);
    return o;
}

inline double q_smooth(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }
inline double q_smooth_d1(double t) { return t > 0.0 ? std::exp(-1.0 / t) / (t * t) : 0.0; }
inline double q_smooth_d2(double t) {
    return t > 0.0 ? std::exp(-1.0 / t) * (1.0 - 2.0 * t) / (t * t * t * t) : 0.0;
}

} // namespace detail

inline double truncation_eval(double r) {
    if (r <= 1.0) return 1.0;
    if (r >= 2.0) return 0.0;
    const double A = detail::q_smooth(2.0 - r), B = detail::q_smooth(r - 1.0);
    return A / (A + B);
}

inline double truncation_d1(double r) {
    if (r <= 1.0 || r >= 2.0) return 0.0;
    const double A = detail::q_smooth(2.0 - r), B = detail::q_smooth(r - 1.0);
    const double A1 = -detail::q_smooth_d1(2.0 - r), B1 = detail::q_smooth_d1(r - 1.0);
    const double den = A + B;
    return (A1 * B - A * B1) / (den * den);
}

inline double truncation_d2(double r) {
    if (r <= 1.0 || r >= 2.0) return 0.0;
    const double A = detail::q_smooth(2.0 - r), B = detail::q_smooth(r - 1.0);
    const double A1 = -detail::q_smooth_d1(2.0 - r), B1 = detail::q_smooth_d1(r - 1.0);
    const double A2 = detail::q_smooth_d2(2.0 - r), B2 = detail::q_smooth_d2(r - 1.0);
    const double den = A + B;
    const double num1 = (A2 * B - A * B2) * den;
    const double num2 = 2.0 * (A1 * B - A * B1) * (A1 + B1);
    return (num1 - num2) / (den * den * den);
}

// Normalizer N_d of the unit mollifier (cached per dimension).
inline double mollifier_norm(int d) {
    static std::map<int, double> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(d);
    if (it == cache.end()) {
        const double I = gauss_panels(
            [&](double r) { return detail::bump_m(r) * std::pow(r, d - 1); }, 0.0, 1.0, 16, 32);
        it = cache.emplace(d, 1.0 / (surface_area(d) * I)).first;
    }
    return it->second;
}

// phi_1 at radius r (unit scale, unit mass in R^d)
inline double mollifier_eval(int d, double r) {
    return mollifier_norm(d) * detail::bump_m(r);
}

inline double bump_eval(const BumpProfile& p, double r) {
    if (r < 0.0) throw std::domain_error("bump_eval: r >= 0 required");
    if (p.kind == BumpKind::mollifier)
        return std::pow(p.scale, -p.d) * mollifier_eval(p.d, r / p.scale);
    return truncation_eval(r / p.scale);
}

//------------------------------------------------------------------------
// Radial Fourier transform in R^d of a radial profile supported on [0,rmax]:
//   fhat(rho) = |S^{d-1}| Int_0^rmax f(r) r^{d-1} Lambda_d(2 pi r rho) dr
// Oscillation-aware composite Gauss panels.
//------------------------------------------------------------------------

template <class F>
double radial_fourier(int d, F&& f, double rmax, double rho, int nodes = 16) {
    const double freq = 2.0 * kPi * rho * rmax; // total phase across [0, rmax]
    int panels = std::max(8, (int)std::ceil(freq / (2.0 * kPi)) * 2);
    if (panels > 4096) panels = 4096;
    const double val = gauss_panels(
        [&](double r) {
            return f(r) * std::pow(r, d - 1) * plane_wave_avg(d, 2.0 * kPi * r * rho);
        },
        0.0, rmax, panels, nodes);
    return surface_area(d) * val;
}

//------------------------------------------------------------------------
// Cached mollifier transform phi_hat(d, x) on a dense grid plus a
// conservative decay tail bound from  |phi_hat| <= ||Lap^2 phi||_L1 /(2 pi x)^4.
//------------------------------------------------------------------------

namespace detail {

struct PhiHatCache {
    UniformTable table;       // phi_hat on [0, xi_max]
    double xi_max = 48.0;
    double t2 = 0.0;          // L1 norm of Lap^2 phi
};

inline double mollifier_lap2_l1(int d) {
    // Lap^2 f = f'''' + 2(d-1) f'''/r + (d-1)(d-3) (f''/r^2 - f'/r^3)
    const double nd = mollifier_norm(d);
    auto lap2 = [&](double r) {
        const BumpDerivs m = bump_m_derivs(r);
        const double c = (double)(d - 1);
        const double e = (double)(d - 1) * (double)(d - 3);
        const double v = m.f4 + 2.0 * c * m.f3 / r + e * (m.f2 / (r * r) - m.f1 / (r * r * r));
        return std::abs(nd * v) * std::pow(r, d - 1);
    };
    const double I = gauss_panels(lap2, 1e-4, 1.0, 64, 24);
    return surface_area(d) * I * 1.05; // small safety margin
}

inline const PhiHatCache& phi_hat_cache(int d) {
    static std::map<int, PhiHatCache> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(d);
    if (it == cache.end()) {
        PhiHatCache c;
        c.t2 = mollifier_lap2_l1(d);
        const double h = 0.002;
        const size_t n = (size_t)std::llround(c.xi_max / h) + 1;
        c.table.x0 = 0.0;
        c.table.dx = h;
        c.table.y.resize(n);
        const double nd = mollifier_norm(d);
        for (size_t i = 0; i < n; ++i) {
            const double rho = i * h;
            c.table.y[i] =
                radial_fourier(d, [&](double r) { return nd * bump_m(r); }, 1.0, rho, 16);
        }
        it = cache.emplace(d, std::move(c)).first;
    }
    return it->second;
}

} // namespace detail

// Upper bound for |phi_hat(d, x)| valid for all x (used for tails/suprema).
inline double phi_hat_bound(int d, double x) {
    const auto& c = detail::phi_hat_cache(d);
    const double q = 4.0 * kPi * kPi * x * x;
    return std::min(1.0, c.t2 / (q * q));
}

// Unit-scale mollifier transform; exact on the grid, 0 beyond xi_max
// (bounded there by phi_hat_bound).
inline double phi_hat(int d, double x) {
    x = std::abs(x);
    const auto& c = detail::phi_hat_cache(d);
    if (x > c.xi_max) return 0.0;
    return c.table(x);
}

inline double phi_hat_ximax(int d) { return detail::phi_hat_cache(d).xi_max; }

//------------------------------------------------------------------------
// Truncation transform cache (unit scale, support [0,2]).
//------------------------------------------------------------------------

namespace detail {
inline const UniformTable& trunc_hat_cache(int d) {
    static std::map<int, UniformTable> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(d);
    if (it == cache.end()) {
        UniformTable t;
        t.x0 = 0.0;
        t.dx = 0.002;
        const double ximax = 32.0;
        const size_t n = (size_t)std::llround(ximax / t.dx) + 1;
        t.y.resize(n);
        for (size_t i = 0; i < n; ++i)
            t.y[i] = radial_fourier(d, [](double r) { return truncation_eval(r); }, 2.0,
                                    i * t.dx, 16);
        it = cache.emplace(d, std::move(t)).first;
    }
    return it->second;
}
} // namespace detail

// Radial Fourier transform of the profile at |xi| = ximag.
inline double bump_fourier(const BumpProfile& p, double ximag) {
    if (ximag < 0.0) throw std::domain_error("bump_fourier: ximag >= 0 required");
    if (p.d >= 1 && p.d <= 3) {
        if (p.kind == BumpKind::mollifier) {
            const double x = p.scale * ximag;
            if (x <= phi_hat_ximax(p.d)) return phi_hat(p.d, x);
            return radial_fourier(
                p.d, [&](double r) { return mollifier_eval(p.d, r); }, 1.0, x, 24);
        }
        const auto& t = detail::trunc_hat_cache(p.d);
        const double x = p.scale * ximag;
        const double v = t.covers(x)
                             ? t(x)
                             : radial_fourier(p.d, [](double r) { return truncation_eval(r); },
                                              2.0, x, 24);
        return std::pow(p.scale, p.d) * v;
    }
    // generic dimension: angular reduction through theta
    const int d = p.d;
    auto profile = [&](double r) {
        return p.kind == BumpKind::mollifier ? mollifier_eval(d, r) : truncation_eval(r);
    };
    const double rmax = p.kind == BumpKind::mollifier ? 1.0 : 2.0;
    const double x = p.scale * ximag;
    const double sd2 = surface_area(d - 1);
    auto inner = [&](double r) {
        const double t = 2.0 * kPi * r * x;
        int panels = std::max(6, (int)std::ceil(t / kPi));
        return sd2 * gauss_panels(
                         [&](double th) {
                             return std::cos(t * std::cos(th)) * std::pow(std::sin(th), d - 2);
                         },
                         0.0, kPi, panels, 16);
    };
    const double val = gauss_panels(
        [&](double r) { return profile(r) * std::pow(r, d - 1) * inner(r); }, 0.0, rmax,
        std::max(8, (int)std::ceil(x * rmax)), 16);
    const double scale = p.kind == BumpKind::mollifier ? 1.0 : std::pow(p.scale, d);
    return scale * val;
}

//------------------------------------------------------------------------
// psi = phi * phi: radial profile of the mollifier self-convolution
// (unit scale; support [0,2]).  Used by the mollified direct energy.
//------------------------------------------------------------------------

namespace detail {

inline double sphere_avg_profile(int d, double t, double r, double (*f)(int, double)) {
    // normalized average of f(|t e1 - r omega|) over omega in S^{d-1}
    if (d == 1) return 0.5 * (f(d, std::abs(t - r)) + f(d, t + r));
    const double norm = std::sqrt(kPi) * gamma_fn(0.5 * (d - 1)) / gamma_fn(0.5 * d);
    const double val = gauss_panels(
        [&](double th) {
            const double s = 2.0 * std::sqrt(t * r) * std::sin(0.5 * th);
            const double dist = std::sqrt((t - r) * (t - r) + s * s);
            return f(d, dist) * std::pow(std::sin(th), d - 2);
        },
        0.0, kPi, 8, 16);
    return val / norm;
}

inline const UniformTable& psi_profile_cache(int d) {
    static std::map<int, UniformTable> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(d);
    if (it == cache.end()) {
        UniformTable t;
        t.x0 = 0.0;
        t.dx = 0.002;
        const size_t n = (size_t)std::llround(2.0 / t.dx) + 1;
        t.y.resize(n);
        for (size_t i = 0; i < n; ++i) {
            const double s = i * t.dx;
            if (d == 1) {
                const double lo = std::max(-1.0, s - 1.0);
                if (lo >= 1.0) {
                    t.y[i] = 0.0;
                    continue;
                }
                t.y[i] = gauss_panels(
                    [&](double y) {
                        return mollifier_eval(1, std::abs(y)) * mollifier_eval(1, std::abs(s - y));
                    },
                    lo, 1.0, 12, 24);
            } else {
                t.y[i] = surface_area(d) *
                         gauss_panels(
                             [&](double r) {
                                 return mollifier_eval(d, r) * std::pow(r, d - 1) *
                                        sphere_avg_profile(d, s, r, &mollifier_eval);
                             },
                             0.0, 1.0, 10, 16);
            }
        }
        it = cache.emplace(d, std::move(t)).first;
    }
    return it->second;
}

} // namespace detail

// (phi * phi)(x) at |x| = t, unit scale.
inline double mollifier_self_convolution(int d, double t) {
    if (t >= 2.0) return 0.0;
    return detail::psi_profile_cache(d)(t);
}

} // namespace licr
