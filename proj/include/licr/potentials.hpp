#pragma once

// Interaction kernels W(|x|): power-law W_{a,b} = |x|^a/a - |x|^b/b,
// logarithmic power-law W_{b,ln} = (|x|^b/b) ln|x|, the pure repulsive
// branch -|x|^b/b and the truncated difference (|x|^a - |x|^4) Phi(x).
// Radial derivatives, Laplacians and Fourier transforms.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "licr/specfun.hpp"

namespace licr {

// thrown where the Fourier representation of a kernel does not exist at the
// level the operation needs (maps to CLI exit code 3)
struct unsupported_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class PotentialKind { power, logpower, repulsive, truncated_diff };

struct PotentialSpec {
    PotentialKind kind = PotentialKind::power;
    double a = 0.0;
    double b = 0.0;
    int d = 1;

    void validate() const {
        if (d < 1) throw std::invalid_argument("PotentialSpec: d >= 1 required");
        switch (kind) {
            case PotentialKind::power:
                // |x|^0/0 is read as ln|x|, so b = 0 is allowed
                if (!(b > -(double)d && b < a))
                    throw std::invalid_argument("PotentialSpec: power requires -d < b < a");
                break;
            case PotentialKind::logpower:
                if (!(b > -(double)d) || b == 0.0)
                    throw std::invalid_argument("PotentialSpec: logpower requires b > -d, b != 0");
                break;
            case PotentialKind::repulsive:
                if (!(b > -(double)d))
                    throw std::invalid_argument("PotentialSpec: repulsive requires b > -d");
                break;
            case PotentialKind::truncated_diff:
                if (!(a > 4.0))
                    throw std::invalid_argument("PotentialSpec: truncated_diff requires a > 4");
                break;
        }
    }
};

inline PotentialSpec power_law(double a, double b, int d) {
    PotentialSpec p{PotentialKind::power, a, b, d};
    p.validate();
    return p;
}
inline PotentialSpec log_power(double b, int d) {
    PotentialSpec p{PotentialKind::logpower, 0.0, b, d};
    p.validate();
    return p;
}
inline PotentialSpec repulsive_only(double b, int d) {
    PotentialSpec p{PotentialKind::repulsive, 0.0, b, d};
    p.validate();
    return p;
}
inline PotentialSpec truncated_diff(double a, int d) {
    PotentialSpec p{PotentialKind::truncated_diff, a, 0.0, d};
    p.validate();
    return p;
}

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// W(0) as a limit; +inf encodes a singular origin.
inline double w_at_zero(const PotentialSpec& p) {
    switch (p.kind) {
        case PotentialKind::power:
            return p.b > 0.0 ? 0.0 : kInf; // -|x|^b/b -> +inf for b <= 0 (ln for b=0)
        case PotentialKind::logpower:
            return p.b > 0.0 ? 0.0 : kInf;
        case PotentialKind::repulsive:
            return p.b > 0.0 ? 0.0 : kInf;
        case PotentialKind::truncated_diff:
            return 0.0;
    }
    return 0.0;
}

// attractive-part exponent used by expm1 near a = 4
inline double w_eval(const PotentialSpec& p, double r) {
    if (r < 0.0) throw std::domain_error("w_eval: r >= 0 required");
    if (r == 0.0) return w_at_zero(p);
    switch (p.kind) {
        case PotentialKind::power: {
            const double rep = (p.b == 0.0) ? std::log(r) : std::pow(r, p.b) / p.b;
            return std::pow(r, p.a) / p.a - rep;
        }
        case PotentialKind::logpower:
            return std::pow(r, p.b) / p.b * std::log(r);
        case PotentialKind::repulsive:
            return (p.b == 0.0) ? -std::log(r) : -std::pow(r, p.b) / p.b;
        case PotentialKind::truncated_diff: {
            if (r >= 2.0) return 0.0;
            // r^a - r^4 = r^4 expm1((a-4) ln r): stable for a near 4
            const double diff = std::pow(r, 4.0) * std::expm1((p.a - 4.0) * std::log(r));
            return diff * truncation_eval(r);
        }
    }
    return 0.0;
}

// W'(r); gradient is W'(|x|) x/|x|
inline double w_grad_radial(const PotentialSpec& p, double r) {
    if (!(r > 0.0)) throw std::domain_error("w_grad_radial: r > 0 required");
    switch (p.kind) {
        case PotentialKind::power: {
            const double rep = (p.b == 0.0) ? 1.0 / r : std::pow(r, p.b - 1.0);
            return std::pow(r, p.a - 1.0) - rep;
        }
        case PotentialKind::logpower:
            return std::pow(r, p.b - 1.0) * (std::log(r) + 1.0 / p.b);
        case PotentialKind::repulsive:
            return (p.b == 0.0) ? -1.0 / r : -std::pow(r, p.b - 1.0);
        case PotentialKind::truncated_diff: {
            if (r >= 2.0) return 0.0;
            const double lr = std::log(r);
            const double diff = std::pow(r, 4.0) * std::expm1((p.a - 4.0) * lr);
            const double ddiff = p.a * std::pow(r, p.a - 1.0) - 4.0 * std::pow(r, 3.0);
            return ddiff * truncation_eval(r) + diff * truncation_d1(r);
        }
    }
    return 0.0;
}

// Laplacian at radius r via W'' + (d-1) W'/r
inline double w_laplacian(const PotentialSpec& p, double r) {
    if (!(r > 0.0)) throw std::domain_error("w_laplacian: r > 0 required");
    const int d = p.d;
    switch (p.kind) {
        case PotentialKind::power: {
            const double att = (p.a + d - 2.0) * std::pow(r, p.a - 2.0);
            const double rep = (p.b == 0.0) ? (2.0 - d) / (r * r)
                                            : (p.b + d - 2.0) * std::pow(r, p.b - 2.0);
            // Lap(-ln r) = (2-d)/r^2
            return att - rep;
        }
        case PotentialKind::logpower:
            return (p.b + d - 2.0) * std::pow(r, p.b - 2.0) * std::log(r) +
                   (2.0 * p.b + d - 2.0) / p.b * std::pow(r, p.b - 2.0);
        case PotentialKind::repulsive:
            return (p.b == 0.0) ? (2.0 - d) / (r * r)
                                : -(p.b + d - 2.0) * std::pow(r, p.b - 2.0);
        case PotentialKind::truncated_diff: {
            if (r >= 2.0) return 0.0;
            const double f = std::pow(r, 4.0) * std::expm1((p.a - 4.0) * std::log(r));
            const double f1 = p.a * std::pow(r, p.a - 1.0) - 4.0 * std::pow(r, 3.0);
            const double f2 =
                p.a * (p.a - 1.0) * std::pow(r, p.a - 2.0) - 12.0 * std::pow(r, 2.0);
            const double g = truncation_eval(r), g1 = truncation_d1(r), g2 = truncation_d2(r);
            const double w2 = f2 * g + 2.0 * f1 * g1 + f * g2;
            const double w1 = f1 * g + f * g1;
            return w2 + (d - 1.0) * w1 / r;
        }
    }
    return 0.0;
}

// Radial Fourier transform W^(|xi|).
//   power:    c_PF(-b)|xi|^{-d-b} - c_PF(-a)|xi|^{-d-a}   (level 2 for a < 4)
//   logpower: c~PF(-b)|xi|^{-d-b} + c_PF(-b)|xi|^{-d-b} ln|xi|
//   repulsive: c_PF(-b)|xi|^{-d-b}
inline double w_hat(const PotentialSpec& p, double ximag) {
    if (!(ximag > 0.0)) throw std::domain_error("w_hat: ximag > 0 required");
    const int d = p.d;
    switch (p.kind) {
        case PotentialKind::power: {
            if (p.a >= 4.0)
                throw unsupported_error(
                    "w_hat: |x|^a with a >= 4 is not Fourier representable at level 2");
            return c_pf(-p.b, d) * std::pow(ximag, -(double)d - p.b) -
                   c_pf(-p.a, d) * std::pow(ximag, -(double)d - p.a);
        }
        case PotentialKind::logpower: {
            if (p.b >= 4.0)
                throw unsupported_error(
                    "w_hat: W_{b,ln} with b >= 4 is not Fourier representable at level 2");
            const double s = std::pow(ximag, -(double)d - p.b);
            return c_pf_tilde(-p.b, d) * s + c_pf(-p.b, d) * s * std::log(ximag);
        }
        case PotentialKind::repulsive: {
            if (p.b >= 4.0)
                throw unsupported_error("w_hat: repulsive b >= 4 not representable at level 2");
            return c_pf(-p.b, d) * std::pow(ximag, -(double)d - p.b);
        }
        case PotentialKind::truncated_diff:
            throw unsupported_error(
                "w_hat: truncated kernel handled by the eta estimate, not a closed form");
    }
    return 0.0;
}

// moment-vanishing order needed for the Fourier energy representation
inline int fourier_level(const PotentialSpec& p) {
    switch (p.kind) {
        case PotentialKind::power:
            if (p.a >= 4.0) throw unsupported_error("fourier_level: power a >= 4 unsupported");
            return 2;
        case PotentialKind::logpower:
        case PotentialKind::repulsive: {
            if (p.b >= 4.0) throw unsupported_error("fourier_level: b >= 4 unsupported");
            if (p.b < 0.0) return 0;
            if (p.b < 2.0) return 1;
            return 2;
        }
        case PotentialKind::truncated_diff:
            throw unsupported_error("fourier_level: truncated kernel unsupported");
    }
    return 2;
}

inline std::string potential_name(const PotentialSpec& p) {
    switch (p.kind) {
        case PotentialKind::power:
            return "W_{" + std::to_string(p.a) + "," + std::to_string(p.b) + "}";
        case PotentialKind::logpower: return "W_{" + std::to_string(p.b) + ",ln}";
        case PotentialKind::repulsive: return "-|x|^" + std::to_string(p.b) + "/b";
        case PotentialKind::truncated_diff:
            return "(|x|^" + std::to_string(p.a) + "-|x|^4)Phi";
    }
    return "?";
}

} // namespace licr
