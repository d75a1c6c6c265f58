#pragma once

// Real-argument Airy functions Ai, Bi and their derivatives.
//
// |z| <= crossover: Maclaurin series summed in quadruple precision, so the
// cancellation between the two series at positive z does not cost accuracy.
// |z| >  crossover: the classical asymptotic expansions with the u_k / v_k
// coefficients, truncated at the smallest term.

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

#include "squeeze/errors.hpp"

namespace squeeze {

struct airy_quad {
    double ai;
    double bi;
    double ai_prime;
    double bi_prime;
    double z;
};

// For z > 0: ai = ai_scaled * exp(-exponent), bi = bi_scaled * exp(+exponent),
// and the same for the derivatives. For z <= 0 exponent is zero.
struct scaled_airy_quad {
    double ai_scaled;
    double bi_scaled;
    double ai_prime_scaled;
    double bi_prime_scaled;
    double exponent;
    double z;
};

inline constexpr double airy_crossover = 8.0;

namespace detail {

#if defined(__SIZEOF_FLOAT128__) && !defined(__clang__)
using wide_real = __float128;
#else
using wide_real = long double;
#endif

// Ai(0) and -Ai'(0), sqrt(3), each stored as a double-double pair.
inline wide_real wide_c1() { return wide_real(0.3550280538878172) + wide_real(2.05233632436212e-17); }
inline wide_real wide_c2() { return wide_real(0.2588194037928068) + wide_real(-2.522243111610832e-17); }
inline wide_real wide_sqrt3() { return wide_real(1.7320508075688772) + wide_real(1.0035084221806903e-16); }

inline wide_real wide_abs(wide_real x) { return x < 0 ? -x : x; }

// Maclaurin series: Ai = c1 f - c2 g, Bi = sqrt3 (c1 f + c2 g).
inline airy_quad airy_series(double z_in) {
    const wide_real z = z_in;
    const wide_real z3 = z * z * z;
    wide_real f = 1, fp = 0, g = z, gp = 1;
    wide_real tf = 1, tg = z, tfp = 0, tgp = 1;
    const wide_real eps = wide_real(1e-36);
    for (int k = 1; k < 200; ++k) {
        const wide_real k3 = 3 * k;
        tf = tf * z3 / ((k3 - 1) * k3);
        tg = tg * z3 / (k3 * (k3 + 1));
        tfp = (k == 1) ? z * z / 2 : tfp * z3 / ((k3 - 3) * (k3 - 1));
        tgp = tgp * z3 / (k3 * (k3 - 2));
        f += tf;
        g += tg;
        fp += tfp;
        gp += tgp;
        const wide_real scale = 1 + wide_abs(f) + wide_abs(g) + wide_abs(fp) + wide_abs(gp);
        if (wide_abs(tf) + wide_abs(tg) + wide_abs(tfp) + wide_abs(tgp) < eps * scale) break;
    }
    const wide_real c1 = wide_c1(), c2 = wide_c2(), s3 = wide_sqrt3();
    return airy_quad{
        static_cast<double>(c1 * f - c2 * g),
        static_cast<double>(s3 * (c1 * f + c2 * g)),
        static_cast<double>(c1 * fp - c2 * gp),
        static_cast<double>(s3 * (c1 * fp + c2 * gp)),
        z_in,
    };
}

// Partial sums of the u_k and v_k expansions in powers of 1/zeta.
struct asymptotic_sums {
    double u_plus, u_minus;   // sum u_k / zeta^k and sum (-1)^k u_k / zeta^k
    double v_plus, v_minus;
    double u_even, u_odd;     // sum (-1)^k u_{2k} zeta^{-2k}, sum (-1)^k u_{2k+1} zeta^{-2k-1}
    double v_even, v_odd;
};

inline asymptotic_sums airy_asymptotic_sums(double zeta) {
    asymptotic_sums s{1, 1, 1, 1, 1, 0, 1, 0};
    double u = 1;
    double pw = 1;
    double last = std::numeric_limits<double>::infinity();
    for (int k = 1; k < 60; ++k) {
        u *= double((6 * k - 5) * (6 * k - 3) * (6 * k - 1)) / double((2 * k - 1) * 216 * k);
        const double v = -double(6 * k + 1) / double(6 * k - 1) * u;
        pw /= zeta;
        const double tu = u * pw, tv = v * pw;
        const double mag = std::max(std::abs(tu), std::abs(tv));
        if (mag >= last) break;  // smallest term reached
        last = mag;
        const double alt = (k % 2 == 0) ? 1.0 : -1.0;
        s.u_plus += tu;
        s.v_plus += tv;
        s.u_minus += alt * tu;
        s.v_minus += alt * tv;
        const int half = k / 2;
        const double sgn = (half % 2 == 0) ? 1.0 : -1.0;
        if (k % 2 == 0) {
            s.u_even += sgn * tu;
            s.v_even += sgn * tv;
        } else {
            s.u_odd += sgn * tu;
            s.v_odd += sgn * tv;
        }
        if (mag < 1e-17) break;
    }
    return s;
}

inline double airy_zeta(double x) { return 2.0 / 3.0 * (x * std::sqrt(x)); }

// Asymptotic evaluation in scaled form; valid for |z| large.
inline scaled_airy_quad airy_asymptotic_scaled(double z) {
    constexpr double sqrt_pi = 1.7724538509055160273;
    if (z > 0) {
        const double zeta = airy_zeta(z);
        const double q = std::sqrt(std::sqrt(z));
        const auto s = airy_asymptotic_sums(zeta);
        return scaled_airy_quad{
            s.u_minus / (2 * sqrt_pi * q),
            s.u_plus / (sqrt_pi * q),
            -q * s.v_minus / (2 * sqrt_pi),
            q * s.v_plus / sqrt_pi,
            zeta,
            z,
        };
    }
    const double x = -z;
    const double zeta = airy_zeta(x);
    const double q = std::sqrt(std::sqrt(x));
    const auto s = airy_asymptotic_sums(zeta);
    const double ph = zeta - std::numbers::pi / 4;
    const double c = std::cos(ph), sn = std::sin(ph);
    return scaled_airy_quad{
        (c * s.u_even + sn * s.u_odd) / (sqrt_pi * q),
        (-sn * s.u_even + c * s.u_odd) / (sqrt_pi * q),
        q * (sn * s.v_even - c * s.v_odd) / sqrt_pi,
        q * (c * s.v_even + sn * s.v_odd) / sqrt_pi,
        0.0,
        z,
    };
}

inline double compute_airy_overflow() {
    // Largest z at which max(Bi, Bi') stays finite. Bi' is the larger one there.
    const double log_max = std::log(std::numeric_limits<double>::max());
    double lo = airy_crossover, hi = 1e4;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const auto s = airy_asymptotic_scaled(mid);
        if (std::log(s.bi_prime_scaled) + s.exponent < log_max) lo = mid; else hi = mid;
    }
    return lo;
}

} // namespace detail

// Argument above which unscaled Bi or Bi' is no longer representable.
inline double airy_overflow_argument() {
    static const double z = detail::compute_airy_overflow();
    return z;
}

inline scaled_airy_quad airy_eval_scaled(double z) {
    if (std::abs(z) <= airy_crossover) {
        const auto a = detail::airy_series(z);
        if (z <= 0) return {a.ai, a.bi, a.ai_prime, a.bi_prime, 0.0, z};
        const double zeta = detail::airy_zeta(z);
        const double ep = std::exp(zeta), em = std::exp(-zeta);
        return {a.ai * ep, a.bi * em, a.ai_prime * ep, a.bi_prime * em, zeta, z};
    }
    return detail::airy_asymptotic_scaled(z);
}

inline airy_quad airy_eval(double z) {
    if (std::abs(z) <= airy_crossover) return detail::airy_series(z);
    if (z > airy_overflow_argument()) throw overflow_error("Airy Bi overflows above z = " + std::to_string(airy_overflow_argument()));
    const auto s = detail::airy_asymptotic_scaled(z);
    if (z < 0) return {s.ai_scaled, s.bi_scaled, s.ai_prime_scaled, s.bi_prime_scaled, z};
    const double ep = std::exp(s.exponent), em = std::exp(-s.exponent);
    return {s.ai_scaled * em, s.bi_scaled * ep, s.ai_prime_scaled * em, s.bi_prime_scaled * ep, z};
}

inline double airy_wronskian(const airy_quad& a) { return a.ai * a.bi_prime - a.ai_prime * a.bi; }

} // namespace squeeze
