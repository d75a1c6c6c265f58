#pragma once

// Closed-form approximations of the linear-profile layer matrix for small and
// large Airy arguments. The large-argument forms are templates so they can be
// evaluated with complex or extended-precision scalars.

#include <cmath>
#include <complex>

#include "squeeze/errors.hpp"
#include "squeeze/transfer_matrix.hpp"

namespace squeeze {

enum class asymptotic_regime { SMALL_Z, LARGE_Z_OSC, LARGE_Z_EXP, K_FORM };

struct asymptotic_matrix {
    transfer_matrix matrix;
    asymptotic_regime regime;
    double chi;
};

inline asymptotic_matrix lambda_small_z(double z0, double z1, double sigma) {
    if (!(std::abs(z0) < 1 && std::abs(z1) < 1)) throw physics_error("small-z form needs |z0|, |z1| < 1");
    transfer_matrix m{1 - z0 * z0 * z1 / 2, (z1 - z0) / sigma, sigma / 2 * (z1 * z1 - z0 * z0), 1 - z0 * z1 * z1 / 2};
    return {m, asymptotic_regime::SMALL_Z, 0.0};
}

// Oscillatory form, written in terms of w = -z. With a complex T it also
// covers positive z through the principal branches of the fractional powers.
template <class T>
basic_transfer_matrix<T> lambda_oscillatory(const T& z0, const T& z1, const T& sigma) {
    using std::cos;
    using std::pow;
    using std::sin;
    const T w0 = -z0, w1 = -z1;
    const T chi = T(2) / T(3) * (pow(w1, T(1.5)) - pow(w0, T(1.5)));
    const T c = cos(chi), s = sin(chi);
    const T q0 = pow(w0, T(0.25)), q1 = pow(w1, T(0.25));
    const T t0 = pow(w0, T(0.75)), t1 = pow(w1, T(0.75));
    return {
        q0 / q1 * c - s / (T(4) * z0 * q0 * q1),
        -s / (sigma * q0 * q1),
        sigma / (pow(w0, T(0.5)) * pow(w1, T(0.5))) *
            ((t0 * t1 + T(1) / (T(16) * t0 * t1)) * s + (t0 / t1 - t1 / t0) * c / T(4)),
        q1 / q0 * c + s / (T(4) * z1 * q0 * q1),
    };
}

// Exponential form for positive arguments.
template <class T>
basic_transfer_matrix<T> lambda_exponential(const T& z0, const T& z1, const T& sigma) {
    using std::cosh;
    using std::pow;
    using std::sinh;
    const T chi = T(2) / T(3) * (pow(z1, T(1.5)) - pow(z0, T(1.5)));
    const T ch = cosh(chi), sh = sinh(chi);
    const T p = z0 * z1;
    const T p4 = pow(p, T(0.25)), p34 = pow(p, T(0.75));
    return {
        pow(z0 / z1, T(0.25)) * ch + sh / (T(4) * z0 * p4),
        sh / (sigma * p4),
        sigma / pow(p, T(0.5)) * ((p34 - T(1) / (T(16) * p34)) * sh + (pow(z1 / z0, T(0.75)) - pow(z0 / z1, T(0.75))) * ch / T(4)),
        pow(z1 / z0, T(0.25)) * ch - sh / (T(4) * z1 * p4),
    };
}

inline asymptotic_matrix lambda_large_z(double z0, double z1, double sigma) {
    if (!(std::abs(z0) > 1 && std::abs(z1) > 1)) throw physics_error("large-z form needs |z0|, |z1| > 1");
    if ((z0 > 0) != (z1 > 0)) throw physics_error("large-z form needs arguments of the same sign");
    if (z0 < 0) {
        const double chi = 2.0 / 3.0 * (std::pow(-z1, 1.5) - std::pow(-z0, 1.5));
        return {lambda_oscillatory<double>(z0, z1, sigma), asymptotic_regime::LARGE_Z_OSC, chi};
    }
    const double chi = 2.0 / 3.0 * (std::pow(z1, 1.5) - std::pow(z0, 1.5));
    return {lambda_exponential<double>(z0, z1, sigma), asymptotic_regime::LARGE_Z_EXP, chi};
}

template <class T>
T k10_of(const T& k0, const T& k1) {
    return T(2) * (k0 * k0 + k1 * k1 + k0 * k1) / (T(3) * (k0 + k1));
}

// Wave-number form; the diagonal cosines use k10 * l like every other factor.
template <class T>
basic_transfer_matrix<T> lambda_wavenumber(const T& k0, const T& k1, const T& l) {
    using std::cos;
    using std::pow;
    using std::sin;
    using std::sqrt;
    const T k10 = k10_of(k0, k1);
    const T c = cos(k10 * l), s = sin(k10 * l);
    const T d = (k0 * k0 - k1 * k1) / (T(4) * l);
    const T r0 = sqrt(k0), r1 = sqrt(k1);
    return {
        r0 / r1 * c - d * s / (pow(k0, T(2.5)) * r1),
        s / (r0 * r1),
        T(3) * (k0 * k0 - k1 * k1) * (k0 * k0 - k1 * k1) * k10 / (T(8) * l * pow(k0, T(2.5)) * pow(k1, T(2.5))) * c -
            r0 * r1 * (T(1) + d * d / (k0 * k0 * k0 * k1 * k1 * k1)) * s,
        r1 / r0 * c + d * s / (r0 * pow(k1, T(2.5))),
    };
}

// k0sq, k1sq are E - V at the two edges; both positive (well) or both negative (barrier).
inline asymptotic_matrix lambda_k_form(double k0sq, double k1sq, double width) {
    if (!(width > 0)) throw physics_error("k-form needs a positive width");
    const double scale = std::max(std::abs(k0sq), std::abs(k1sq));
    if (std::abs(k0sq) <= 1e-12 * scale || std::abs(k1sq) <= 1e-12 * scale || scale == 0)
        throw physics_error("k-form is singular at grazing energy");
    if ((k0sq > 0) != (k1sq > 0)) throw physics_error("k-form needs both edges propagating or both evanescent");
    if (k0sq > 0) {
        const double k0 = std::sqrt(k0sq), k1 = std::sqrt(k1sq);
        const double chi = (k1sq > k0sq ? 1.0 : (k1sq < k0sq ? -1.0 : 0.0)) * k10_of(k0, k1) * width;
        return {lambda_wavenumber<double>(k0, k1, width), asymptotic_regime::K_FORM, chi};
    }
    using cplx = std::complex<double>;
    const cplx k0 = std::sqrt(cplx(k0sq)), k1 = std::sqrt(cplx(k1sq));
    const auto m = lambda_wavenumber<cplx>(k0, k1, cplx(width));
    const double chi = (k0sq > k1sq ? 1.0 : (k0sq < k1sq ? -1.0 : 0.0)) * std::abs(k10_of(k0, k1)) * width;
    return {{m.l11.real(), m.l12.real(), m.l21.real(), m.l22.real()}, asymptotic_regime::K_FORM, chi};
}

} // namespace squeeze
