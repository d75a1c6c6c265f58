#pragma once

// Zero-thickness limits of squeezed layers: classification of single layers,
// the two-layer and three-layer (transistor) limit matrices, and transmission
// through the resulting point interactions.

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "squeeze/errors.hpp"
#include "squeeze/potential.hpp"
#include "squeeze/transfer_matrix.hpp"

namespace squeeze {

enum class limit_kind { TRANSPARENT, DELTA, DELTA_PRIME_FAMILY, RESONANT_DELTA, OPAQUE_WALL };

inline std::string to_string(limit_kind k) {
    switch (k) {
    case limit_kind::TRANSPARENT: return "TRANSPARENT";
    case limit_kind::DELTA: return "DELTA";
    case limit_kind::DELTA_PRIME_FAMILY: return "DELTA_PRIME_FAMILY";
    case limit_kind::RESONANT_DELTA: return "RESONANT_DELTA";
    case limit_kind::OPAQUE_WALL: return "OPAQUE_WALL";
    }
    return "?";
}

struct limit_classification {
    limit_kind kind = limit_kind::TRANSPARENT;
    double alpha = 0;       // nm^-1
    double theta = 1;       // DELTA_PRIME_FAMILY only
    int sign = 1;           // RESONANT_DELTA: (-1)^n
    std::optional<int> n;   // mode number when the limit sits on a resonance
    bool admissible = true; // false when a bias bound of the device is violated

    // Limit connection matrix; empty for the opaque wall.
    std::optional<transfer_matrix> matrix() const {
        switch (kind) {
        case limit_kind::TRANSPARENT: return transfer_matrix::identity();
        case limit_kind::DELTA: return transfer_matrix{1, 0, alpha, 1};
        case limit_kind::DELTA_PRIME_FAMILY: return transfer_matrix{theta, 0, alpha, 1 / theta};
        case limit_kind::RESONANT_DELTA:
            return transfer_matrix{double(sign), 0, sign * alpha, double(sign)};
        case limit_kind::OPAQUE_WALL: return std::nullopt;
        }
        return std::nullopt;
    }
};

inline double delta_transmission(double alpha, double k, double k_right) {
    return 4 * k * k_right / ((k + k_right) * (k + k_right) + alpha * alpha);
}

inline double limit_transmission_on_resonance(double theta, double alpha, double k, double k_right) {
    if (theta == 0) throw physics_error("theta must be nonzero");
    const double s = k / theta + k_right * theta;
    return 4 * k * k_right / (s * s + alpha * alpha);
}

// Depth a of a single P21 well of width d at which the limit transmits.
inline double well_resonance_depth(int n, double d) {
    const double r = n * std::numbers::pi / d;
    return -r * r;
}

namespace detail {

// Nearest mode number n with |phase - n pi| small, if any.
inline std::optional<int> resonant_mode(double phase, double tol = 1e-9) {
    const double n = std::round(phase / std::numbers::pi);
    if (std::abs(phase - n * std::numbers::pi) <= tol * std::max(1.0, std::abs(phase))) return int(n);
    return std::nullopt;
}

} // namespace detail

struct limit_probe_point {
    double epsilon;
    transfer_matrix exact;
    std::optional<double> deviation;  // max element distance to the limit matrix
};

struct layer_limit {
    limit_classification classification;
    std::vector<limit_probe_point> probe;
};

inline limit_classification classify_single_layer(const layer_spec& layer) {
    validate(layer);
    const region r = classify_region(layer.mu, layer.nu);
    constexpr double tol = region_tolerance;
    limit_classification c;
    if (in_s0_closure(r)) {
        // lambda21 ~ d (a eps^{1-mu} + (b/2) eps^{1-nu}); the other elements tend to 1 and 0.
        double lead = std::numeric_limits<double>::infinity();
        if (layer.a != 0) lead = std::min(lead, 1 - layer.mu);
        if (layer.b != 0) lead = std::min(lead, 1 - layer.nu);
        if (!std::isfinite(lead) || lead > tol) {
            c.kind = limit_kind::TRANSPARENT;
        } else if (lead < -tol) {
            c.kind = limit_kind::OPAQUE_WALL;
        } else {
            c.kind = limit_kind::DELTA;
            if (layer.a != 0 && std::abs(1 - layer.mu) <= tol) c.alpha += layer.a * layer.d;
            if (layer.b != 0 && std::abs(1 - layer.nu) <= tol) c.alpha += layer.b / 2 * layer.d;
        }
        return c;
    }
    if (r == region::P21) {
        if (layer.a > 0) {
            c.kind = limit_kind::OPAQUE_WALL;
            return c;
        }
        if (layer.a == 0) {
            if (layer.b == 0) return c;
            throw unsupported_limit_error("P21 layer with a = 0 and b != 0");
        }
        const double kappa = std::sqrt(-layer.a);
        if (auto n = detail::resonant_mode(kappa * layer.d)) {
            c.kind = limit_kind::RESONANT_DELTA;
            c.n = *n;
            c.sign = (*n % 2 == 0) ? 1 : -1;
            c.alpha = 0;
        } else {
            c.kind = limit_kind::OPAQUE_WALL;
        }
        return c;
    }
    throw unsupported_limit_error("(mu, nu) in region " + std::string(to_string(r)));
}

// Classifies the layer and records exact matrices along a decreasing epsilon schedule.
inline layer_limit single_layer_limit(const layer_spec& layer, std::span<const double> epsilon_probe, double energy = 0.0) {
    layer_limit out{classify_single_layer(layer), {}};
    const auto lim = out.classification.matrix();
    structure_spec s{{layer}, 0.0, std::nullopt};
    for (double eps : epsilon_probe) {
        const auto layers = realize(s, eps);
        limit_probe_point p{eps, layer_matrix(layers.front(), energy), std::nullopt};
        if (lim) p.deviation = max_abs_difference(p.exact, *lim);
        out.probe.push_back(p);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Two-layer structures: barrier (a1, b1, d1) followed by a well (a2, b2, d2).

enum class two_layer_mode { DELTA_PRIME, RESONANT_DELTA };

namespace detail {

using cplx = std::complex<double>;

// kappa = sqrt(-shift) on the principal branch: real for wells, i*sqrt(shift) for barriers.
inline cplx kappa_of(double shift) { return std::sqrt(cplx(-shift)); }

// kappa tan(kappa d), real for either branch.
inline double kappa_tan(double shift, double d) {
    if (shift == 0) return 0;
    if (shift > 0) {
        const double s = std::sqrt(shift);
        return -s * std::tanh(s * d);
    }
    const double s = std::sqrt(-shift);
    return s * std::tan(s * d);
}

inline bool powers_are(const layer_spec& l, double mu, double nu) {
    return std::abs(l.mu - mu) <= region_tolerance && std::abs(l.nu - nu) <= region_tolerance;
}

} // namespace detail

// Residual of kappa1 tan(kappa1 d1) + kappa2 tan(kappa2 d2) = 0 scaled by its terms.
inline double deltaprime_2layer_scaled_residual(double a1, double a2, double b1, double d1, double d2) {
    const double t1 = detail::kappa_tan(a1, d1);
    const double t2 = detail::kappa_tan(a2 + b1, d2);
    const double scale = std::abs(t1) + std::abs(t2);
    return scale == 0 ? 0.0 : std::abs(t1 + t2) / scale;
}

// alpha = (kappa2 g1 - kappa1 g2) sin(kappa1 d1) sin(kappa2 d2), complex-branch evaluation.
inline double deltaprime_2layer_alpha(double a1, double b1, double d1, double a2, double b2, double d2) {
    using detail::cplx;
    const cplx k1 = detail::kappa_of(a1), k2 = detail::kappa_of(a2 + b1);
    const cplx g1 = b1 / (4.0 * k1 * k1 * k1 * d1);
    const cplx g2 = b2 / (4.0 * k2 * k2 * k2 * d2);
    return ((k2 * g1 - k1 * g2) * std::sin(k1 * d1) * std::sin(k2 * d2)).real();
}

inline double deltaprime_2layer_theta(double a1, double b1, double d1, double a2, double d2) {
    using detail::cplx;
    const cplx k1 = detail::kappa_of(a1), k2 = detail::kappa_of(a2 + b1);
    return (std::cos(k1 * d1) / std::cos(k2 * d2)).real();
}

inline limit_classification two_layer_limit(const structure_spec& spec, two_layer_mode mode, double tol = 1e-9) {
    validate(spec);
    if (spec.layers.size() != 2) throw config_error("two-layer limit needs exactly two layers");
    const auto& l1 = spec.layers[0];
    const auto& l2 = spec.layers[1];
    limit_classification c;
    c.admissible = -l1.b < l1.a;
    if (mode == two_layer_mode::DELTA_PRIME) {
        if (!detail::powers_are(l1, 2, 1) || !detail::powers_are(l2, 2, 1))
            throw config_error("delta-prime mode needs mu = 2, nu = 1 in both layers");
        if (deltaprime_2layer_scaled_residual(l1.a, l2.a, l1.b, l1.d, l2.d) > tol) {
            c.kind = limit_kind::OPAQUE_WALL;
            return c;
        }
        c.kind = limit_kind::DELTA_PRIME_FAMILY;
        c.theta = deltaprime_2layer_theta(l1.a, l1.b, l1.d, l2.a, l2.d);
        c.alpha = deltaprime_2layer_alpha(l1.a, l1.b, l1.d, l2.a, l2.b, l2.d);
        return c;
    }
    if (!detail::powers_are(l1, 1, 1) || !detail::powers_are(l2, 2, 1))
        throw config_error("resonant-delta mode needs (mu, nu) = (1, 1) then (2, 1)");
    const double shift2 = l2.a + l1.b;
    if (shift2 > 0) {
        c.kind = limit_kind::OPAQUE_WALL;
        return c;
    }
    const auto n = detail::resonant_mode(std::sqrt(-shift2) * l2.d, tol);
    if (!n) {
        c.kind = limit_kind::OPAQUE_WALL;
        return c;
    }
    c.kind = limit_kind::RESONANT_DELTA;
    c.n = *n;
    c.sign = (*n % 2 == 0) ? 1 : -1;
    c.alpha = (l1.a + l1.b / 2) * l1.d;
    return c;
}

// ---------------------------------------------------------------------------
// Transistor: barrier a1 (bias -V_EB), flat region of width d2 at -V_EB,
// barrier a3 - V_EB (bias -V_CB).

struct transistor_params {
    double a1 = 0;
    double a3 = 0;
    double d1 = 1;
    double d2 = 1;
    double d3 = 1;
    double v_cb = 0;
};

inline bool transistor_admissible(const transistor_params& p, double v_eb) {
    return v_eb > 0 && v_eb < std::min(p.a1, p.a3 - p.v_cb);
}

inline double transistor_delta_alpha(const transistor_params& p, double v_eb) {
    return (p.a1 - v_eb / 2) * p.d1 + (p.a3 - v_eb - p.v_cb / 2) * p.d3;
}

inline limit_classification transistor_delta_limit(const transistor_params& p, double v_eb, double v_cb, double tol = 1e-9) {
    limit_classification c;
    transistor_params q = p;
    q.v_cb = v_cb;
    c.admissible = transistor_admissible(q, v_eb);
    const auto n = v_eb > 0 ? detail::resonant_mode(std::sqrt(v_eb) * p.d2, tol) : std::nullopt;
    if (!n || *n < 1) {
        c.kind = limit_kind::OPAQUE_WALL;
        return c;
    }
    c.kind = limit_kind::RESONANT_DELTA;
    c.n = *n;
    c.sign = (*n % 2 == 0) ? 1 : -1;
    c.alpha = transistor_delta_alpha(q, v_eb);
    return c;
}

struct theta_representations {
    double i1, i2, j1, j2;

    double spread() const { return std::abs(i1 - i2) + std::abs(j1 - j2) + std::abs(i1 * j1 - 1); }
};

namespace detail {

struct transistor_kappas {
    cplx k1, k2, k3;
    cplx s1, s2, s3, c1, c2, c3;
};

inline transistor_kappas transistor_trig(const transistor_params& p, double v_eb) {
    transistor_kappas t;
    t.k1 = kappa_of(p.a1);
    t.k2 = kappa_of(-v_eb);
    t.k3 = kappa_of(p.a3 - v_eb);
    t.s1 = std::sin(t.k1 * p.d1), t.c1 = std::cos(t.k1 * p.d1);
    t.s2 = std::sin(t.k2 * p.d2), t.c2 = std::cos(t.k2 * p.d2);
    t.s3 = std::sin(t.k3 * p.d3), t.c3 = std::cos(t.k3 * p.d3);
    return t;
}

} // namespace detail

// Residual of (k1 k3 / k2) prod tan(k_i d_i) = sum k_i tan(k_i d_i), scaled by
// the sum of magnitudes of its four terms.
inline double transistor_deltaprime_scaled_residual(const transistor_params& p, double v_eb) {
    const auto t = detail::transistor_trig(p, v_eb);
    const auto tn1 = t.s1 / t.c1, tn2 = t.s2 / t.c2, tn3 = t.s3 / t.c3;
    const detail::cplx lhs = t.k1 * t.k3 / t.k2 * tn1 * tn2 * tn3;
    const detail::cplx r1 = t.k1 * tn1, r2 = t.k2 * tn2, r3 = t.k3 * tn3;
    const double scale = std::abs(lhs) + std::abs(r1) + std::abs(r2) + std::abs(r3);
    return scale == 0 ? 0.0 : std::abs(lhs - r1 - r2 - r3) / scale;
}

inline theta_representations transistor_theta_representations(const transistor_params& p, double v_eb) {
    const auto t = detail::transistor_trig(p, v_eb);
    const auto i1 = (t.c1 * t.c2 - t.k1 / t.k2 * t.s1 * t.s2) / t.c3;
    const auto i2 = -(t.k1 * t.s1 * t.c2 + t.k2 * t.c1 * t.s2) / (t.k3 * t.s3);
    const auto j1 = (t.c2 * t.c3 - t.k3 / t.k2 * t.s2 * t.s3) / t.c1;
    const auto j2 = -(t.k2 * t.s2 * t.c3 + t.k3 * t.c2 * t.s3) / (t.k1 * t.s1);
    return {i1.real(), i2.real(), j1.real(), j2.real()};
}

// Off-diagonal limit element on the resonance set, real closed form.
inline double transistor_deltaprime_alpha(const transistor_params& p, double v_eb) {
    const double r1 = std::sqrt(p.a1), r3 = std::sqrt(p.a3 - v_eb), r2 = std::sqrt(v_eb);
    const double sh1 = std::sinh(r1 * p.d1), ch1 = std::cosh(r1 * p.d1);
    const double sh3 = std::sinh(r3 * p.d3), ch3 = std::cosh(r3 * p.d3);
    const double sn2 = std::sin(r2 * p.d2), cs2 = std::cos(r2 * p.d2);
    return std::pow(p.a1, -1.5) * (v_eb / (4 * p.d1)) * sh1 * (r2 * ch3 * sn2 - r3 * sh3 * cs2) -
           std::pow(p.a3 - v_eb, -1.5) * (p.v_cb / (4 * p.d3)) * sh3 * (r2 * ch1 * sn2 - r1 * sh1 * cs2);
}

inline limit_classification transistor_deltaprime_limit(const transistor_params& p, double v_eb_root, double v_cb,
                                                         double tol = 1e-9) {
    transistor_params q = p;
    q.v_cb = v_cb;
    if (!(v_eb_root > 0 && v_eb_root < q.a3)) throw physics_error("V_EB must lie in (0, a3)");
    if (transistor_deltaprime_scaled_residual(q, v_eb_root) > tol) throw physics_error("V_EB is not a root of the resonance condition");
    const auto reps = transistor_theta_representations(q, v_eb_root);
    const double ref = std::abs(reps.i1);
    const double inv_j1 = 1 / reps.j1, inv_j2 = 1 / reps.j2;
    for (double v : {reps.i2, inv_j1, inv_j2})
        if (std::abs(v - reps.i1) > 1e-8 * ref) throw physics_error("theta representations disagree: not a root");
    limit_classification c;
    c.kind = limit_kind::DELTA_PRIME_FAMILY;
    c.theta = reps.i1;
    c.alpha = transistor_deltaprime_alpha(q, v_eb_root);
    c.admissible = transistor_admissible(q, v_eb_root);
    return c;
}

} // namespace squeeze
