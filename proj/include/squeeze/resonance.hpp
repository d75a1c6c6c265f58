#pragma once

// Resonance sets of the squeezed two-layer and transistor devices: closed forms
// where they exist, bracketing root search for the transcendental conditions.
//
// Root values are the externally tuned drive: -b1 for the barrier-well device,
// V_EB for the transistor. Search intervals are given in the same quantity.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "squeeze/errors.hpp"
#include "squeeze/point_limits.hpp"

namespace squeeze {

enum class resonance_equation {
    EQ69_DELTAPRIME_2LAYER,
    EQ73_DELTA_BARRIER_WELL,
    EQ76_TRANSISTOR_DELTA,
    EQ83_TRANSISTOR_DELTAPRIME,
};

inline std::string_view to_string(resonance_equation e) {
    switch (e) {
    case resonance_equation::EQ69_DELTAPRIME_2LAYER: return "EQ69_DELTAPRIME_2LAYER";
    case resonance_equation::EQ73_DELTA_BARRIER_WELL: return "EQ73_DELTA_BARRIER_WELL";
    case resonance_equation::EQ76_TRANSISTOR_DELTA: return "EQ76_TRANSISTOR_DELTA";
    case resonance_equation::EQ83_TRANSISTOR_DELTAPRIME: return "EQ83_TRANSISTOR_DELTAPRIME";
    }
    return "?";
}

inline std::optional<resonance_equation> parse_resonance_equation(std::string_view s) {
    for (auto e : {resonance_equation::EQ69_DELTAPRIME_2LAYER, resonance_equation::EQ73_DELTA_BARRIER_WELL,
                   resonance_equation::EQ76_TRANSISTOR_DELTA, resonance_equation::EQ83_TRANSISTOR_DELTAPRIME}) {
        const auto full = to_string(e);
        if (s == full || s == full.substr(0, 4)) return e;
    }
    return std::nullopt;
}

struct interval {
    double lo;
    double hi;
};

struct resonance_root {
    int n;
    double value;                 // nm^-2
    std::optional<double> theta;
    double alpha;                 // nm^-1
    double trans_prob;            // at the reference energy; NaN if a lead is evanescent there
    bool admissible;
    double residual;              // scaled residual in the defining equation
};

struct resonance_set {
    resonance_equation equation_id;
    std::vector<resonance_root> roots;
};

// Barrier (a1, d1) with bias b1 = -drive, followed by a well (a2, b2, d2).
struct barrier_well_params {
    double a1 = 0;
    double a2 = 0;
    double d1 = 1;
    double d2 = 1;
    double b2 = 0;
};

// ---------------------------------------------------------------------------
// Generic bracketing root finder.

struct scan_options {
    int steps = 2048;  // per pole-free subinterval
};

// Roots of f in [lo, hi]. The poles split the interval first; each piece is
// scanned uniformly and every sign change is bisected to full double precision.
inline std::vector<double> find_roots(const std::function<double(double)>& f, double lo, double hi,
                                      std::vector<double> poles = {}, scan_options opt = {}) {
    std::vector<double> roots;
    if (!(hi > lo)) return roots;
    std::vector<double> cuts{lo};
    std::sort(poles.begin(), poles.end());
    for (double p : poles)
        if (p > lo && p < hi) cuts.push_back(p);
    cuts.push_back(hi);

    auto bisect = [&](double a, double b, double fa) {
        for (int it = 0; it < 2000; ++it) {
            const double m = 0.5 * (a + b);
            if (m <= a || m >= b) break;
            const double fm = f(m);
            if (fm == 0) return m;
            if ((fm < 0) == (fa < 0)) {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
        }
        return 0.5 * (a + b);
    };

    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
        const double a = cuts[c], b = cuts[c + 1];
        const double len = b - a;
        // Stay off the pole itself; keep the true interval ends.
        const double lo_s = (c == 0) ? a : a + 1e-12 * len;
        const double hi_s = (c + 2 == cuts.size()) ? b : b - 1e-12 * len;
        const int n = opt.steps;
        double x_prev = lo_s, f_prev = f(lo_s);
        if (f_prev == 0) roots.push_back(x_prev);
        for (int j = 1; j <= n; ++j) {
            const double x = (j == n) ? hi_s : lo_s + (hi_s - lo_s) * j / n;
            const double fx = f(x);
            if (fx == 0) {
                roots.push_back(x);
            } else if (f_prev != 0 && std::isfinite(f_prev) && std::isfinite(fx) && (fx < 0) != (f_prev < 0)) {
                roots.push_back(bisect(x_prev, x, f_prev));
            }
            x_prev = x;
            f_prev = fx;
        }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

// Points where tan(sqrt(u - shift) * d) has poles, for u in [lo, hi].
inline std::vector<double> tan_poles_in(double shift, double d, double lo, double hi) {
    std::vector<double> out;
    for (int m = 0;; ++m) {
        const double w = (m + 0.5) * std::numbers::pi / d;
        const double u = shift + w * w;
        if (u > hi) break;
        if (u > lo) out.push_back(u);
    }
    return out;
}

namespace detail {

inline double propagating_k(double energy, double v) {
    return energy > v ? std::sqrt(energy - v) : std::numeric_limits<double>::quiet_NaN();
}

inline double on_resonance_transmission(double theta, double alpha, double energy, double v_left, double v_right) {
    const double k = propagating_k(energy, v_left), kr = propagating_k(energy, v_right);
    if (std::isnan(k) || std::isnan(kr)) return std::numeric_limits<double>::quiet_NaN();
    return limit_transmission_on_resonance(theta, alpha, k, kr);
}

} // namespace detail

// ---------------------------------------------------------------------------
// Closed forms.

// Well bottom a2 + b1 = -(n pi / d2)^2, i.e. drive -b1 = a2 + (n pi / d2)^2.
inline resonance_set resonances_delta_barrier_well(const barrier_well_params& p, interval drive, double energy) {
    if (!(p.d2 > 0)) throw config_error("d2 must be positive");
    resonance_set out{resonance_equation::EQ73_DELTA_BARRIER_WELL, {}};
    if (!(drive.hi >= drive.lo)) return out;
    for (int n = 1;; ++n) {
        const double w = n * std::numbers::pi / p.d2;
        const double u = p.a2 + w * w;
        if (u > drive.hi) break;
        if (u < drive.lo) continue;
        const double b1 = -u;
        resonance_root r{};
        r.n = n;
        r.value = u;
        r.alpha = (p.a1 + b1 / 2) * p.d1;
        r.trans_prob = detail::on_resonance_transmission(1.0, r.alpha, energy, 0.0, b1 + p.b2);
        r.admissible = u > 0 && u < p.a1;
        r.residual = std::abs(std::sin(std::sqrt(u - p.a2) * p.d2));
        out.roots.push_back(r);
    }
    return out;
}

inline resonance_set resonances_transistor_delta(const transistor_params& p, double v_eb_max, double energy) {
    if (!(p.d2 > 0)) throw config_error("d2 must be positive");
    resonance_set out{resonance_equation::EQ76_TRANSISTOR_DELTA, {}};
    for (int n = 1;; ++n) {
        const double w = n * std::numbers::pi / p.d2;
        const double v = w * w;
        if (v > v_eb_max) break;
        resonance_root r{};
        r.n = n;
        r.value = v;
        r.alpha = transistor_delta_alpha(p, v);
        r.trans_prob = detail::on_resonance_transmission(1.0, r.alpha, energy, 0.0, -v - p.v_cb);
        r.admissible = transistor_admissible(p, v);
        r.residual = std::abs(std::sin(std::sqrt(v) * p.d2));
        out.roots.push_back(r);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Transcendental conditions.

// sqrt(a1) tanh(sqrt(a1) d1) - w tan(w d2), w = sqrt(drive - a2): the two terms.
inline std::pair<double, double> deltaprime_2layer_terms(const barrier_well_params& p, double drive) {
    const double r1 = std::sqrt(p.a1);
    const double w = std::sqrt(drive - p.a2);
    return {r1 * std::tanh(r1 * p.d1), w * std::tan(w * p.d2)};
}

inline double deltaprime_2layer_function(const barrier_well_params& p, double drive) {
    const auto [t1, t2] = deltaprime_2layer_terms(p, drive);
    return t1 - t2;
}

// Closed forms of theta_n and alpha_n for a barrier a1 > 0 and a well a2 + b1 < 0.
inline double deltaprime_2layer_theta_closed(const barrier_well_params& p, double drive) {
    return std::cosh(std::sqrt(p.a1) * p.d1) / std::cos(std::sqrt(drive - p.a2) * p.d2);
}

inline double deltaprime_2layer_alpha_closed(const barrier_well_params& p, double drive) {
    const double b1 = -drive;
    const double w2 = drive - p.a2;  // |a2 + b1|
    const double w = std::sqrt(w2);
    const double r1 = std::sqrt(p.a1);
    return 0.25 * (r1 * p.b2 / (w2 * w * p.d2) - w * b1 / (p.a1 * r1 * p.d1)) * std::sinh(r1 * p.d1) * std::sin(w * p.d2);
}

inline resonance_set find_resonances_deltaprime_2layer(const barrier_well_params& p, interval drive, double energy,
                                                       scan_options opt = {}) {
    if (!(p.a1 > 0)) throw config_error("the first layer must be a barrier (a1 > 0)");
    if (!(p.d1 > 0 && p.d2 > 0)) throw config_error("widths must be positive");
    resonance_set out{resonance_equation::EQ69_DELTAPRIME_2LAYER, {}};
    // Only the well branch a2 + b1 < 0 (drive > a2) can hold roots; the barrier branch has none.
    const double lo = std::max(drive.lo, std::nextafter(p.a2, std::numeric_limits<double>::infinity()));
    const double hi = drive.hi;
    if (!(hi > lo)) return out;
    auto f = [&](double u) { return deltaprime_2layer_function(p, u); };
    const auto roots = find_roots(f, lo, hi, tan_poles_in(p.a2, p.d2, lo, hi), opt);
    int n = 1;
    for (double u : roots) {
        const auto [t1, t2] = deltaprime_2layer_terms(p, u);
        const double scale = std::abs(t1) + std::abs(t2);
        resonance_root r{};
        r.n = n++;
        r.value = u;
        r.residual = scale == 0 ? 0.0 : std::abs(t1 - t2) / scale;
        r.theta = deltaprime_2layer_theta_closed(p, u);
        r.alpha = deltaprime_2layer_alpha_closed(p, u);
        r.trans_prob = detail::on_resonance_transmission(*r.theta, r.alpha, energy, 0.0, -u + p.b2);
        r.admissible = u > 0 && u < p.a1;
        out.roots.push_back(r);
    }
    return out;
}

// The explicit transistor condition written as L(V) - M(V) tan(sqrt(V) d2), with its terms.
struct transistor_condition_terms {
    double l1, l2;       // sqrt(a1/V) tanh(.), sqrt(a3/V - 1) tanh(.)
    double tan_term;     // tan(sqrt(V) d2)
    double product_tan;  // sqrt(a1/V) sqrt(a3/V - 1) tanh tanh tan
    double value() const { return l1 + l2 - tan_term + product_tan; }
    double scale() const { return std::abs(l1) + std::abs(l2) + std::abs(tan_term) + std::abs(product_tan); }
};

inline transistor_condition_terms transistor_condition(const transistor_params& p, double v) {
    const double x1 = std::sqrt(p.a1 / v) * std::tanh(std::sqrt(p.a1) * p.d1);
    const double x3 = std::sqrt(p.a3 / v - 1) * std::tanh(std::sqrt(p.a3 - v) * p.d3);
    const double t = std::tan(std::sqrt(v) * p.d2);
    return {x1, x3, t, x1 * x3 * t};
}

inline constexpr double transistor_endpoint_margin = 1e-8;

inline resonance_set find_resonances_transistor_deltaprime(const transistor_params& p, interval v_eb, double energy,
                                                           scan_options opt = {}) {
    if (!(p.a1 > 0 && p.a3 > 0)) throw config_error("both barriers need a > 0");
    if (!(p.d1 > 0 && p.d2 > 0 && p.d3 > 0)) throw config_error("widths must be positive");
    resonance_set out{resonance_equation::EQ83_TRANSISTOR_DELTAPRIME, {}};
    const double margin = transistor_endpoint_margin * std::max(1.0, p.a3);
    const double lo = std::max(v_eb.lo, margin);
    const double hi = std::min(v_eb.hi, p.a3 - margin);
    if (!(hi > lo)) return out;
    auto f = [&](double v) { return transistor_condition(p, v).value(); };
    const auto roots = find_roots(f, lo, hi, tan_poles_in(0.0, p.d2, lo, hi), opt);
    int n = 1;
    for (double v : roots) {
        const auto terms = transistor_condition(p, v);
        resonance_root r{};
        r.n = n++;
        r.value = v;
        r.residual = std::abs(terms.value()) / terms.scale();
        r.theta = transistor_theta_representations(p, v).i1;
        r.alpha = transistor_deltaprime_alpha(p, v);
        r.trans_prob = detail::on_resonance_transmission(*r.theta, r.alpha, energy, 0.0, -v - p.v_cb);
        r.admissible = transistor_admissible(p, v);
        out.roots.push_back(r);
    }
    return out;
}

} // namespace squeeze
