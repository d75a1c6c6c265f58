#pragma once

// Epsilon-parametrized layered structures and their realization at fixed epsilon.
// All energies and potentials are in nm^-2 (hbar^2/2m* = 1); lengths in nm.

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "squeeze/errors.hpp"

namespace squeeze {

inline constexpr double ev_in_invnm2 = 2.62464;

constexpr double ev_to_invnm2(double e) { return e * ev_in_invnm2; }
constexpr double invnm2_to_ev(double v) { return v / ev_in_invnm2; }

// One layer: left-edge coefficient a, bias b across the layer, width d,
// and the powers mu, nu with which a and b diverge as epsilon -> 0.
struct layer_spec {
    double a = 0;
    double b = 0;
    double d = 1;
    double mu = 0;
    double nu = 0;
};

struct structure_spec {
    std::vector<layer_spec> layers;
    double v_left = 0;
    std::optional<double> v_right_override;
};

struct concrete_layer {
    double v_left_edge;
    double v_right_edge;
    double width;
    double slope;
};

struct lead_potentials {
    double left;
    double right;
};

inline void validate(const layer_spec& l) {
    if (!(l.d > 0) || !std::isfinite(l.d)) throw config_error("layer width d must be positive");
    if (!std::isfinite(l.a) || !std::isfinite(l.b)) throw config_error("layer coefficients a, b must be finite");
    if (!(l.mu >= 0) || !(l.nu >= 0)) throw config_error("powers mu, nu must be non-negative");
    if (l.mu > 0 && l.nu > l.mu) throw config_error("power nu must not exceed mu");
}

inline void validate(const structure_spec& s) {
    if (s.layers.empty()) throw config_error("structure needs at least one layer");
    for (const auto& l : s.layers) validate(l);
}

inline std::vector<concrete_layer> realize(const structure_spec& spec, double epsilon) {
    if (!(epsilon > 0)) throw config_error("epsilon must be positive");
    std::vector<concrete_layer> out;
    out.reserve(spec.layers.size());
    double cumulative = 0;  // sum of b_j for j < i
    for (const auto& l : spec.layers) {
        const double v0 = (l.a + cumulative) * std::pow(epsilon, -l.mu);
        const double v1 = v0 + l.b * std::pow(epsilon, -l.nu);
        const double w = epsilon * l.d;
        out.push_back({v0, v1, w, (v1 - v0) / w});
        cumulative += l.b;
    }
    return out;
}

// V_L is the configured left lead; V_R defaults to V_L plus the realized bias drops.
inline lead_potentials leads(const structure_spec& spec, double epsilon) {
    if (spec.v_right_override) return {spec.v_left, *spec.v_right_override};
    double drop = 0;
    for (const auto& l : spec.layers) drop += l.b * std::pow(epsilon, -l.nu);
    return {spec.v_left, spec.v_left + drop};
}

// kappa is sqrt(|shift|) where shift = a_i + sum_{j<i} b_j. If the shift is
// positive the physical kappa is i*kappa and g reported here is g_true / i.
struct derived_coefficients_t {
    double alpha;
    double kappa;
    bool kappa_imaginary;
    double g;
    std::optional<double> c1;
    std::optional<double> c2;

    double require_c1() const {
        if (!c1) throw bias_free_layer_error();
        return *c1;
    }
    double require_c2() const {
        if (!c2) throw bias_free_layer_error();
        return *c2;
    }
};

inline derived_coefficients_t derived_coefficients(const structure_spec& spec, std::size_t index) {
    if (index >= spec.layers.size()) throw config_error("layer index out of range");
    double cumulative = 0;
    for (std::size_t j = 0; j < index; ++j) cumulative += spec.layers[j].b;
    const auto& l = spec.layers[index];
    const double shift = l.a + cumulative;
    derived_coefficients_t c{};
    c.alpha = (shift + l.b / 2) * l.d;
    c.kappa = std::sqrt(std::abs(shift));
    c.kappa_imaginary = shift > 0;
    c.g = l.b / (4 * c.kappa * c.kappa * c.kappa * l.d);
    if (l.b != 0) {
        const double r = l.d / l.b;
        c.c1 = 0.5 * shift * shift * (shift + l.b) * r * r;
        c.c2 = 0.5 * shift * (shift + l.b) * (shift + l.b) * r * r;
    }
    return c;
}

enum class region { S0, S_INF, L0_INF, L0_1, L0_2, L_INF_1, L_INF_2, P11, P20, P21, OUTSIDE };

inline std::string_view to_string(region r) {
    switch (r) {
    case region::S0: return "S0";
    case region::S_INF: return "S_INF";
    case region::L0_INF: return "L0_INF";
    case region::L0_1: return "L0_1";
    case region::L0_2: return "L0_2";
    case region::L_INF_1: return "L_INF_1";
    case region::L_INF_2: return "L_INF_2";
    case region::P11: return "P11";
    case region::P20: return "P20";
    case region::P21: return "P21";
    case region::OUTSIDE: return "OUTSIDE";
    }
    return "OUTSIDE";
}

inline constexpr double region_tolerance = 1e-12;

// Points take precedence over lines, lines over the open sets.
inline region classify_region(double mu, double nu) {
    constexpr double tol = region_tolerance;
    auto eq = [](double x, double y) { return std::abs(x - y) <= tol; };
    if (!(mu > tol) || mu > 2 + tol || nu < -tol || nu > mu + tol) return region::OUTSIDE;

    if (eq(mu, 1) && eq(nu, 1)) return region::P11;
    if (eq(mu, 2) && eq(nu, 0)) return region::P20;
    if (eq(mu, 2) && eq(nu, 1)) return region::P21;

    const double sep = 1.5 * mu - 1;  // nu on the separating line
    if (eq(nu, sep) && mu >= 2.0 / 3 - tol) return region::L0_INF;
    if (eq(nu, 0)) return mu < 2.0 / 3 ? region::L0_1 : region::L_INF_1;
    if (eq(mu, 2)) return region::L_INF_2;
    if (eq(nu, mu)) return region::L0_2;
    return nu > sep ? region::S0 : region::S_INF;
}

inline bool in_s0_closure(region r) {
    return r == region::S0 || r == region::L0_1 || r == region::L0_2 || r == region::P11;
}

inline bool in_s_inf_closure(region r) {
    return r == region::S_INF || r == region::L_INF_1 || r == region::L_INF_2 || r == region::P20 || r == region::P21;
}

} // namespace squeeze
