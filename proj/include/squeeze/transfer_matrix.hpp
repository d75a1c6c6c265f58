#pragma once

// 2x2 layer matrices mapping (psi, psi') at the left edge of a layer to the
// right edge, for constant and linear potential profiles, and their products.

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "squeeze/airy.hpp"
#include "squeeze/errors.hpp"
#include "squeeze/potential.hpp"

namespace squeeze {

template <class T>
struct basic_transfer_matrix {
    T l11{1}, l12{0}, l21{0}, l22{1};

    T det() const { return l11 * l22 - l12 * l21; }

    static basic_transfer_matrix identity() { return {T(1), T(0), T(0), T(1)}; }

    friend basic_transfer_matrix operator*(const basic_transfer_matrix& a, const basic_transfer_matrix& b) {
        return {a.l11 * b.l11 + a.l12 * b.l21, a.l11 * b.l12 + a.l12 * b.l22,
                a.l21 * b.l11 + a.l22 * b.l21, a.l21 * b.l12 + a.l22 * b.l22};
    }
};

using transfer_matrix = basic_transfer_matrix<double>;

inline double max_abs_difference(const transfer_matrix& a, const transfer_matrix& b) {
    return std::max({std::abs(a.l11 - b.l11), std::abs(a.l12 - b.l12), std::abs(a.l21 - b.l21), std::abs(a.l22 - b.l22)});
}

inline transfer_matrix layer_matrix_constant(double v, double width, double energy) {
    const double l = width;
    if (energy > v) {
        const double k = std::sqrt(energy - v);
        const double c = std::cos(k * l), s = std::sin(k * l);
        return {c, s / k, -k * s, c};
    }
    if (energy < v) {
        const double kap = std::sqrt(v - energy);
        if (kap * l > 709) throw overflow_error("layer matrix overflows: barrier too thick");
        const double c = std::cosh(kap * l), s = std::sinh(kap * l);
        return {c, s / kap, kap * s, c};
    }
    return {1, l, 0, 1};
}

struct airy_layer_params {
    double sigma;    // sign-aware cube root of the slope
    double s;        // offset in z(x) = sigma (x - s), x measured from the left edge
    double z_left;
    double z_right;
    double k2_left;  // E - V at each edge
    double k2_right;
};

inline bool is_degenerate_slope(const concrete_layer& layer, double energy) {
    const double dv = layer.v_right_edge - layer.v_left_edge;
    return std::abs(dv) < 1e-9 * std::max({1.0, std::abs(layer.v_left_edge), std::abs(energy)});
}

inline airy_layer_params make_airy_layer_params(const concrete_layer& layer, double energy) {
    if (layer.slope == 0 || !std::isfinite(layer.slope)) throw degenerate_slope_error();
    airy_layer_params p{};
    p.sigma = std::cbrt(layer.slope);
    const double s2 = p.sigma * p.sigma;
    p.k2_left = energy - layer.v_left_edge;
    p.k2_right = energy - layer.v_right_edge;
    p.z_left = -p.k2_left / s2;
    p.z_right = -p.k2_right / s2;
    p.s = layer.width + (energy - layer.v_right_edge) / layer.slope;
    return p;
}

namespace detail {

inline double airy_exponent(double z) { return z > 0 ? airy_zeta(z) : 0.0; }

// exponent(z1) - exponent(z0) without cancelling two large numbers.
inline double airy_exponent_difference(double z0, double z1) {
    if (z0 > 0 && z1 > 0) {
        const double r0 = std::sqrt(z0), r1 = std::sqrt(z1);
        return 2.0 / 3.0 * (z1 - z0) * (z1 + r0 * r1 + z0) / (r0 + r1);
    }
    return airy_exponent(z1) - airy_exponent(z0);
}

} // namespace detail

// Layer matrix from Airy solutions between arguments z0 (left) and z1 (right).
inline transfer_matrix airy_transfer_matrix(double z0, double z1, double sigma) {
    const auto a0 = airy_eval_scaled(z0);
    const auto a1 = airy_eval_scaled(z1);
    const double delta = detail::airy_exponent_difference(z0, z1);
    if (std::abs(delta) > 700) throw overflow_error("layer matrix overflows: barrier too thick");
    const double up = std::exp(delta);    // exp(xi1 - xi0)
    const double down = std::exp(-delta);  // exp(xi0 - xi1)
    constexpr double pi = std::numbers::pi;
    return {
        pi * (a1.ai_scaled * a0.bi_prime_scaled * down - a0.ai_prime_scaled * a1.bi_scaled * up),
        pi / sigma * (a0.ai_scaled * a1.bi_scaled * up - a1.ai_scaled * a0.bi_scaled * down),
        sigma * pi * (a1.ai_prime_scaled * a0.bi_prime_scaled * down - a0.ai_prime_scaled * a1.bi_prime_scaled * up),
        pi * (a0.ai_scaled * a1.bi_prime_scaled * up - a1.ai_prime_scaled * a0.bi_scaled * down),
    };
}

inline transfer_matrix layer_matrix_linear(const concrete_layer& layer, double energy) {
    if (is_degenerate_slope(layer, energy)) throw degenerate_slope_error();
    const auto p = make_airy_layer_params(layer, energy);
    return airy_transfer_matrix(p.z_left, p.z_right, p.sigma);
}

// Picks the constant-profile formula below the slope threshold.
inline transfer_matrix layer_matrix(const concrete_layer& layer, double energy) {
    if (is_degenerate_slope(layer, energy)) return layer_matrix_constant(layer.v_left_edge, layer.width, energy);
    return layer_matrix_linear(layer, energy);
}

// Lambda = Lambda_N ... Lambda_1.
inline transfer_matrix structure_matrix(std::span<const concrete_layer> layers, double energy) {
    if (layers.empty()) throw config_error("structure_matrix needs at least one layer");
    transfer_matrix m = transfer_matrix::identity();
    for (const auto& l : layers) m = layer_matrix(l, energy) * m;
    return m;
}

} // namespace squeeze
