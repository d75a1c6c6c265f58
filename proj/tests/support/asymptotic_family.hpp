#pragma once

// Families of linear layers at a fixed Airy magnitude |z| = Z whose phase chi
// sweeps one full period, used to measure the large-argument forms against
// the exact Airy matrix.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "squeeze/asymptotic.hpp"
#include "squeeze/transfer_matrix.hpp"

namespace squeeze::oracle {

inline constexpr int family_size = 64;

// Width in z of a layer starting at |z| = Z with phase chi.
inline double z_span_for_phase(double big_z, double chi) {
    return std::pow(std::pow(big_z, 1.5) + 1.5 * chi, 2.0 / 3.0) - big_z;
}

inline std::array<double, 4> elements(const transfer_matrix& m) { return {m.l11, m.l12, m.l21, m.l22}; }

// Oscillatory elements pass through zero, so each element's error is measured
// against its largest exact value over the phase family.
inline double envelope_relative_error(const std::vector<transfer_matrix>& approx, const std::vector<transfer_matrix>& exact) {
    std::array<double, 4> env{}, err{};
    for (std::size_t j = 0; j < exact.size(); ++j) {
        const auto e = elements(exact[j]), a = elements(approx[j]);
        for (int i = 0; i < 4; ++i) {
            env[i] = std::max(env[i], std::abs(e[i]));
            err[i] = std::max(err[i], std::abs(a[i] - e[i]));
        }
    }
    double worst = 0;
    for (int i = 0; i < 4; ++i) worst = std::max(worst, err[i] / env[i]);
    return worst;
}

inline double pointwise_relative_error(const std::vector<transfer_matrix>& approx, const std::vector<transfer_matrix>& exact) {
    double worst = 0;
    for (std::size_t j = 0; j < exact.size(); ++j) {
        const auto e = elements(exact[j]), a = elements(approx[j]);
        for (int i = 0; i < 4; ++i) worst = std::max(worst, std::abs(a[i] - e[i]) / std::abs(e[i]));
    }
    return worst;
}

struct family_errors {
    double oscillatory;   // large-z form, z < 0
    double exponential;   // large-z form, z > 0
    double k_well;        // wave-number form, both edges propagating
    double k_barrier;     // wave-number form, both edges evanescent
};

// Unit |slope|. Wells: sigma = -1 so z runs from -Z to -Z - span across a
// layer of width span. Barriers: sigma = +1, z from Z to Z + span.
inline family_errors asymptotic_family_errors(double big_z) {
    std::vector<transfer_matrix> osc, osc_exact, expo, expo_exact, kw, kb;
    for (int j = 0; j < family_size; ++j) {
        // Phases avoid chi = 0, where every form is exact and trivially identity.
        const double chi = 2 * std::numbers::pi * (j + 0.5) / family_size;
        const double span = z_span_for_phase(big_z, chi);

        osc.push_back(lambda_large_z(-big_z, -big_z - span, -1.0).matrix);
        osc_exact.push_back(airy_transfer_matrix(-big_z, -big_z - span, -1.0));
        kw.push_back(lambda_k_form(big_z, big_z + span, span).matrix);

        expo.push_back(lambda_large_z(big_z, big_z + span, 1.0).matrix);
        expo_exact.push_back(airy_transfer_matrix(big_z, big_z + span, 1.0));
        kb.push_back(lambda_k_form(-big_z, -big_z - span, span).matrix);
    }
    return {envelope_relative_error(osc, osc_exact), pointwise_relative_error(expo, expo_exact),
            envelope_relative_error(kw, osc_exact), pointwise_relative_error(kb, expo_exact)};
}

} // namespace squeeze::oracle
