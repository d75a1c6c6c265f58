#pragma once

// Exact finite-epsilon transmission of a squeezed (1,1) layer compared with
// the delta-interaction limit.

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "squeeze/point_limits.hpp"
#include "squeeze/potential.hpp"
#include "squeeze/scattering.hpp"
#include "squeeze/transfer_matrix.hpp"

namespace squeeze {

// One layer with powers (1, 1); the left lead sits at 0 and the right lead at
// the unscaled bias b, which is where the limit puts it.
struct delta_case {
    double a;
    double b;
    double d;
    double energy;
};

struct delta_convergence_point {
    double epsilon;
    double exact;
    double limit;
    double error;  // |exact - limit|
};

inline double delta_case_limit(const delta_case& c) {
    const double alpha = (c.a + c.b / 2) * c.d;
    return delta_transmission(alpha, std::sqrt(c.energy), std::sqrt(c.energy - c.b));
}

inline double delta_case_exact(const delta_case& c, double epsilon) {
    structure_spec s{{{c.a, c.b, c.d, 1.0, 1.0}}, 0.0, c.b};
    const auto layers = realize(s, epsilon);
    return scatter(structure_matrix(layers, c.energy), 0.0, c.b, c.energy).trans_prob;
}

inline std::vector<delta_convergence_point> delta_convergence(const delta_case& c, std::span<const double> epsilons) {
    std::vector<delta_convergence_point> out;
    const double lim = delta_case_limit(c);
    for (double eps : epsilons) {
        const double t = delta_case_exact(c, eps);
        out.push_back({eps, t, lim, std::abs(t - lim)});
    }
    return out;
}

inline constexpr std::uint64_t default_delta_seed = 20261016;

// a in [0.1, 0.5] eV, b in [-0.2, 0.2] eV, d in [0.2, 1] nm,
// E in [max(0, b) + 0.05, 0.6] eV; returned in nm^-2.
inline std::vector<delta_case> draw_delta_cases(int count, std::uint64_t seed = default_delta_seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    auto uni = [&](double lo, double hi) { return lo + (hi - lo) * u01(rng); };
    std::vector<delta_case> out;
    for (int i = 0; i < count; ++i) {
        const double a = uni(0.1, 0.5), b = uni(-0.2, 0.2), d = uni(0.2, 1.0);
        const double e = uni(std::max(0.0, b) + 0.05, 0.6);
        out.push_back({ev_to_invnm2(a), ev_to_invnm2(b), d, ev_to_invnm2(e)});
    }
    return out;
}

} // namespace squeeze
