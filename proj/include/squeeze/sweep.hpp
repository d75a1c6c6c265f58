#pragma once

// Squeezing scenarios: exact transmission over a grid of one bias parameter for
// a schedule of epsilon values, peak detection, and distance to the analytic
// resonance set.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "squeeze/errors.hpp"
#include "squeeze/potential.hpp"
#include "squeeze/resonance.hpp"
#include "squeeze/scattering.hpp"
#include "squeeze/transfer_matrix.hpp"

namespace squeeze {

// Sets layers[layer].b = sign * value. The barrier-well bias -b1 and the
// transistor V_EB are both layer 0 with sign -1.
struct tuned_parameter {
    std::size_t layer = 0;
    double sign = -1;
    std::string label = "-b1";
};

struct sweep_grid {
    double lo = 0;
    double hi = 1;
    int points = 2001;
};

struct sweep_request {
    structure_spec structure;
    tuned_parameter tuned;
    sweep_grid grid;
    std::vector<double> epsilons;
    double energy = 0;
    double peak_floor = 0.01;
};

struct sweep_sample {
    double value;
    double trans_prob;
    double refl_prob;
};

struct epsilon_sweep {
    double epsilon;
    std::vector<sweep_sample> curve;
    std::vector<double> gaps;   // grid values with an evanescent lead
    std::vector<double> peaks;  // refined, ascending
    bool small_epsilon = false; // epsilon < 0.02: very large Airy arguments
};

struct convergence_entry {
    double epsilon;
    int n;
    double root;
    double peak;   // nearest detected peak, NaN if none
    double error;  // |peak - root|, NaN if none
};

struct sweep_result {
    std::vector<epsilon_sweep> sweeps;
    std::optional<resonance_equation> reference_equation;
    std::vector<double> reference_roots;
    std::vector<int> reference_modes;
    std::vector<convergence_entry> convergence;
};

inline constexpr double small_epsilon_threshold = 0.02;

inline void validate(const sweep_request& r) {
    validate(r.structure);
    if (r.tuned.layer >= r.structure.layers.size()) throw config_error("tuned layer index out of range");
    if (r.grid.points < 2) throw config_error("sweep grid needs at least 2 points");
    if (!(r.grid.hi > r.grid.lo)) throw config_error("sweep grid needs hi > lo");
    if (r.epsilons.empty()) throw config_error("epsilon schedule is empty");
    for (std::size_t i = 0; i < r.epsilons.size(); ++i) {
        if (!(r.epsilons[i] > 0)) throw config_error("epsilons must be positive");
        if (i > 0 && !(r.epsilons[i] < r.epsilons[i - 1])) throw config_error("epsilons must be strictly descending");
    }
    if (!(r.peak_floor > 0 && r.peak_floor < 1)) throw config_error("peak floor must lie in (0, 1)");
}

// Exact transmission at one tuned value; nullopt when a lead is evanescent.
inline std::optional<scattering_result> sweep_point(const sweep_request& r, double value, double epsilon) {
    structure_spec s = r.structure;
    s.layers[r.tuned.layer].b = r.tuned.sign * value;
    const auto lp = leads(s, epsilon);
    if (!(r.energy > lp.left) || !(r.energy > lp.right)) return std::nullopt;
    const auto layers = realize(s, epsilon);
    return scatter(structure_matrix(layers, r.energy), lp.left, lp.right, r.energy);
}

inline double grid_value(const sweep_grid& g, int i) {
    if (i == g.points - 1) return g.hi;
    return g.lo + (g.hi - g.lo) * double(i) / double(g.points - 1);
}

// Runs body(i) for i in [0, n) on all hardware threads; each index is written independently.
inline void parallel_for(int n, const std::function<void(int)>& body) {
    const int workers = std::max(1, std::min<int>(n, int(std::thread::hardware_concurrency())));
    if (workers == 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (int i = w; i < n; i += workers) body(i);
        });
}

// Golden-section maximum of f on [a, b].
inline double golden_section_max(const std::function<double(double)>& f, double a, double b, double rel_tol = 1e-6) {
    const double g = (std::sqrt(5.0) - 1) / 2;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 400; ++it) {
        if (b - a <= rel_tol * std::max(std::abs(0.5 * (a + b)), 1e-300)) break;
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

// Strict interior local maxima above floor, refined on the continuous evaluator.
// NaN samples (gaps) never count as neighbours of a peak.
inline std::vector<double> detect_peaks(const std::vector<sweep_sample>& curve, double floor,
                                        const std::function<double(double)>& evaluator) {
    std::vector<double> peaks;
    for (std::size_t i = 1; i + 1 < curve.size(); ++i) {
        const double y = curve[i].trans_prob, yl = curve[i - 1].trans_prob, yr = curve[i + 1].trans_prob;
        if (std::isnan(y) || std::isnan(yl) || std::isnan(yr)) continue;
        if (!(y > yl && y > yr && y > floor)) continue;
        if (evaluator) {
            auto safe = [&](double x) {
                const double v = evaluator(x);
                return std::isnan(v) ? -1.0 : v;
            };
            peaks.push_back(golden_section_max(safe, curve[i - 1].value, curve[i + 1].value));
        } else {
            peaks.push_back(curve[i].value);
        }
    }
    std::sort(peaks.begin(), peaks.end());
    return peaks;
}

namespace detail {

inline bool has_powers(const layer_spec& l, double mu, double nu) {
    return std::abs(l.mu - mu) <= region_tolerance && std::abs(l.nu - nu) <= region_tolerance;
}

} // namespace detail

// Attaches the analytic resonance set when the device is one of the two templates.
inline void attach_reference_roots(const sweep_request& r, sweep_result& out) {
    const auto& L = r.structure.layers;
    const bool tuned_first_bias = r.tuned.layer == 0 && r.tuned.sign == -1;
    if (!tuned_first_bias) return;
    if (L.size() == 2 && detail::has_powers(L[0], 1, 1) && detail::has_powers(L[1], 2, 1)) {
        barrier_well_params p{L[0].a, L[1].a, L[0].d, L[1].d, L[1].b};
        const auto set = resonances_delta_barrier_well(p, {r.grid.lo, r.grid.hi}, r.energy);
        out.reference_equation = set.equation_id;
        for (const auto& root : set.roots) {
            out.reference_roots.push_back(root.value);
            out.reference_modes.push_back(root.n);
        }
    } else if (L.size() == 3 && detail::has_powers(L[0], 1, 1) && detail::has_powers(L[1], 2, 0) &&
               detail::has_powers(L[2], 1, 1) && L[1].a == 0 && L[1].b == 0) {
        transistor_params p{L[0].a, L[2].a, L[0].d, L[1].d, L[2].d, -L[2].b};
        const auto set = resonances_transistor_delta(p, r.grid.hi, r.energy);
        out.reference_equation = set.equation_id;
        for (const auto& root : set.roots) {
            if (root.value < r.grid.lo) continue;
            out.reference_roots.push_back(root.value);
            out.reference_modes.push_back(root.n);
        }
    }
}

inline sweep_result run_sweep(const sweep_request& r) {
    validate(r);
    sweep_result out;
    attach_reference_roots(r, out);
    const int n = r.grid.points;
    for (double eps : r.epsilons) {
        epsilon_sweep es;
        es.epsilon = eps;
        es.small_epsilon = eps < small_epsilon_threshold;
        std::vector<sweep_sample> samples(n);
        parallel_for(n, [&](int i) {
            const double x = grid_value(r.grid, i);
            const auto res = sweep_point(r, x, eps);
            if (res)
                samples[i] = {x, res->trans_prob, res->refl_prob};
            else
                samples[i] = {x, std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
        });
        auto evaluator = [&](double x) {
            const auto res = sweep_point(r, x, eps);
            return res ? res->trans_prob : std::numeric_limits<double>::quiet_NaN();
        };
        es.peaks = detect_peaks(samples, r.peak_floor, evaluator);
        for (const auto& s : samples) {
            if (std::isnan(s.trans_prob))
                es.gaps.push_back(s.value);
            else
                es.curve.push_back(s);
        }
        for (std::size_t k = 0; k < out.reference_roots.size(); ++k) {
            const double root = out.reference_roots[k];
            convergence_entry c{eps, out.reference_modes[k], root, std::numeric_limits<double>::quiet_NaN(),
                                std::numeric_limits<double>::quiet_NaN()};
            for (double p : es.peaks)
                if (std::isnan(c.peak) || std::abs(p - root) < std::abs(c.peak - root)) c.peak = p;
            if (!std::isnan(c.peak)) c.error = std::abs(c.peak - root);
            out.convergence.push_back(c);
        }
        out.sweeps.push_back(std::move(es));
    }
    return out;
}

} // namespace squeeze
