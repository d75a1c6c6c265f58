#pragma once

// Locale-independent text output for sweep results and resonance sets.

#include <charconv>
#include <cmath>
#include <ostream>
#include <string>
#include <system_error>

#include <json.hpp>

#include "squeeze/potential.hpp"
#include "squeeze/resonance.hpp"
#include "squeeze/sweep.hpp"

namespace squeeze {

// Shortest representation that reads back to the same double.
inline std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

inline void write_sweep_csv(std::ostream& os, const sweep_result& r) {
    os << "epsilon,tuned_value_eV,tuned_value_invnm2,T,R\n";
    for (const auto& s : r.sweeps)
        for (const auto& p : s.curve)
            os << format_double(s.epsilon) << ',' << format_double(invnm2_to_ev(p.value)) << ','
               << format_double(p.value) << ',' << format_double(p.trans_prob) << ',' << format_double(p.refl_prob)
               << '\n';
}

namespace detail {

// JSON has no NaN; missing values become null.
inline nlohmann::ordered_json number_or_null(double x) {
    if (std::isfinite(x)) return x;
    return nullptr;
}

} // namespace detail

inline nlohmann::ordered_json sweep_to_json(const sweep_request& req, const sweep_result& r) {
    using json = nlohmann::ordered_json;
    json j;
    j["tuned"] = {{"layer", req.tuned.layer}, {"sign", req.tuned.sign}, {"label", req.tuned.label}};
    j["energy_invnm2"] = req.energy;
    j["energy_eV"] = invnm2_to_ev(req.energy);
    j["grid"] = {{"lo_invnm2", req.grid.lo}, {"hi_invnm2", req.grid.hi}, {"points", req.grid.points}};
    j["epsilons"] = req.epsilons;
    j["peak_floor"] = req.peak_floor;

    json peaks = json::array();
    for (const auto& s : r.sweeps) {
        json values_ev = json::array(), values = json::array();
        for (double p : s.peaks) {
            values.push_back(p);
            values_ev.push_back(invnm2_to_ev(p));
        }
        json gaps = json::array();
        for (double g : s.gaps) gaps.push_back(g);
        peaks.push_back({{"epsilon", s.epsilon},
                         {"small_epsilon", s.small_epsilon},
                         {"values_invnm2", values},
                         {"values_eV", values_ev},
                         {"gaps_invnm2", gaps}});
    }
    j["peaks"] = peaks;

    json ref = json::object();
    if (r.reference_equation) {
        ref["equation"] = std::string(to_string(*r.reference_equation));
        json roots = json::array();
        for (std::size_t k = 0; k < r.reference_roots.size(); ++k)
            roots.push_back({{"n", r.reference_modes[k]},
                             {"value_invnm2", r.reference_roots[k]},
                             {"value_eV", invnm2_to_ev(r.reference_roots[k])}});
        ref["roots"] = roots;
    }
    j["reference"] = ref;

    json conv = json::array();
    for (const auto& c : r.convergence)
        conv.push_back({{"epsilon", c.epsilon},
                        {"n", c.n},
                        {"root_eV", invnm2_to_ev(c.root)},
                        {"peak_eV", detail::number_or_null(invnm2_to_ev(c.peak))},
                        {"error_eV", detail::number_or_null(invnm2_to_ev(c.error))},
                        {"relative_error", detail::number_or_null(c.error / std::abs(c.root))}});
    j["convergence"] = conv;
    return j;
}

inline void write_resonance_csv(std::ostream& os, const resonance_set& s) {
    os << "n,value_eV,value_invnm2,theta,alpha,T_n,admissible\n";
    for (const auto& r : s.roots)
        os << r.n << ',' << format_double(invnm2_to_ev(r.value)) << ',' << format_double(r.value) << ','
           << (r.theta ? format_double(*r.theta) : std::string()) << ',' << format_double(r.alpha) << ','
           << format_double(r.trans_prob) << ',' << (r.admissible ? "true" : "false") << '\n';
}

} // namespace squeeze
