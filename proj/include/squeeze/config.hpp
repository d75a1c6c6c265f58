#pragma once

// Device configuration files (JSON). Values are kept in the file's units so a
// parse/serialize round trip is lossless; conversion to nm^-2 happens in the
// to_* accessors.

#include <cmath>
#include <cstddef>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "squeeze/errors.hpp"
#include "squeeze/potential.hpp"
#include "squeeze/sweep.hpp"
#include "squeeze/templates.hpp"

namespace squeeze {

enum class energy_units { eV, invnm2 };
enum class scenario_kind { fig3_barrier_well, fig5_transistor, custom };
enum class template_model { delta, delta_prime };

struct layer_config {
    double a = 0, b = 0, d = 1;
    std::optional<double> mu, nu;

    bool operator==(const layer_config&) const = default;
};

struct sweep_config {
    std::size_t layer = 0;
    double sign = -1;
    std::string label = "-b1";
    double lo = 0, hi = 1;
    int points = 2001;
    std::vector<double> epsilons;
    double peak_floor = 0.01;

    bool operator==(const sweep_config&) const = default;
};

struct device_config {
    energy_units units = energy_units::eV;
    std::optional<scenario_kind> scenario;
    std::optional<template_model> model;
    std::vector<layer_config> layers;
    double v_left = 0;
    std::optional<double> v_right;
    double energy = 0;
    std::optional<sweep_config> sweep;

    bool operator==(const device_config&) const = default;

    double to_internal(double e) const { return units == energy_units::eV ? ev_to_invnm2(e) : e; }
    double from_internal(double v) const { return units == energy_units::eV ? invnm2_to_ev(v) : v; }

    scenario_kind scenario_or_custom() const { return scenario.value_or(scenario_kind::custom); }
    template_model model_or_default() const { return model.value_or(template_model::delta); }

    structure_spec to_structure() const;
    sweep_request to_sweep_request() const;
};

namespace detail {

using json = nlohmann::ordered_json;

inline void reject_unknown(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw config_error(where + ": expected an object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!ok.count(it.key())) throw config_error(where + "." + it.key() + ": unknown key");
}

inline double get_number(const json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key)) throw config_error(where + "." + key + ": missing");
    const auto& v = j.at(key);
    if (!v.is_number()) throw config_error(where + "." + key + ": expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw config_error(where + "." + key + ": must be finite");
    return x;
}

inline std::optional<double> get_optional_number(const json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return get_number(j, key, where);
}

inline std::string_view to_string(energy_units u) { return u == energy_units::eV ? "eV" : "invnm2"; }

inline std::string_view to_string(scenario_kind s) {
    switch (s) {
    case scenario_kind::fig3_barrier_well: return "fig3_barrier_well";
    case scenario_kind::fig5_transistor: return "fig5_transistor";
    case scenario_kind::custom: return "custom";
    }
    return "custom";
}

inline std::string_view to_string(template_model m) { return m == template_model::delta ? "delta" : "delta_prime"; }

// Line number of a byte offset in text, 1-based.
inline std::size_t line_of(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

// Powers fixed by the device templates, per layer.
inline std::vector<std::pair<double, double>> template_powers(scenario_kind s, template_model m) {
    if (s == scenario_kind::fig3_barrier_well)
        return m == template_model::delta ? std::vector<std::pair<double, double>>{{1, 1}, {2, 1}}
                                          : std::vector<std::pair<double, double>>{{2, 1}, {2, 1}};
    if (s == scenario_kind::fig5_transistor)
        return m == template_model::delta ? std::vector<std::pair<double, double>>{{1, 1}, {2, 0}, {1, 1}}
                                          : std::vector<std::pair<double, double>>{{2, 1}, {2, 0}, {2, 1}};
    return {};
}

} // namespace detail

inline device_config parse_device_config(const std::string& text) {
    using detail::json;
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw config_error("line " + std::to_string(detail::line_of(text, e.byte == 0 ? 0 : e.byte - 1)) +
                           ": malformed JSON (" + e.what() + ")");
    }
    detail::reject_unknown(j, "config", {"units", "scenario", "model", "layers", "leads", "energy", "sweep"});
    device_config c;

    if (!j.contains("units") || !j.at("units").is_string()) throw config_error("config.units: expected \"eV\" or \"invnm2\"");
    const auto units = j.at("units").get<std::string>();
    if (units == "eV") c.units = energy_units::eV;
    else if (units == "invnm2") c.units = energy_units::invnm2;
    else throw config_error("config.units: expected \"eV\" or \"invnm2\", got \"" + units + "\"");

    if (j.contains("scenario")) {
        if (!j.at("scenario").is_string()) throw config_error("config.scenario: expected a string");
        const auto s = j.at("scenario").get<std::string>();
        if (s == "fig3_barrier_well") c.scenario = scenario_kind::fig3_barrier_well;
        else if (s == "fig5_transistor") c.scenario = scenario_kind::fig5_transistor;
        else if (s == "custom") c.scenario = scenario_kind::custom;
        else throw config_error("config.scenario: unknown template \"" + s + "\"");
    }
    if (j.contains("model")) {
        if (!j.at("model").is_string()) throw config_error("config.model: expected a string");
        const auto m = j.at("model").get<std::string>();
        if (m == "delta") c.model = template_model::delta;
        else if (m == "delta_prime") c.model = template_model::delta_prime;
        else throw config_error("config.model: expected \"delta\" or \"delta_prime\"");
        if (c.scenario_or_custom() == scenario_kind::custom) throw config_error("config.model: only valid with a template scenario");
    }

    c.energy = detail::get_number(j, "energy", "config");

    if (!j.contains("layers") || !j.at("layers").is_array()) throw config_error("config.layers: expected an array");
    const auto& layers = j.at("layers");
    for (std::size_t i = 0; i < layers.size(); ++i) {
        const std::string where = "config.layers[" + std::to_string(i) + "]";
        detail::reject_unknown(layers[i], where, {"a", "b", "d", "mu", "nu"});
        layer_config l;
        l.a = detail::get_number(layers[i], "a", where);
        l.b = detail::get_number(layers[i], "b", where);
        l.d = detail::get_number(layers[i], "d", where);
        l.mu = detail::get_optional_number(layers[i], "mu", where);
        l.nu = detail::get_optional_number(layers[i], "nu", where);
        if (!(l.d > 0)) throw config_error(where + ".d: must be positive");
        if (l.mu && *l.mu < 0) throw config_error(where + ".mu: must be non-negative");
        if (l.nu && *l.nu < 0) throw config_error(where + ".nu: must be non-negative");
        if (l.mu && l.nu && *l.mu > 0 && *l.nu > *l.mu) throw config_error(where + ".nu: must not exceed mu");
        c.layers.push_back(l);
    }

    if (j.contains("leads")) {
        detail::reject_unknown(j.at("leads"), "config.leads", {"v_left", "v_right"});
        c.v_left = detail::get_optional_number(j.at("leads"), "v_left", "config.leads").value_or(0.0);
        c.v_right = detail::get_optional_number(j.at("leads"), "v_right", "config.leads");
    }

    const auto scen = c.scenario_or_custom();
    if (scen != scenario_kind::custom) {
        const auto powers = detail::template_powers(scen, c.model_or_default());
        if (c.layers.size() != powers.size())
            throw config_error("config.layers: template \"" + std::string(detail::to_string(scen)) + "\" needs " +
                               std::to_string(powers.size()) + " layers");
        for (std::size_t i = 0; i < powers.size(); ++i) {
            const std::string where = "config.layers[" + std::to_string(i) + "]";
            if (c.layers[i].mu && std::abs(*c.layers[i].mu - powers[i].first) > region_tolerance)
                throw config_error(where + ".mu: template fixes mu = " + std::to_string(powers[i].first));
            if (c.layers[i].nu && std::abs(*c.layers[i].nu - powers[i].second) > region_tolerance)
                throw config_error(where + ".nu: template fixes nu = " + std::to_string(powers[i].second));
        }
        if (scen == scenario_kind::fig5_transistor && (c.layers[1].a != 0 || c.layers[1].b != 0))
            throw config_error("config.layers[1]: the transistor template needs a = b = 0 between the barriers");
    } else {
        for (std::size_t i = 0; i < c.layers.size(); ++i)
            if (!c.layers[i].mu || !c.layers[i].nu)
                throw config_error("config.layers[" + std::to_string(i) + "]: mu and nu are required without a template");
    }

    if (j.contains("sweep")) {
        const auto& s = j.at("sweep");
        detail::reject_unknown(s, "config.sweep", {"tuned", "grid", "epsilons", "peak_floor"});
        sweep_config sc;
        if (s.contains("tuned")) {
            const auto& t = s.at("tuned");
            detail::reject_unknown(t, "config.sweep.tuned", {"layer", "sign", "label"});
            const double layer = detail::get_number(t, "layer", "config.sweep.tuned");
            if (layer < 0 || layer != std::floor(layer) || layer >= double(c.layers.size()))
                throw config_error("config.sweep.tuned.layer: expected a layer index");
            sc.layer = std::size_t(layer);
            sc.sign = detail::get_number(t, "sign", "config.sweep.tuned");
            if (sc.sign != 1 && sc.sign != -1) throw config_error("config.sweep.tuned.sign: expected 1 or -1");
            if (t.contains("label")) {
                if (!t.at("label").is_string()) throw config_error("config.sweep.tuned.label: expected a string");
                sc.label = t.at("label").get<std::string>();
            }
        } else if (scen == scenario_kind::fig5_transistor) {
            sc.label = "V_EB";
        }
        if (!s.contains("grid")) throw config_error("config.sweep.grid: missing");
        const auto& g = s.at("grid");
        detail::reject_unknown(g, "config.sweep.grid", {"lo", "hi", "points"});
        sc.lo = detail::get_number(g, "lo", "config.sweep.grid");
        sc.hi = detail::get_number(g, "hi", "config.sweep.grid");
        if (g.contains("points")) {
            const double p = detail::get_number(g, "points", "config.sweep.grid");
            if (p < 2 || p != std::floor(p) || p > 1e8) throw config_error("config.sweep.grid.points: expected an integer >= 2");
            sc.points = int(p);
        }
        if (!(sc.hi > sc.lo)) throw config_error("config.sweep.grid: needs hi > lo");
        if (!s.contains("epsilons") || !s.at("epsilons").is_array()) throw config_error("config.sweep.epsilons: expected an array");
        for (const auto& e : s.at("epsilons")) {
            if (!e.is_number()) throw config_error("config.sweep.epsilons: expected numbers");
            sc.epsilons.push_back(e.get<double>());
        }
        if (s.contains("peak_floor")) sc.peak_floor = detail::get_number(s, "peak_floor", "config.sweep");
        c.sweep = sc;
    }
    return c;
}

inline device_config load_device_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error(path + ": cannot open");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_device_config(ss.str());
    } catch (const config_error& e) {
        throw config_error(path + ": " + e.what());
    }
}

inline nlohmann::ordered_json to_json(const device_config& c) {
    using detail::json;
    json j;
    j["units"] = detail::to_string(c.units);
    if (c.scenario) j["scenario"] = detail::to_string(*c.scenario);
    if (c.model) j["model"] = detail::to_string(*c.model);
    j["energy"] = c.energy;
    j["layers"] = json::array();
    for (const auto& l : c.layers) {
        json lj;
        lj["a"] = l.a;
        lj["b"] = l.b;
        lj["d"] = l.d;
        if (l.mu) lj["mu"] = *l.mu;
        if (l.nu) lj["nu"] = *l.nu;
        j["layers"].push_back(lj);
    }
    json leads;
    leads["v_left"] = c.v_left;
    if (c.v_right) leads["v_right"] = *c.v_right;
    j["leads"] = leads;
    if (c.sweep) {
        const auto& s = *c.sweep;
        json sj;
        sj["tuned"] = {{"layer", s.layer}, {"sign", s.sign}, {"label", s.label}};
        sj["grid"] = {{"lo", s.lo}, {"hi", s.hi}, {"points", s.points}};
        sj["epsilons"] = s.epsilons;
        sj["peak_floor"] = s.peak_floor;
        j["sweep"] = sj;
    }
    return j;
}

inline structure_spec device_config::to_structure() const {
    structure_spec s;
    const auto powers = detail::template_powers(scenario_or_custom(), model_or_default());
    for (std::size_t i = 0; i < layers.size(); ++i) {
        const auto& l = layers[i];
        layer_spec ls;
        ls.a = to_internal(l.a);
        ls.b = to_internal(l.b);
        ls.d = l.d;
        ls.mu = l.mu ? *l.mu : powers.at(i).first;
        ls.nu = l.nu ? *l.nu : powers.at(i).second;
        s.layers.push_back(ls);
    }
    s.v_left = to_internal(v_left);
    if (v_right) s.v_right_override = to_internal(*v_right);
    return s;
}

inline sweep_request device_config::to_sweep_request() const {
    if (!sweep) throw config_error("config.sweep: missing");
    sweep_request r;
    r.structure = to_structure();
    r.tuned = {sweep->layer, sweep->sign, sweep->label};
    r.grid = {to_internal(sweep->lo), to_internal(sweep->hi), sweep->points};
    r.epsilons = sweep->epsilons;
    r.energy = to_internal(energy);
    r.peak_floor = sweep->peak_floor;
    return r;
}

} // namespace squeeze
