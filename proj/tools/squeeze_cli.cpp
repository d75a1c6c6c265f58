// squeeze: command-line front end for the squeezed-layer transfer-matrix engine.

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "squeeze/squeeze.hpp"

namespace {

using namespace squeeze;
using ojson = nlohmann::ordered_json;

constexpr int exit_ok = 0;
constexpr int exit_check_failed = 1;
constexpr int exit_config = 2;
constexpr int exit_physics = 3;

// ---------------------------------------------------------------------------
// airy-check

struct airy_check_options {
    bool verbose = false;
    bool inject_fault = false;
};

int cmd_airy_check(const airy_check_options& o) {
    constexpr int points = 2000;
    constexpr double lo = -20, hi = 8;
    const double target = 1 / std::numbers::pi;
    double worst = 0, worst_series = 0, worst_asym = 0;
    for (int i = 0; i < points; ++i) {
        const double z = lo + (hi - lo) * i / (points - 1);
        auto q = airy_eval(z);
        if (o.inject_fault) q.ai *= 1 + 1e-6;
        const double dev = std::abs(airy_wronskian(q) - target);
        worst = std::max(worst, dev);
        double& bucket = std::abs(z) <= airy_crossover ? worst_series : worst_asym;
        bucket = std::max(bucket, dev);
    }
    if (o.verbose) {
        std::cout << "regime,z_range,max_deviation\n";
        std::cout << "series,[-8;8]," << format_double(worst_series) << '\n';
        std::cout << "asymptotic,[-20;-8)," << format_double(worst_asym) << '\n';
    }
    std::cout << "max |Ai Bi' - Ai' Bi - 1/pi| over " << points << " points in [-20, 8]: " << format_double(worst)
              << '\n';
    const bool ok = worst < 1e-10;
    if (!ok) std::cerr << "airy-check: deviation exceeds 1e-10\n";
    return ok ? exit_ok : exit_check_failed;
}

// ---------------------------------------------------------------------------
// scatter

struct scatter_options {
    std::string config;
    std::optional<double> energy;
    double epsilon = 1.0;
};

ojson complex_json(complex z) { return ojson::array({z.real(), z.imag()}); }

int cmd_scatter(const scatter_options& o) {
    const auto cfg = load_device_config(o.config);
    if (!(o.epsilon > 0)) throw config_error("--epsilon must be positive");
    const double energy = cfg.to_internal(o.energy.value_or(cfg.energy));

    transfer_matrix m = transfer_matrix::identity();
    lead_potentials lp{cfg.to_internal(cfg.v_left), cfg.to_internal(cfg.v_right.value_or(cfg.v_left))};
    if (!cfg.layers.empty()) {
        const auto spec = cfg.to_structure();
        validate(spec);
        lp = leads(spec, o.epsilon);
        m = structure_matrix(realize(spec, o.epsilon), energy);
    }
    const auto r = scatter(m, lp.left, lp.right, energy);

    ojson j;
    j["units"] = cfg.units == energy_units::eV ? "eV" : "invnm2";
    j["energy"] = cfg.from_internal(energy);
    j["epsilon"] = o.epsilon;
    j["leads"] = {{"v_left", cfg.from_internal(lp.left)}, {"v_right", cfg.from_internal(lp.right)}};
    j["lambda"] = {{"l11", m.l11}, {"l12", m.l12}, {"l21", m.l21}, {"l22", m.l22}};
    j["k_left"] = r.k_left;
    j["k_right"] = r.k_right;
    j["r_left"] = complex_json(r.r_left);
    j["t_left"] = complex_json(r.t_left);
    j["r_right"] = complex_json(r.r_right);
    j["t_right"] = complex_json(r.t_right);
    j["R"] = r.refl_prob;
    j["T"] = r.trans_prob;
    std::cout << j.dump(2) << '\n';
    return exit_ok;
}

// ---------------------------------------------------------------------------
// resonances

struct resonance_options {
    std::string config;
    std::string equation;
    std::vector<double> interval;
};

barrier_well_params barrier_well_from(const structure_spec& s) {
    const auto& L = s.layers;
    return {L[0].a, L[1].a, L[0].d, L[1].d, L[1].b};
}

transistor_params transistor_from(const structure_spec& s) {
    const auto& L = s.layers;
    return {L[0].a, L[2].a, L[0].d, L[1].d, L[2].d, -L[2].b};
}

int cmd_resonances(const resonance_options& o) {
    const auto cfg = load_device_config(o.config);
    const auto eq = parse_resonance_equation(o.equation);
    if (!eq) throw config_error("--equation: unknown equation id \"" + o.equation + "\"");

    const bool wants_barrier_well =
        *eq == resonance_equation::EQ69_DELTAPRIME_2LAYER || *eq == resonance_equation::EQ73_DELTA_BARRIER_WELL;
    const auto needed = wants_barrier_well ? scenario_kind::fig3_barrier_well : scenario_kind::fig5_transistor;
    if (cfg.scenario_or_custom() != needed)
        throw config_error("--equation " + std::string(to_string(*eq)) + " needs scenario \"" +
                           (wants_barrier_well ? "fig3_barrier_well" : "fig5_transistor") + "\"");

    interval iv{};
    if (!o.interval.empty()) {
        if (o.interval.size() != 2) throw config_error("--interval: expected lo,hi");
        iv = {cfg.to_internal(o.interval[0]), cfg.to_internal(o.interval[1])};
    } else if (cfg.sweep) {
        iv = {cfg.to_internal(cfg.sweep->lo), cfg.to_internal(cfg.sweep->hi)};
    } else {
        throw config_error("--interval: required when the config has no sweep grid");
    }
    if (!(iv.hi > iv.lo)) throw config_error("--interval: needs hi > lo");

    const auto spec = cfg.to_structure();
    const double energy = cfg.to_internal(cfg.energy);
    resonance_set set;
    switch (*eq) {
    case resonance_equation::EQ73_DELTA_BARRIER_WELL:
        set = resonances_delta_barrier_well(barrier_well_from(spec), iv, energy);
        break;
    case resonance_equation::EQ69_DELTAPRIME_2LAYER:
        set = find_resonances_deltaprime_2layer(barrier_well_from(spec), iv, energy);
        break;
    case resonance_equation::EQ76_TRANSISTOR_DELTA: {
        set = resonances_transistor_delta(transistor_from(spec), iv.hi, energy);
        std::erase_if(set.roots, [&](const resonance_root& r) { return r.value < iv.lo; });
        break;
    }
    case resonance_equation::EQ83_TRANSISTOR_DELTAPRIME:
        set = find_resonances_transistor_deltaprime(transistor_from(spec), iv, energy);
        break;
    }
    write_resonance_csv(std::cout, set);
    return exit_ok;
}

// ---------------------------------------------------------------------------
// sweep

struct sweep_options {
    std::string config;
    std::vector<double> epsilons;
    std::string out = "sweep";
};

int cmd_sweep(const sweep_options& o) {
    const auto cfg = load_device_config(o.config);
    auto req = cfg.to_sweep_request();
    if (!o.epsilons.empty()) req.epsilons = o.epsilons;
    const auto result = run_sweep(req);

    const std::string csv_path = o.out + ".csv", json_path = o.out + ".json";
    {
        std::ofstream csv(csv_path);
        if (!csv) throw config_error(csv_path + ": cannot write");
        write_sweep_csv(csv, result);
    }
    {
        std::ofstream js(json_path);
        if (!js) throw config_error(json_path + ": cannot write");
        js << sweep_to_json(req, result).dump(2) << '\n';
    }

    for (const auto& s : result.sweeps) {
        std::cout << "epsilon " << format_double(s.epsilon) << ": " << s.peaks.size() << " peak(s)";
        for (double p : s.peaks) std::cout << ' ' << format_double(invnm2_to_ev(p));
        std::cout << " eV";
        if (!s.gaps.empty()) std::cout << " (" << s.gaps.size() << " grid points with an evanescent lead)";
        if (s.small_epsilon) std::cout << " [small epsilon]";
        std::cout << '\n';
    }
    if (result.reference_equation) {
        std::cout << "reference " << to_string(*result.reference_equation) << '\n';
        std::cout << "epsilon,n,root_eV,peak_eV,error_eV,relative_error\n";
        for (const auto& c : result.convergence)
            std::cout << format_double(c.epsilon) << ',' << c.n << ',' << format_double(invnm2_to_ev(c.root)) << ','
                      << format_double(invnm2_to_ev(c.peak)) << ',' << format_double(invnm2_to_ev(c.error)) << ','
                      << format_double(c.error / std::abs(c.root)) << '\n';
    }
    std::cerr << "wrote " << csv_path << " and " << json_path << '\n';
    return exit_ok;
}

// ---------------------------------------------------------------------------
// limit-check

struct limit_options {
    std::optional<std::string> config;
    std::vector<double> epsilons{0.5, 0.25, 0.1, 0.05};
    int draws = 10;
    double tolerance = 0.01;
};

int cmd_limit_check(const limit_options& o) {
    if (o.epsilons.empty()) throw config_error("--epsilons: empty");
    std::vector<delta_case> cases;
    if (o.config) {
        const auto cfg = load_device_config(*o.config);
        const auto spec = cfg.to_structure();
        validate(spec);
        if (spec.layers.size() != 1 || classify_region(spec.layers[0].mu, spec.layers[0].nu) != region::P11)
            throw config_error(*o.config + ": limit-check needs a single layer with mu = nu = 1");
        const auto& l = spec.layers[0];
        cases.push_back({l.a, l.b, l.d, cfg.to_internal(cfg.energy)});
    } else {
        if (o.draws < 1) throw config_error("--draws must be positive");
        cases = draw_delta_cases(o.draws);
    }

    bool all_ok = true;
    std::cout << "case,a_eV,b_eV,d_nm,E_eV,epsilon,T_exact,T_limit,abs_error\n";
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const auto& c = cases[i];
        if (!(c.energy > 0 && c.energy > c.b)) throw evanescent_lead_error(c.energy > 0 ? "right" : "left");
        const auto pts = delta_convergence(c, o.epsilons);
        bool ok = pts.back().error < o.tolerance;
        for (std::size_t k = 1; k < pts.size(); ++k) ok = ok && pts[k].error < pts[k - 1].error;
        all_ok = all_ok && ok;
        for (const auto& p : pts)
            std::cout << i << ',' << format_double(invnm2_to_ev(c.a)) << ',' << format_double(invnm2_to_ev(c.b)) << ','
                      << format_double(c.d) << ',' << format_double(invnm2_to_ev(c.energy)) << ','
                      << format_double(p.epsilon) << ',' << format_double(p.exact) << ',' << format_double(p.limit)
                      << ',' << format_double(p.error) << '\n';
        if (!ok) std::cerr << "limit-check: case " << i << " does not converge within tolerance\n";
    }
    return all_ok ? exit_ok : exit_check_failed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Transfer matrices, resonance sets and squeezing sweeps for layered potentials"};
    app.require_subcommand(1);

    airy_check_options airy_o;
    auto* airy = app.add_subcommand("airy-check", "Wronskian self-check of the Airy evaluator");
    airy->add_flag("--verbose", airy_o.verbose, "Per-regime deviation table");
    airy->add_flag("--inject-fault", airy_o.inject_fault, "Perturb Ai to exercise the failure path");

    scatter_options sc_o;
    auto* sc = app.add_subcommand("scatter", "Transfer matrix and scattering data for one configuration");
    sc->add_option("config", sc_o.config, "Device config (JSON)")->required();
    sc->add_option("--energy", sc_o.energy, "Energy in the config's units (default: config energy)");
    sc->add_option("--epsilon", sc_o.epsilon, "Squeezing parameter (default 1)");

    resonance_options rs_o;
    auto* rs = app.add_subcommand("resonances", "Resonance set of a template device as CSV");
    rs->add_option("config", rs_o.config, "Device config (JSON)")->required();
    rs->add_option("--equation", rs_o.equation, "EQ69, EQ73, EQ76 or EQ83 (full ids accepted)")->required();
    rs->add_option("--interval", rs_o.interval, "lo,hi in the config's units (default: sweep grid)")->delimiter(',');

    sweep_options sw_o;
    auto* sw = app.add_subcommand("sweep", "Transmission sweeps over an epsilon schedule");
    sw->add_option("config", sw_o.config, "Device config with a sweep block (JSON)")->required();
    sw->add_option("--epsilons", sw_o.epsilons, "Comma-separated schedule, overrides the config")->delimiter(',');
    sw->add_option("--out", sw_o.out, "Output prefix; writes <prefix>.csv and <prefix>.json");

    limit_options lc_o;
    auto* lc = app.add_subcommand("limit-check", "Delta-limit convergence table for squeezed (1,1) layers");
    lc->add_option("config", lc_o.config, "Optional single-layer config; default is a fixed random set");
    lc->add_option("--epsilons", lc_o.epsilons, "Comma-separated schedule")->delimiter(',');
    lc->add_option("--draws", lc_o.draws, "Number of random cases");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_config;
    }

    try {
        if (*airy) return cmd_airy_check(airy_o);
        if (*sc) return cmd_scatter(sc_o);
        if (*rs) return cmd_resonances(rs_o);
        if (*sw) return cmd_sweep(sw_o);
        if (*lc) return cmd_limit_check(lc_o);
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config;
    } catch (const physics_error& e) {
        std::cerr << "physics error: " << e.what() << '\n';
        return exit_physics;
    }
    return exit_config;
}
