// SPDX-License-Identifier: Apache-2.0
//
// mmnet - multi-user mm-wave urban cellular downlink simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "mmnet/harness.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace mmnet;

int main(int argc, char** argv) {
    CLI::App app{"mmnet: multi-user mm-wave urban cellular downlink simulator"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "Run a scenario and emit CSV metrics");
    std::string scenario_path, out_dir = "out";
    std::string layout_preset_flag;
    double bs_density_flag = -1, ue_density_flag = -1;
    long long seed_flag = -1;
    bool trace_alloc = false;
    run->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
    run->add_option("--out", out_dir, "Output directory");
    run->add_option("--layout-preset", layout_preset_flag, "Override layout preset (dense/open)");
    run->add_option("--bs-density", bs_density_flag, "Override BS density per km^2");
    run->add_option("--ue-density", ue_density_flag, "Override UE density per km^2");
    run->add_option("--seed", seed_flag, "Override master seed");
    run->add_flag("--trace-alloc", trace_alloc, "Log per-candidate allocation decisions");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Run a cross-product parameter sweep");
    std::string axes_path, sweep_out = "sweep.csv";
    sweep->add_option("--axes", axes_path, "Sweep axes JSON file")->required();
    sweep->add_option("--out", sweep_out, "Output CSV path");

    // trace-paths
    auto* trace = app.add_subcommand("trace-paths", "Dump the path inventory for one BS");
    std::string layout_path, trace_out;
    int bs_id = 0;
    double tp_bs_density = 64, tp_ue_density = 1000;
    unsigned tp_seed = 1;
    trace->add_option("--layout", layout_path, "Layout file")->required();
    trace->add_option("--bs", bs_id, "BS id to trace")->required();
    trace->add_option("--bs-density", tp_bs_density, "BS density per km^2");
    trace->add_option("--ue-density", tp_ue_density, "UE density per km^2");
    trace->add_option("--seed", tp_seed, "UE placement seed");
    trace->add_option("--out", trace_out, "Output file (stdout if omitted)");

    // gen-layout
    auto* gen = app.add_subcommand("gen-layout", "Generate a synthetic layout file");
    std::string gen_preset = "dense", gen_out = "layout.csv";
    unsigned gen_seed = 1;
    gen->add_option("--layout-preset", gen_preset, "Preset name (dense/open)");
    gen->add_option("--seed", gen_seed, "Generation seed");
    gen->add_option("--out", gen_out, "Output layout file");

    // pattern-cuts
    auto* cuts = app.add_subcommand("pattern-cuts", "Export antenna pattern cuts as CSV");
    std::string cut_kind = "array", cut_out;
    int cut_n = 8;
    double cut_hpbw = 10, cut_peak = 25;
    cuts->add_option("--kind", cut_kind, "iso | ideal | array");
    cuts->add_option("--n", cut_n, "Array elements per side");
    cuts->add_option("--hpbw", cut_hpbw, "Sector HPBW in degrees");
    cuts->add_option("--peak", cut_peak, "Sector peak gain in dBi");
    cuts->add_option("--out", cut_out, "Output CSV (stdout if omitted)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            Scenario s = load_scenario_file(scenario_path);
            if (!layout_preset_flag.empty()) {
                s.layout_preset = layout_preset_flag;
                s.layout_file.clear();
            }
            if (bs_density_flag > 0) s.bs_density_per_km2 = bs_density_flag;
            if (ue_density_flag > 0) s.ue_density_per_km2 = ue_density_flag;
            if (seed_flag >= 0) s.master_seed = static_cast<unsigned>(seed_flag);
            ScenarioResult result = run_scenario(s, trace_alloc);
            emit_outputs(result, s, out_dir);
            std::cout << "coverage " << result.coverage_mean << " +- " << result.coverage_std
                      << ", avg throughput (all UEs) " << result.avg_all_mean * 1e-9 << " +- "
                      << result.avg_all_std * 1e-9 << " Gbps, outputs in " << out_dir << "\n";
        } else if (*sweep) {
            SweepAxes axes = load_sweep_file(axes_path);
            auto rows = run_sweep(axes);
            emit_sweep_csv(rows, sweep_out);
            std::cout << rows.size() << " sweep cells written to " << sweep_out << "\n";
        } else if (*trace) {
            UrbanLayout layout = load_layout_file(layout_path);
            auto bss = place_bs(layout, tp_bs_density);
            auto ues = place_ue(layout, tp_ue_density, tp_seed);
            if (bs_id < 0 || bs_id >= static_cast<int>(bss.size()))
                throw std::runtime_error("BS id out of range (have " +
                                         std::to_string(bss.size()) + " BSs)");
            RadioConfig cfg;
            PathInventory inv = trace_paths(layout, bss[bs_id], ues, cfg.f_c_hz);
            if (trace_out.empty()) {
                save_inventory(inv, std::cout);
            } else {
                save_inventory_file(inv, trace_out);
                std::cout << inv.path_count() << " paths written to " << trace_out << "\n";
            }
        } else if (*gen) {
            UrbanLayout layout = generate_layout(layout_preset(gen_preset), gen_seed);
            save_layout_file(layout, gen_out);
            std::cout << layout.buildings.size() << " buildings written to " << gen_out << "\n";
        } else if (*cuts) {
            PatternSpec spec;
            spec.kind = cut_kind;
            spec.n_per_side = cut_n;
            spec.hpbw_deg = cut_hpbw;
            spec.peak_gain_dbi = cut_peak;
            const AntennaPattern& p = make_pattern(spec);
            if (cut_out.empty()) {
                p.export_cuts_csv(std::cout);
            } else {
                std::ofstream os(cut_out);
                if (!os) throw std::runtime_error("cannot write " + cut_out);
                p.export_cuts_csv(os);
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
