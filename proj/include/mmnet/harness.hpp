// SPDX-License-Identifier: Apache-2.0
//
// mmnet - multi-user mm-wave urban cellular downlink simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef MMNET_HARNESS_HPP
#define MMNET_HARNESS_HPP

#include "mmnet/allocation.hpp"
#include "mmnet/geometry.hpp"
#include "mmnet/linkmodel.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mmnet {

/// Antenna configuration by name: "iso", "ideal" (hpbw + peak gain), or
/// "array" (N elements per side).
struct PatternSpec {
    std::string kind = "ideal";
    scalar hpbw_deg = 10.0;
    scalar peak_gain_dbi = 25.0;
    int n_per_side = 8;
};

/// Builds (and caches) the pattern for a spec; array grids are shared.
const AntennaPattern& make_pattern(const PatternSpec& spec);

std::string mac_name(MacScheme mac);
MacScheme mac_from_name(const std::string& name);

struct Scenario {
    int schema_version = 1;
    std::string layout_file;   // takes precedence over preset/params when set
    std::string layout_preset; // "dense" / "open"; empty = explicit params
    LayoutParams layout_params;
    scalar bs_density_per_km2 = 64.0;
    scalar ue_density_per_km2 = 1000.0;
    PatternSpec bs_pattern;
    PatternSpec ue_pattern;
    RadioConfig radio;
    scalar h_bs_m = 6.0;
    scalar h_ue_m = 1.5;
    scalar prune_margin_db = 10.0; // prune floor = noise power - margin
    int n_realizations = 5;
    unsigned master_seed = 1;
};

Scenario load_scenario_file(const std::string& path);
void save_scenario_file(const Scenario& s, const std::string& path);

/// Stand-in dBm value for an exactly-zero interference sum, keeping CSV
/// columns finite.
inline constexpr scalar kZeroInterferenceDbm = -250.0;

struct UeRecord {
    int realization = 0;
    int ue_id = -1;
    scalar x = 0, y = 0;
    bool feasible = false; // has at least one path in the pruned inventory
    bool served = false;
    int bs_id = -1;
    scalar bs_x = 0, bs_y = 0;
    PathKind path_kind = PathKind::LOS;
    scalar sinr_db = 0;
    scalar throughput_bps = 0;
    scalar i_intra_dbm = kZeroInterferenceDbm; // floored for zero power sums
    scalar i_inter_dbm = kZeroInterferenceDbm;
};

struct MetricsBundle {
    std::vector<UeRecord> records;
    int n_deployed = 0;
    int n_served = 0;
    scalar coverage_ratio = 0;       // served / deployed
    scalar coverage_ratio_feasible = 0; // served / UEs with any path
    scalar avg_throughput_all_bps = 0;
    scalar avg_throughput_served_bps = 0;
    scalar served_ratio = 1.0; // vs N_limit = unlimited companion run
};

struct ScenarioResult {
    std::vector<MetricsBundle> realizations;
    MetricsBundle pooled; // per-UE records pooled across realizations

    scalar coverage_mean = 0, coverage_std = 0;
    scalar avg_all_mean = 0, avg_all_std = 0;
    scalar avg_served_mean = 0, avg_served_std = 0;
    scalar served_ratio_mean = 1, served_ratio_std = 0;
};

/// Realization seed derivation from the master seed (splitmix64 step), so a
/// single realization can be re-run in isolation.
unsigned realization_seed(unsigned master_seed, int realization);

UrbanLayout build_layout(const Scenario& s);

MetricsBundle run_realization(const Scenario& s, int realization, bool trace_alloc = false);
ScenarioResult run_scenario(const Scenario& s, bool trace_alloc = false);

/// Writes ue_records.csv, cdf_sinr.csv, cdf_throughput.csv,
/// cdf_interference.csv, summary.csv, links.csv into out_dir.
void emit_outputs(const ScenarioResult& result, const Scenario& s, const std::string& out_dir);

struct SweepAxes {
    Scenario base;
    std::vector<scalar> bs_densities;
    std::vector<scalar> ue_densities;
    std::vector<MacScheme> macs;
    std::vector<PatternSpec> bs_patterns;
    std::vector<PatternSpec> ue_patterns;
    std::vector<int> n_limits;
};

SweepAxes load_sweep_file(const std::string& path);

struct SweepRow {
    Scenario scenario;
    ScenarioResult result;
};

/// Cross-product execution over the declared axes; every axis must be
/// non-empty.
std::vector<SweepRow> run_sweep(const SweepAxes& axes);
void emit_sweep_csv(const std::vector<SweepRow>& rows, const std::string& out_path);

} // namespace mmnet

#endif // MMNET_HARNESS_HPP
