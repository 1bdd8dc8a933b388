// SPDX-License-Identifier: Apache-2.0
//
// mmnet - multi-user mm-wave urban cellular downlink simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "mmnet/harness.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace mmnet {

using nlohmann::json;

const AntennaPattern& make_pattern(const PatternSpec& spec) {
    static std::map<std::string, AntennaPattern> cache;
    static std::mutex mutex;

    std::ostringstream key;
    key << spec.kind << '|' << spec.hpbw_deg << '|' << spec.peak_gain_dbi << '|'
        << spec.n_per_side;

    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(key.str());
    if (it != cache.end()) return it->second;

    AntennaPattern p = AntennaPattern::isotropic();
    if (spec.kind == "iso") {
        // already isotropic
    } else if (spec.kind == "ideal") {
        p = AntennaPattern::ideal_sector(spec.hpbw_deg, spec.peak_gain_dbi);
    } else if (spec.kind == "array") {
        p = AntennaPattern::planar_array(spec.n_per_side);
    } else {
        throw std::invalid_argument("unknown antenna kind: " + spec.kind);
    }
    return cache.emplace(key.str(), std::move(p)).first->second;
}

std::string mac_name(MacScheme mac) {
    switch (mac) {
    case MacScheme::SU: return "SU";
    case MacScheme::TDMA: return "TDMA";
    case MacScheme::SDMA: return "SDMA";
    }
    return "?";
}

MacScheme mac_from_name(const std::string& name) {
    if (name == "SU" || name == "su") return MacScheme::SU;
    if (name == "TDMA" || name == "tdma") return MacScheme::TDMA;
    if (name == "SDMA" || name == "sdma") return MacScheme::SDMA;
    throw std::invalid_argument("unknown MAC scheme: " + name);
}

namespace {

PatternSpec pattern_from_json(const json& j) {
    PatternSpec p;
    p.kind = j.at("kind").get<std::string>();
    if (p.kind == "ideal") {
        p.hpbw_deg = j.at("hpbw_deg").get<scalar>();
        p.peak_gain_dbi = j.at("peak_gain_dbi").get<scalar>();
    } else if (p.kind == "array") {
        p.n_per_side = j.at("n").get<int>();
    } else if (p.kind != "iso") {
        throw std::invalid_argument("unknown antenna kind: " + p.kind);
    }
    return p;
}

json pattern_to_json(const PatternSpec& p) {
    json j{{"kind", p.kind}};
    if (p.kind == "ideal") {
        j["hpbw_deg"] = p.hpbw_deg;
        j["peak_gain_dbi"] = p.peak_gain_dbi;
    } else if (p.kind == "array") {
        j["n"] = p.n_per_side;
    }
    return j;
}

std::string pattern_label(const PatternSpec& p) {
    std::ostringstream os;
    if (p.kind == "iso") os << "iso";
    else if (p.kind == "ideal") os << "ideal" << p.hpbw_deg;
    else os << "array" << p.n_per_side << 'x' << p.n_per_side;
    return os.str();
}

} // namespace

namespace {

Scenario scenario_from_json(const json& j) {
    Scenario s;
    s.schema_version = j.at("schema_version").get<int>();
    if (s.schema_version != 1)
        throw std::runtime_error("unsupported scenario schema_version");

    if (j.contains("layout_file")) s.layout_file = j["layout_file"].get<std::string>();
    if (j.contains("layout_preset")) s.layout_preset = j["layout_preset"].get<std::string>();
    if (j.contains("layout_params")) {
        const json& lp = j["layout_params"];
        auto get = [&](const char* k, scalar& v) { if (lp.contains(k)) v = lp[k].get<scalar>(); };
        get("site_size_m", s.layout_params.site_size_m);
        get("network_size_m", s.layout_params.network_size_m);
        get("block_size_m", s.layout_params.block_size_m);
        get("street_width_m", s.layout_params.street_width_m);
        get("fill_ratio", s.layout_params.fill_ratio);
        get("height_min_m", s.layout_params.height_min_m);
        get("height_max_m", s.layout_params.height_max_m);
    }
    if (j.contains("bs_density")) s.bs_density_per_km2 = j["bs_density"].get<scalar>();
    if (j.contains("ue_density")) s.ue_density_per_km2 = j["ue_density"].get<scalar>();
    if (j.contains("mac")) s.radio.mac = mac_from_name(j["mac"].get<std::string>());
    if (j.contains("bs_pattern")) s.bs_pattern = pattern_from_json(j["bs_pattern"]);
    if (j.contains("ue_pattern")) s.ue_pattern = pattern_from_json(j["ue_pattern"]);
    if (j.contains("n_limit")) {
        const json& nl = j["n_limit"];
        s.radio.n_limit = nl.is_string() ? RadioConfig::kUnlimited : nl.get<int>();
    }
    if (j.contains("radio")) {
        const json& r = j["radio"];
        auto get = [&](const char* k, scalar& v) { if (r.contains(k)) v = r[k].get<scalar>(); };
        get("f_c_hz", s.radio.f_c_hz);
        get("p_bs_max_dbm", s.radio.p_bs_max_dbm);
        get("eirp_max_dbm", s.radio.eirp_max_dbm);
        get("bandwidth_hz", s.radio.bandwidth_hz);
        get("noise_figure_db", s.radio.noise_figure_db);
        get("sinr_min_db", s.radio.sinr_min_db);
        get("sinr_max_db", s.radio.sinr_max_db);
        get("r_max_bps", s.radio.r_max_bps);
        get("alpha", s.radio.alpha);
    }
    if (j.contains("h_bs_m")) s.h_bs_m = j["h_bs_m"].get<scalar>();
    if (j.contains("h_ue_m")) s.h_ue_m = j["h_ue_m"].get<scalar>();
    if (j.contains("prune_margin_db")) s.prune_margin_db = j["prune_margin_db"].get<scalar>();
    if (j.contains("n_realizations")) s.n_realizations = j["n_realizations"].get<int>();
    if (j.contains("seed")) s.master_seed = j["seed"].get<unsigned>();
    if (s.n_realizations < 1) throw std::runtime_error("n_realizations must be >= 1");
    return s;
}

} // namespace

Scenario load_scenario_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open scenario file: " + path);
    json j;
    is >> j;
    return scenario_from_json(j);
}

void save_scenario_file(const Scenario& s, const std::string& path) {
    json j;
    j["schema_version"] = s.schema_version;
    if (!s.layout_file.empty()) j["layout_file"] = s.layout_file;
    if (!s.layout_preset.empty()) j["layout_preset"] = s.layout_preset;
    j["layout_params"] = {{"site_size_m", s.layout_params.site_size_m},
                          {"network_size_m", s.layout_params.network_size_m},
                          {"block_size_m", s.layout_params.block_size_m},
                          {"street_width_m", s.layout_params.street_width_m},
                          {"fill_ratio", s.layout_params.fill_ratio},
                          {"height_min_m", s.layout_params.height_min_m},
                          {"height_max_m", s.layout_params.height_max_m}};
    j["bs_density"] = s.bs_density_per_km2;
    j["ue_density"] = s.ue_density_per_km2;
    j["mac"] = mac_name(s.radio.mac);
    j["bs_pattern"] = pattern_to_json(s.bs_pattern);
    j["ue_pattern"] = pattern_to_json(s.ue_pattern);
    if (s.radio.n_limit == RadioConfig::kUnlimited) j["n_limit"] = "unlimited";
    else j["n_limit"] = s.radio.n_limit;
    j["radio"] = {{"f_c_hz", s.radio.f_c_hz},
                  {"p_bs_max_dbm", s.radio.p_bs_max_dbm},
                  {"eirp_max_dbm", s.radio.eirp_max_dbm},
                  {"bandwidth_hz", s.radio.bandwidth_hz},
                  {"noise_figure_db", s.radio.noise_figure_db},
                  {"sinr_min_db", s.radio.sinr_min_db},
                  {"sinr_max_db", s.radio.sinr_max_db},
                  {"r_max_bps", s.radio.r_max_bps},
                  {"alpha", s.radio.alpha}};
    j["h_bs_m"] = s.h_bs_m;
    j["h_ue_m"] = s.h_ue_m;
    j["prune_margin_db"] = s.prune_margin_db;
    j["n_realizations"] = s.n_realizations;
    j["seed"] = s.master_seed;

    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write scenario file: " + path);
    os << j.dump(2) << '\n';
}

unsigned realization_seed(unsigned master_seed, int realization) {
    std::uint64_t z = (static_cast<std::uint64_t>(master_seed) << 16) +
                      static_cast<std::uint64_t>(realization) + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z = z ^ (z >> 31);
    return static_cast<unsigned>(z & 0xffffffffu);
}

UrbanLayout build_layout(const Scenario& s) {
    if (!s.layout_file.empty()) return load_layout_file(s.layout_file);
    LayoutParams params = s.layout_params;
    if (!s.layout_preset.empty()) {
        LayoutParams preset = layout_preset(s.layout_preset);
        preset.site_size_m = params.site_size_m;
        preset.network_size_m = params.network_size_m;
        params = preset;
    }
    return generate_layout(params, s.master_seed);
}

namespace {

scalar interference_dbm(scalar mw) {
    return mw > 0 ? mw_to_dbm(mw) : kZeroInterferenceDbm;
}

void finalize_aggregates(MetricsBundle& m) {
    m.n_deployed = static_cast<int>(m.records.size());
    m.n_served = 0;
    int n_feasible = 0;
    scalar sum_all = 0, sum_served = 0;
    for (const UeRecord& r : m.records) {
        if (r.served) {
            ++m.n_served;
            sum_served += r.throughput_bps;
        }
        if (r.feasible) ++n_feasible;
        sum_all += r.throughput_bps;
    }
    m.coverage_ratio = m.n_deployed ? static_cast<scalar>(m.n_served) / m.n_deployed : 0;
    m.coverage_ratio_feasible =
        n_feasible ? static_cast<scalar>(m.n_served) / n_feasible : 0;
    m.avg_throughput_all_bps = m.n_deployed ? sum_all / m.n_deployed : 0;
    m.avg_throughput_served_bps = m.n_served ? sum_served / m.n_served : 0;
}

struct RealizationContext {
    UrbanLayout layout;
    std::vector<Node> bss;
    std::vector<Node> ues;
    PathInventory inventory;
};

RealizationContext build_context(const Scenario& s, int realization) {
    RealizationContext ctx;
    ctx.layout = build_layout(s);
    ctx.bss = place_bs(ctx.layout, s.bs_density_per_km2, s.h_bs_m);
    ctx.ues = place_ue(ctx.layout, s.ue_density_per_km2,
                       realization_seed(s.master_seed, realization), s.h_ue_m);

    const AntennaPattern& bs_pat = make_pattern(s.bs_pattern);
    const AntennaPattern& ue_pat = make_pattern(s.ue_pattern);
    PathInventory raw = trace_all(ctx.layout, ctx.bss, ctx.ues, s.radio.f_c_hz);
    const scalar floor_dbm = s.radio.noise_power_dbm() - s.prune_margin_db;
    ctx.inventory = prune_inventory(raw, floor_dbm, tx_power_total_dbm(s.radio, bs_pat),
                                    bs_pat.peak_gain_dbi(), ue_pat.peak_gain_dbi());
    return ctx;
}

AllocationResult allocate_for(const RealizationContext& ctx, const Scenario& s,
                              const RadioConfig& cfg, bool trace_alloc) {
    const AntennaPattern& bs_pat = make_pattern(s.bs_pattern);
    const AntennaPattern& ue_pat = make_pattern(s.ue_pattern);
    auto candidates = build_candidates(ctx.inventory, bs_pat, ue_pat, cfg);
    std::vector<int> ue_ids;
    ue_ids.reserve(ctx.ues.size());
    for (const Node& u : ctx.ues) ue_ids.push_back(u.id);
    AllocationState state(ctx.inventory, bs_pat, ue_pat, cfg);
    AllocationResult result = allocate_greedy(candidates, state, ue_ids);
    if (trace_alloc) {
        for (const AllocDecision& d : result.log) {
            const char* outcome =
                d.outcome == AllocDecision::Outcome::Accepted ? "accept"
                : d.outcome == AllocDecision::Outcome::RejectedBsLimit ? "reject-limit"
                                                                       : "rollback";
            std::cerr << "alloc bs=" << d.candidate.bs_id << " ue=" << d.candidate.ue_id
                      << " path=" << d.candidate.path_index << " snr=" << d.candidate.snr_db
                      << " -> " << outcome << " (" << d.reason << ")\n";
        }
    }
    return result;
}

} // namespace

MetricsBundle run_realization(const Scenario& s, int realization, bool trace_alloc) {
    RealizationContext ctx = build_context(s, realization);
    AllocationResult result = allocate_for(ctx, s, s.radio, trace_alloc);

    // Companion unlimited run fixes the served-ratio baseline when the
    // sub-array budget is finite.
    std::optional<std::size_t> baseline_served;
    if (s.radio.mac == MacScheme::SDMA && s.radio.n_limit != RadioConfig::kUnlimited) {
        RadioConfig unlimited = s.radio;
        unlimited.n_limit = RadioConfig::kUnlimited;
        AllocationResult base = allocate_for(ctx, s, unlimited, false);
        baseline_served = base.links.size();
    }

    std::map<int, const Link*> by_ue;
    for (const Link& l : result.links) by_ue[l.ue_id] = &l;
    std::map<int, const Node*> bs_by_id;
    for (const Node& b : ctx.bss) bs_by_id[b.id] = &b;

    MetricsBundle m;
    m.records.reserve(ctx.ues.size());
    for (const Node& ue : ctx.ues) {
        UeRecord r;
        r.realization = realization;
        r.ue_id = ue.id;
        r.x = ue.position.x();
        r.y = ue.position.y();
        for (const Node& b : ctx.bss) {
            const auto* paths = ctx.inventory.find(b.id, ue.id);
            if (paths && !paths->empty()) { r.feasible = true; break; }
        }
        auto it = by_ue.find(ue.id);
        if (it != by_ue.end()) {
            const Link& l = *it->second;
            r.served = true;
            r.bs_id = l.bs_id;
            const Node& bs = *bs_by_id.at(l.bs_id);
            r.bs_x = bs.position.x();
            r.bs_y = bs.position.y();
            r.path_kind = (*ctx.inventory.find(l.bs_id, l.ue_id))[l.path_index].kind;
            r.sinr_db = l.sinr_db;
            r.throughput_bps = l.throughput_bps;
            r.i_intra_dbm = interference_dbm(l.i_intra_mw);
            r.i_inter_dbm = interference_dbm(l.i_inter_mw);
        }
        m.records.push_back(r);
    }
    finalize_aggregates(m);
    if (baseline_served) {
        m.served_ratio = *baseline_served == 0
                             ? 1.0
                             : static_cast<scalar>(result.links.size()) /
                                   static_cast<scalar>(*baseline_served);
    }
    return m;
}

namespace {

void mean_std(const std::vector<scalar>& v, scalar& mean, scalar& sd) {
    mean = 0;
    sd = 0;
    if (v.empty()) return;
    for (scalar x : v) mean += x;
    mean /= static_cast<scalar>(v.size());
    if (v.size() < 2) return;
    scalar ss = 0;
    for (scalar x : v) ss += (x - mean) * (x - mean);
    sd = std::sqrt(ss / static_cast<scalar>(v.size() - 1));
}

} // namespace

ScenarioResult run_scenario(const Scenario& s, bool trace_alloc) {
    ScenarioResult res;
    for (int r = 0; r < s.n_realizations; ++r)
        res.realizations.push_back(run_realization(s, r, trace_alloc));

    for (const MetricsBundle& m : res.realizations)
        res.pooled.records.insert(res.pooled.records.end(), m.records.begin(),
                                  m.records.end());
    finalize_aggregates(res.pooled);

    std::vector<scalar> cov, avg_all, avg_served, served_ratio;
    for (const MetricsBundle& m : res.realizations) {
        cov.push_back(m.coverage_ratio);
        avg_all.push_back(m.avg_throughput_all_bps);
        avg_served.push_back(m.avg_throughput_served_bps);
        served_ratio.push_back(m.served_ratio);
    }
    mean_std(cov, res.coverage_mean, res.coverage_std);
    mean_std(avg_all, res.avg_all_mean, res.avg_all_std);
    mean_std(avg_served, res.avg_served_mean, res.avg_served_std);
    mean_std(served_ratio, res.served_ratio_mean, res.served_ratio_std);
    res.pooled.served_ratio = res.served_ratio_mean;
    return res;
}

namespace {

void write_cdf(std::ostream& os, const std::string& column, std::vector<scalar> values) {
    os << column << ",probability\n";
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    for (std::size_t i = 0; i < n; ++i)
        os << values[i] << ',' << static_cast<scalar>(i + 1) / static_cast<scalar>(n) << '\n';
}

std::ofstream open_out(const std::filesystem::path& p) {
    std::ofstream os(p);
    if (!os) throw std::runtime_error("cannot write output file: " + p.string());
    return os;
}

} // namespace

void emit_outputs(const ScenarioResult& result, const Scenario& s, const std::string& out_dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory: " + out_dir);
    const fs::path dir(out_dir);

    {
        auto os = open_out(dir / "ue_records.csv");
        os << "realization,ue_id,x_m,y_m,served,bs_id,path_kind,sinr_db,throughput_bps,"
              "i_intra_dbm,i_inter_dbm\n";
        for (const UeRecord& r : result.pooled.records) {
            os << r.realization << ',' << r.ue_id << ',' << r.x << ',' << r.y << ','
               << (r.served ? 1 : 0) << ',';
            if (r.served)
                os << r.bs_id << ',' << (r.path_kind == PathKind::LOS ? "LOS" : "NLOS") << ','
                   << r.sinr_db << ',' << r.throughput_bps << ',' << r.i_intra_dbm << ','
                   << r.i_inter_dbm << '\n';
            else
                os << ",,," << 0.0 << ",,\n";
        }
    }
    {
        std::vector<scalar> sinr, tput, intra, inter;
        for (const UeRecord& r : result.pooled.records) {
            tput.push_back(r.throughput_bps);
            if (r.served) {
                sinr.push_back(r.sinr_db);
                intra.push_back(r.i_intra_dbm);
                inter.push_back(r.i_inter_dbm);
            }
        }
        {
            auto os = open_out(dir / "cdf_sinr.csv");
            write_cdf(os, "sinr_db", sinr);
        }
        {
            auto os = open_out(dir / "cdf_throughput.csv");
            write_cdf(os, "throughput_bps", tput);
        }

        auto os = open_out(dir / "cdf_interference.csv");
        os << "i_intra_dbm,intra_probability,i_inter_dbm,inter_probability,noise_floor_dbm\n";
        std::sort(intra.begin(), intra.end());
        std::sort(inter.begin(), inter.end());
        const scalar noise = s.radio.noise_power_dbm();
        const std::size_t n = std::max(intra.size(), inter.size());
        for (std::size_t i = 0; i < n; ++i) {
            if (i < intra.size())
                os << intra[i] << ','
                   << static_cast<scalar>(i + 1) / static_cast<scalar>(intra.size());
            else
                os << ',';
            os << ',';
            if (i < inter.size())
                os << inter[i] << ','
                   << static_cast<scalar>(i + 1) / static_cast<scalar>(inter.size());
            else
                os << ',';
            os << ',' << noise << '\n';
        }
    }
    {
        auto os = open_out(dir / "summary.csv");
        os << "mac,bs_pattern,ue_pattern,bs_density,ue_density,n_limit,n_realizations,"
              "n_deployed,n_served,coverage_mean,coverage_std,coverage_feasible,"
              "avg_throughput_all_mean_bps,avg_throughput_all_std_bps,"
              "avg_throughput_served_mean_bps,avg_throughput_served_std_bps,"
              "served_ratio_mean,served_ratio_std\n";
        os << mac_name(s.radio.mac) << ',' << pattern_label(s.bs_pattern) << ','
           << pattern_label(s.ue_pattern) << ',' << s.bs_density_per_km2 << ','
           << s.ue_density_per_km2 << ','
           << (s.radio.n_limit == RadioConfig::kUnlimited ? std::string("unlimited")
                                                          : std::to_string(s.radio.n_limit))
           << ',' << s.n_realizations << ',' << result.pooled.n_deployed << ','
           << result.pooled.n_served << ',' << result.coverage_mean << ','
           << result.coverage_std << ',' << result.pooled.coverage_ratio_feasible << ','
           << result.avg_all_mean << ',' << result.avg_all_std << ',' << result.avg_served_mean
           << ',' << result.avg_served_std << ',' << result.served_ratio_mean << ','
           << result.served_ratio_std << '\n';
    }
    {
        auto os = open_out(dir / "links.csv");
        os << "realization,ue_id,bs_id,ue_x_m,ue_y_m,bs_x_m,bs_y_m,path_kind\n";
        for (const UeRecord& r : result.pooled.records)
            if (r.served)
                os << r.realization << ',' << r.ue_id << ',' << r.bs_id << ',' << r.x << ','
                   << r.y << ',' << r.bs_x << ',' << r.bs_y << ','
                   << (r.path_kind == PathKind::LOS ? "LOS" : "NLOS") << '\n';
    }
}

SweepAxes load_sweep_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open sweep file: " + path);
    json j;
    is >> j;

    SweepAxes axes;
    axes.base = scenario_from_json(j.at("base"));
    const json& ax = j.at("axes");
    auto require = [&](const char* name, auto& vec) {
        if (vec.empty())
            throw std::runtime_error(std::string("sweep axis '") + name + "' is empty");
    };
    if (ax.contains("bs_density"))
        axes.bs_densities = ax["bs_density"].get<std::vector<scalar>>();
    else
        axes.bs_densities = {axes.base.bs_density_per_km2};
    require("bs_density", axes.bs_densities);
    if (ax.contains("ue_density"))
        axes.ue_densities = ax["ue_density"].get<std::vector<scalar>>();
    else
        axes.ue_densities = {axes.base.ue_density_per_km2};
    require("ue_density", axes.ue_densities);
    if (ax.contains("mac")) {
        for (const auto& m : ax["mac"]) axes.macs.push_back(mac_from_name(m.get<std::string>()));
    } else {
        axes.macs = {axes.base.radio.mac};
    }
    require("mac", axes.macs);
    if (ax.contains("bs_pattern"))
        for (const auto& p : ax["bs_pattern"]) axes.bs_patterns.push_back(pattern_from_json(p));
    else
        axes.bs_patterns = {axes.base.bs_pattern};
    require("bs_pattern", axes.bs_patterns);
    if (ax.contains("ue_pattern"))
        for (const auto& p : ax["ue_pattern"]) axes.ue_patterns.push_back(pattern_from_json(p));
    else
        axes.ue_patterns = {axes.base.ue_pattern};
    require("ue_pattern", axes.ue_patterns);
    if (ax.contains("n_limit"))
        for (const auto& n : ax["n_limit"])
            axes.n_limits.push_back(n.is_string() ? RadioConfig::kUnlimited : n.get<int>());
    else
        axes.n_limits = {axes.base.radio.n_limit};
    require("n_limit", axes.n_limits);
    return axes;
}

std::vector<SweepRow> run_sweep(const SweepAxes& axes) {
    std::vector<SweepRow> rows;
    for (scalar bs_d : axes.bs_densities)
        for (scalar ue_d : axes.ue_densities)
            for (MacScheme mac : axes.macs)
                for (const PatternSpec& bp : axes.bs_patterns)
                    for (const PatternSpec& up : axes.ue_patterns)
                        for (int nl : axes.n_limits) {
                            Scenario s = axes.base;
                            s.bs_density_per_km2 = bs_d;
                            s.ue_density_per_km2 = ue_d;
                            s.radio.mac = mac;
                            s.bs_pattern = bp;
                            s.ue_pattern = up;
                            s.radio.n_limit = nl;
                            rows.push_back({s, run_scenario(s)});
                        }
    return rows;
}

void emit_sweep_csv(const std::vector<SweepRow>& rows, const std::string& out_path) {
    std::ofstream os(out_path);
    if (!os) throw std::runtime_error("cannot write sweep file: " + out_path);
    os << "bs_density,ue_density,mac,bs_pattern,ue_pattern,n_limit,"
          "coverage_mean,coverage_std,avg_throughput_all_mean_bps,avg_throughput_all_std_bps,"
          "avg_throughput_served_mean_bps,avg_throughput_served_std_bps,"
          "served_ratio_mean,served_ratio_std\n";
    for (const SweepRow& row : rows) {
        const Scenario& s = row.scenario;
        os << s.bs_density_per_km2 << ',' << s.ue_density_per_km2 << ','
           << mac_name(s.radio.mac) << ',' << pattern_label(s.bs_pattern) << ','
           << pattern_label(s.ue_pattern) << ','
           << (s.radio.n_limit == RadioConfig::kUnlimited ? std::string("unlimited")
                                                          : std::to_string(s.radio.n_limit))
           << ',' << row.result.coverage_mean << ',' << row.result.coverage_std << ','
           << row.result.avg_all_mean << ',' << row.result.avg_all_std << ','
           << row.result.avg_served_mean << ',' << row.result.avg_served_std << ','
           << row.result.served_ratio_mean << ',' << row.result.served_ratio_std << '\n';
    }
}

} // namespace mmnet
