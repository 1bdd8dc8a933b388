// SPDX-License-Identifier: Apache-2.0
//
// mmnet - multi-user mm-wave urban cellular downlink simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "mmnet/linkmodel.hpp"

#include <cmath>
#include <stdexcept>

namespace mmnet {

scalar tx_power_total_dbm(const RadioConfig& cfg, const AntennaPattern& bs_pattern) {
    const scalar m = cfg.p_bs_max_dbm + bs_pattern.peak_gain_dbi();
    return m < cfg.eirp_max_dbm ? cfg.p_bs_max_dbm : cfg.eirp_max_dbm - bs_pattern.peak_gain_dbi();
}

scalar tx_power_per_link_dbm(const RadioConfig& cfg, const AntennaPattern& bs_pattern,
                             int n_links) {
    if (n_links < 1) throw std::invalid_argument("n_links must be >= 1");
    // Equal split in the linear domain.
    return tx_power_total_dbm(cfg, bs_pattern) - 10.0 * std::log10(static_cast<scalar>(n_links));
}

scalar throughput_bps(scalar sinr_db, scalar air_time_ratio, const RadioConfig& cfg) {
    if (air_time_ratio <= 0 || air_time_ratio > 1)
        throw std::invalid_argument("air time ratio must be in (0,1]");
    if (sinr_db < cfg.sinr_min_db) return 0.0;
    if (sinr_db > cfg.sinr_max_db) return air_time_ratio * cfg.r_max_bps;
    return air_time_ratio * cfg.alpha * cfg.bandwidth_hz *
           std::log2(1.0 + db_to_linear(sinr_db));
}

scalar total_link_gain(const PathInventory& inv, const AntennaPattern& bs_pattern,
                       const AntennaPattern& ue_pattern, int bs_id, int ue_id, int path_index) {
    const auto* paths = inv.find(bs_id, ue_id);
    if (!paths) throw std::out_of_range("total_link_gain: no paths for pair");
    if (path_index < 0 || path_index >= static_cast<int>(paths->size()))
        throw std::out_of_range("total_link_gain: path index out of range");
    const PropagationPath& k = (*paths)[path_index];

    scalar total = 0;
    for (const PropagationPath& j : *paths) {
        const scalar g_bs = bs_pattern.gain_offset_db(k.aod_az_deg - j.aod_az_deg,
                                                      k.aod_el_deg - j.aod_el_deg);
        const scalar g_ue = ue_pattern.gain_offset_db(k.aoa_az_deg - j.aoa_az_deg,
                                                      k.aoa_el_deg - j.aoa_el_deg);
        total += db_to_linear(g_bs + g_ue - j.path_loss_db);
    }
    return total;
}

int AllocationState::bs_load(int bs_id) const {
    auto it = bs_load_.find(bs_id);
    return it == bs_load_.end() ? 0 : it->second;
}

void AllocationState::add_link(int bs_id, int ue_id, int path_index) {
    const auto* paths = inventory_->find(bs_id, ue_id);
    if (!paths || path_index < 0 || path_index >= static_cast<int>(paths->size()))
        throw std::out_of_range("add_link: invalid pair or path index");
    Link l;
    l.bs_id = bs_id;
    l.ue_id = ue_id;
    l.path_index = path_index;
    links_.push_back(l);
    ++bs_load_[bs_id];
}

const PropagationPath& AllocationState::serving_path(const Link& l) const {
    return (*inventory_->find(l.bs_id, l.ue_id))[l.path_index];
}

scalar AllocationState::intra_cell_interference_mw(std::size_t link_index) const {
    if (cfg_.mac != MacScheme::SDMA) return 0.0;
    const Link& victim = links_[link_index];
    const PropagationPath& serving = serving_path(victim);
    const auto* victim_paths = inventory_->find(victim.bs_id, victim.ue_id);

    scalar total = 0;
    for (std::size_t i = 0; i < links_.size(); ++i) {
        if (i == link_index) continue;
        const Link& other = links_[i];
        if (other.bs_id != victim.bs_id) continue;
        const PropagationPath& steer_i = serving_path(other);
        const scalar p_i_mw = dbm_to_mw(other.tx_power_dbm);
        for (const PropagationPath& j : *victim_paths) {
            const scalar g_bs = bs_pattern_->gain_offset_db(steer_i.aod_az_deg - j.aod_az_deg,
                                                            steer_i.aod_el_deg - j.aod_el_deg);
            const scalar g_ue = ue_pattern_->gain_offset_db(serving.aoa_az_deg - j.aoa_az_deg,
                                                            serving.aoa_el_deg - j.aoa_el_deg);
            total += db_to_linear(g_bs + g_ue - j.path_loss_db) * p_i_mw;
        }
    }
    return total;
}

scalar AllocationState::inter_cell_interference_mw(std::size_t link_index) const {
    if (cfg_.mac == MacScheme::SU) return 0.0;
    const Link& victim = links_[link_index];
    const PropagationPath& serving = serving_path(victim);

    scalar total = 0;
    for (std::size_t i = 0; i < links_.size(); ++i) {
        if (i == link_index) continue;
        const Link& other = links_[i];
        if (other.bs_id == victim.bs_id) continue;
        const auto* cross_paths = inventory_->find(other.bs_id, victim.ue_id);
        if (!cross_paths) continue;
        const PropagationPath& steer_i = serving_path(other);
        // Activity ratio of the interfering BS's links under TDMA.
        const scalar a_r = cfg_.mac == MacScheme::TDMA
                               ? 1.0 / static_cast<scalar>(bs_load(other.bs_id))
                               : 1.0;
        const scalar p_i_mw = dbm_to_mw(other.tx_power_dbm);
        for (const PropagationPath& j : *cross_paths) {
            const scalar g_bs = bs_pattern_->gain_offset_db(steer_i.aod_az_deg - j.aod_az_deg,
                                                            steer_i.aod_el_deg - j.aod_el_deg);
            const scalar g_ue = ue_pattern_->gain_offset_db(serving.aoa_az_deg - j.aoa_az_deg,
                                                            serving.aoa_el_deg - j.aoa_el_deg);
            total += db_to_linear(g_bs + g_ue - j.path_loss_db) * p_i_mw * a_r;
        }
    }
    return total;
}

scalar AllocationState::sinr_db(std::size_t link_index) const {
    const Link& l = links_[link_index];
    const scalar t = total_link_gain(*inventory_, *bs_pattern_, *ue_pattern_, l.bs_id, l.ue_id,
                                     l.path_index);
    const scalar signal_mw = t * dbm_to_mw(l.tx_power_dbm);
    const scalar denom_mw = l.i_intra_mw + l.i_inter_mw + cfg_.noise_power_mw();
    return linear_to_db(signal_mw / denom_mw);
}

void AllocationState::recompute_all() {
    // Powers and air-time ratios first: interference terms depend on them.
    for (Link& l : links_) {
        const int load = bs_load(l.bs_id);
        const int n_power = cfg_.mac == MacScheme::SDMA ? load : 1;
        l.tx_power_dbm = tx_power_per_link_dbm(cfg_, *bs_pattern_, n_power);
        l.air_time_ratio = cfg_.mac == MacScheme::TDMA ? 1.0 / static_cast<scalar>(load) : 1.0;
    }
    for (std::size_t i = 0; i < links_.size(); ++i) {
        links_[i].i_intra_mw = intra_cell_interference_mw(i);
        links_[i].i_inter_mw = inter_cell_interference_mw(i);
    }
    for (std::size_t i = 0; i < links_.size(); ++i) {
        links_[i].sinr_db = sinr_db(i);
        links_[i].throughput_bps = throughput_bps(links_[i].sinr_db, links_[i].air_time_ratio,
                                                  cfg_);
    }
}

void AllocationState::snapshot() {
    snapshots_.push_back({links_, bs_load_});
}

void AllocationState::restore() {
    if (snapshots_.empty()) throw std::logic_error("restore without snapshot");
    links_ = std::move(snapshots_.back().links);
    bs_load_ = std::move(snapshots_.back().bs_load);
    snapshots_.pop_back();
}

void AllocationState::discard_snapshot() {
    if (snapshots_.empty()) throw std::logic_error("discard without snapshot");
    snapshots_.pop_back();
}

} // namespace mmnet
