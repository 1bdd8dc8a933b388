// SPDX-License-Identifier: Apache-2.0
//
// mmnet - multi-user mm-wave urban cellular downlink simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef MMNET_LINKMODEL_HPP
#define MMNET_LINKMODEL_HPP

#include "mmnet/antenna.hpp"
#include "mmnet/propagation.hpp"
#include "mmnet/types.hpp"

#include <limits>
#include <map>
#include <vector>

namespace mmnet {

enum class MacScheme { SU, TDMA, SDMA };

struct RadioConfig {
    scalar f_c_hz = 60e9;
    scalar p_bs_max_dbm = 30.0;
    scalar eirp_max_dbm = 40.0;
    scalar bandwidth_hz = 1e9;
    scalar noise_figure_db = 6.0;
    scalar sinr_min_db = -10.0;
    scalar sinr_max_db = 22.05;
    scalar r_max_bps = 4.4e9;
    scalar alpha = 0.6;
    MacScheme mac = MacScheme::SDMA;
    int n_limit = kUnlimited; // max links per BS (SDMA sub-arrays)

    static constexpr int kUnlimited = std::numeric_limits<int>::max();

    scalar noise_power_dbm() const {
        return -174.0 + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
    }
    scalar noise_power_mw() const { return dbm_to_mw(noise_power_dbm()); }
};

/// An allocated directional link: the serving path plus its current metrics
/// under the network-wide allocation.
struct Link {
    int bs_id = -1;
    int ue_id = -1;
    int path_index = 0; // into the inventory list for (bs_id, ue_id)
    scalar tx_power_dbm = 0;
    scalar sinr_db = 0;
    scalar throughput_bps = 0;
    scalar air_time_ratio = 1.0;
    scalar i_intra_mw = 0;
    scalar i_inter_mw = 0;
};

/// Total BS power for one cell: p_bs_max if p_bs_max + peak gain stays under
/// the EIRP cap, else eirp_max - peak gain. Per-link share splits that total
/// equally in the linear domain across n_links.
scalar tx_power_total_dbm(const RadioConfig& cfg, const AntennaPattern& bs_pattern);
scalar tx_power_per_link_dbm(const RadioConfig& cfg, const AntennaPattern& bs_pattern,
                             int n_links);

/// Truncated Shannon throughput: 0 below sinr_min, a_r * r_max above
/// sinr_max, a_r * alpha * B * log2(1 + sinr) in between.
scalar throughput_bps(scalar sinr_db, scalar air_time_ratio, const RadioConfig& cfg);

/// Sum over all paths of a pair of G_bs * G_ue / L with both main lobes
/// steered along path k. Linear (dimensionless) gain. Throws if the pair has
/// no inventory entry or k is out of range.
scalar total_link_gain(const PathInventory& inv, const AntennaPattern& bs_pattern,
                       const AntennaPattern& ue_pattern, int bs_id, int ue_id, int path_index);

/// Network-wide allocation snapshot: the allocated link set plus the shared
/// inventory/pattern/config context. recompute_all() refreshes per-link
/// power, air time, interference, SINR and throughput.
class AllocationState {
public:
    AllocationState(const PathInventory& inventory, const AntennaPattern& bs_pattern,
                    const AntennaPattern& ue_pattern, const RadioConfig& cfg)
        : inventory_(&inventory), bs_pattern_(&bs_pattern), ue_pattern_(&ue_pattern),
          cfg_(cfg) {}

    const RadioConfig& config() const { return cfg_; }
    const PathInventory& inventory() const { return *inventory_; }
    const AntennaPattern& bs_pattern() const { return *bs_pattern_; }
    const AntennaPattern& ue_pattern() const { return *ue_pattern_; }

    const std::vector<Link>& links() const { return links_; }
    int bs_load(int bs_id) const;

    /// Adds a link serving (bs, ue) along path_index; metrics stale until
    /// recompute_all().
    void add_link(int bs_id, int ue_id, int path_index);
    void recompute_all();

    /// Single-depth snapshot/restore for provisional admissions. restore()
    /// without a pending snapshot is a logic error.
    void snapshot();
    void restore();
    void discard_snapshot();

    scalar intra_cell_interference_mw(std::size_t link_index) const;
    scalar inter_cell_interference_mw(std::size_t link_index) const;
    scalar sinr_db(std::size_t link_index) const;

private:
    const PathInventory* inventory_;
    const AntennaPattern* bs_pattern_;
    const AntennaPattern* ue_pattern_;
    RadioConfig cfg_;

    std::vector<Link> links_;
    std::map<int, int> bs_load_;

    struct Snapshot {
        std::vector<Link> links;
        std::map<int, int> bs_load;
    };
    std::vector<Snapshot> snapshots_;

    const PropagationPath& serving_path(const Link& l) const;
};

} // namespace mmnet

#endif // MMNET_LINKMODEL_HPP
