// SPDX-License-Identifier: Apache-2.0
//
// mmnet - multi-user mm-wave urban cellular downlink simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef MMNET_PROPAGATION_HPP
#define MMNET_PROPAGATION_HPP

#include "mmnet/antenna.hpp"
#include "mmnet/geometry.hpp"
#include "mmnet/types.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace mmnet {

enum class PathKind { LOS, NLOS };

/// One feasible propagation path between a BS and a UE: departure/arrival
/// angles, unfolded length, loss, and the reflecting wall sequence.
struct PropagationPath {
    PathKind kind = PathKind::LOS;
    int bounces = 0; // 0..2; 0 iff LOS
    scalar aod_az_deg = 0, aod_el_deg = 0; // at the BS
    scalar aoa_az_deg = 0, aoa_el_deg = 0; // at the UE
    scalar path_loss_db = 0;
    scalar length_m = 0;
    std::vector<int> wall_ids; // reflecting walls in bounce order
};

/// Per-pair path lists, each sorted ascending by path loss.
class PathInventory {
public:
    using Key = std::pair<int, int>; // (bs_id, ue_id)

    void add(int bs_id, int ue_id, PropagationPath path);
    const std::vector<PropagationPath>* find(int bs_id, int ue_id) const;
    const std::map<Key, std::vector<PropagationPath>>& pairs() const { return paths_; }
    std::size_t path_count() const;
    bool empty() const { return paths_.empty(); }

private:
    std::map<Key, std::vector<PropagationPath>> paths_;
};

/// Free-space path loss 20*log10(4*pi*d*f/c) in dB. Throws on d <= 0.
scalar fspl_db(scalar distance_m, scalar f_c_hz);

inline constexpr scalar kReflectionLossDb = 3.0; // glass walls, per bounce

/// Image-method path search for one BS against a UE set: the LOS segment if
/// unblocked, plus all specular one- and two-bounce paths off vertical wall
/// faces with every sub-segment unblocked. Loss = FSPL(unfolded length) +
/// 3 dB per bounce. An empty list for a pair means outage.
PathInventory trace_paths(const UrbanLayout& layout, const Node& bs,
                          const std::vector<Node>& ues, scalar f_c_hz,
                          int max_bounces = 2);

/// trace_paths over every BS, merged into one inventory.
PathInventory trace_all(const UrbanLayout& layout, const std::vector<Node>& bss,
                        const std::vector<Node>& ues, scalar f_c_hz,
                        int max_bounces = 2);

/// Columnar inventory file:
/// bs_id,ue_id,kind,bounces,aod_az,aod_el,aoa_az,aoa_el,path_loss_db,length_m
/// with '#' comments. Malformed rows are rejected with their line number.
PathInventory load_inventory(std::istream& is,
                             const std::vector<int>* known_bs_ids = nullptr,
                             const std::vector<int>* known_ue_ids = nullptr);
PathInventory load_inventory_file(const std::string& path,
                                  const std::vector<int>* known_bs_ids = nullptr,
                                  const std::vector<int>* known_ue_ids = nullptr);
void save_inventory(const PathInventory& inv, std::ostream& os);
void save_inventory_file(const PathInventory& inv, const std::string& path);

/// Drops paths whose best-case RSS (single-link Tx power, both peak gains)
/// is below floor_dbm. Idempotent.
PathInventory prune_inventory(const PathInventory& inv, scalar floor_dbm,
                              scalar tx_power_dbm, scalar bs_peak_gain_dbi,
                              scalar ue_peak_gain_dbi);

} // namespace mmnet

#endif // MMNET_PROPAGATION_HPP
