// SPDX-License-Identifier: Apache-2.0
//
// mmnet - multi-user mm-wave urban cellular downlink simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "mmnet/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace mmnet {

std::vector<CandidateLink> build_candidates(const PathInventory& inv,
                                            const AntennaPattern& bs_pattern,
                                            const AntennaPattern& ue_pattern,
                                            const RadioConfig& cfg) {
    std::vector<CandidateLink> out;
    const scalar p_full_dbm = tx_power_per_link_dbm(cfg, bs_pattern, 1);
    for (const auto& [key, list] : inv.pairs()) {
        for (int k = 0; k < static_cast<int>(list.size()); ++k) {
            const scalar t =
                total_link_gain(inv, bs_pattern, ue_pattern, key.first, key.second, k);
            CandidateLink c;
            c.bs_id = key.first;
            c.ue_id = key.second;
            c.path_index = k;
            c.snr_db = mw_to_dbm(t * dbm_to_mw(p_full_dbm)) - cfg.noise_power_dbm();
            out.push_back(c);
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const CandidateLink& a, const CandidateLink& b) {
        if (a.snr_db != b.snr_db) return a.snr_db > b.snr_db;
        if (a.ue_id != b.ue_id) return a.ue_id < b.ue_id;
        if (a.bs_id != b.bs_id) return a.bs_id < b.bs_id;
        return a.path_index < b.path_index;
    });
    return out;
}

AllocationResult allocate_greedy(const std::vector<CandidateLink>& candidates,
                                 AllocationState& state, const std::vector<int>& all_ue_ids) {
    if (!state.links().empty())
        throw std::invalid_argument("allocate_greedy requires an empty allocation state");
    const RadioConfig& cfg = state.config();
    const bool limit_applies = cfg.mac == MacScheme::SDMA; // HBF sub-array budget

    AllocationResult result;
    std::set<int> served_ues;
    std::vector<bool> consumed(candidates.size(), false);

    for (std::size_t idx = 0; idx < candidates.size(); ++idx) {
        if (consumed[idx]) continue;
        const CandidateLink& c = candidates[idx];

        if (limit_applies && state.bs_load(c.bs_id) >= cfg.n_limit) {
            result.log.push_back({c, AllocDecision::Outcome::RejectedBsLimit,
                                  "BS at sub-array limit"});
            continue;
        }

        state.snapshot();
        state.add_link(c.bs_id, c.ue_id, c.path_index);
        state.recompute_all();

        bool ok = true;
        for (const Link& l : state.links())
            if (l.sinr_db < cfg.sinr_min_db) { ok = false; break; }

        if (ok) {
            state.discard_snapshot();
            served_ues.insert(c.ue_id);
            // Remaining candidates of a served UE leave the pool.
            for (std::size_t j = idx + 1; j < candidates.size(); ++j)
                if (candidates[j].ue_id == c.ue_id) consumed[j] = true;
            result.log.push_back({c, AllocDecision::Outcome::Accepted, "committed"});
        } else {
            state.restore();
            result.log.push_back({c, AllocDecision::Outcome::RolledBack,
                                  "SINR constraint violated after admission"});
        }
    }

    result.links = state.links();
    for (int ue : all_ue_ids)
        if (!served_ues.count(ue)) result.dropped_ues.push_back(ue);
    return result;
}

AllocationResult allocate_exhaustive(const PathInventory& inv, const AntennaPattern& bs_pattern,
                                     const AntennaPattern& ue_pattern, const RadioConfig& cfg,
                                     const std::vector<int>& all_ue_ids,
                                     double max_assignments) {
    // Per-UE option lists (index 0 = unserved).
    std::vector<int> ue_ids;
    std::vector<std::vector<CandidateLink>> options;
    for (int ue : all_ue_ids) {
        std::vector<CandidateLink> opts;
        for (const auto& [key, list] : inv.pairs()) {
            if (key.second != ue) continue;
            for (int k = 0; k < static_cast<int>(list.size()); ++k)
                opts.push_back({key.first, ue, k, 0.0});
        }
        ue_ids.push_back(ue);
        options.push_back(std::move(opts));
    }

    double total = 1;
    for (const auto& opts : options) {
        total *= static_cast<double>(opts.size() + 1);
        if (total > max_assignments)
            throw std::runtime_error(
                "exhaustive search refused: assignment space exceeds guard (" +
                std::to_string(total) + " > " + std::to_string(max_assignments) + ")");
    }

    const std::size_t n_ues = ue_ids.size();
    std::vector<int> choice(n_ues, 0); // 0 = unserved, i>0 = options[u][i-1]

    struct Best {
        bool valid = false;
        scalar objective = -1;
        int served = -1;
        std::vector<int> choice;
        std::vector<Link> links;
    } best;

    std::vector<int> current(n_ues, 0);
    const bool limit_applies = cfg.mac == MacScheme::SDMA;

    auto evaluate = [&]() {
        AllocationState state(inv, bs_pattern, ue_pattern, cfg);
        int served = 0;
        for (std::size_t u = 0; u < n_ues; ++u) {
            if (current[u] == 0) continue;
            const CandidateLink& c = options[u][current[u] - 1];
            state.add_link(c.bs_id, c.ue_id, c.path_index);
            ++served;
        }
        if (limit_applies)
            for (const Link& l : state.links())
                if (state.bs_load(l.bs_id) > cfg.n_limit) return;
        state.recompute_all();
        for (const Link& l : state.links())
            if (l.sinr_db < cfg.sinr_min_db) return;
        scalar obj = 0;
        for (const Link& l : state.links()) obj += l.throughput_bps;

        const bool better =
            !best.valid || obj > best.objective ||
            (obj == best.objective &&
             (served > best.served ||
              (served == best.served && current < best.choice)));
        if (better) {
            best.valid = true;
            best.objective = obj;
            best.served = served;
            best.choice = current;
            best.links = state.links();
        }
    };

    // Odometer enumeration over the option vectors.
    for (;;) {
        evaluate();
        std::size_t u = 0;
        while (u < n_ues) {
            if (++current[u] <= static_cast<int>(options[u].size())) break;
            current[u] = 0;
            ++u;
        }
        if (u == n_ues) break;
    }

    AllocationResult result;
    result.links = best.links;
    for (std::size_t u = 0; u < n_ues; ++u)
        if (!best.valid || best.choice[u] == 0) result.dropped_ues.push_back(ue_ids[u]);
    return result;
}

} // namespace mmnet
