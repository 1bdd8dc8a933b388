// SPDX-License-Identifier: Apache-2.0
//
// mmnet - multi-user mm-wave urban cellular downlink simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef MMNET_ALLOCATION_HPP
#define MMNET_ALLOCATION_HPP

#include "mmnet/linkmodel.hpp"

#include <string>
#include <vector>

namespace mmnet {

/// A (BS, UE, path) triple with its interference-free full-power SNR.
struct CandidateLink {
    int bs_id = -1;
    int ue_id = -1;
    int path_index = 0;
    scalar snr_db = 0;
};

struct AllocDecision {
    enum class Outcome { Accepted, RejectedBsLimit, RejectedSinr, RolledBack };
    CandidateLink candidate;
    Outcome outcome;
    std::string reason;
};

struct AllocationResult {
    std::vector<Link> links;
    std::vector<int> dropped_ues;
    std::vector<AllocDecision> log;

    scalar objective_bps() const {
        scalar sum = 0;
        for (const Link& l : links) sum += l.throughput_bps;
        return sum;
    }
};

/// One candidate per (UE, BS, path), sorted by descending SNR (equivalently
/// descending interference-free throughput); ties by ue_id, bs_id,
/// path_index. SNR assumes a single full-power link (n = 1, a_r = 1).
std::vector<CandidateLink> build_candidates(const PathInventory& inv,
                                            const AntennaPattern& bs_pattern,
                                            const AntennaPattern& ue_pattern,
                                            const RadioConfig& cfg);

/// Greedy admission over the sorted candidate list: each candidate is
/// provisionally added, all link metrics are recomputed network-wide, and
/// the admission is rolled back if any allocated link (including the
/// candidate) falls below sinr_min. A committed UE's remaining candidates
/// are discarded. `all_ue_ids` fixes the dropped-UE accounting base.
AllocationResult allocate_greedy(const std::vector<CandidateLink>& candidates,
                                 AllocationState& state, const std::vector<int>& all_ue_ids);

/// Exhaustive enumeration over per-UE options (each candidate or unserved),
/// maximizing total throughput subject to the coverage, power, and per-BS
/// link-count constraints. Ties break toward more served UEs, then the
/// lexicographically smallest option vector. Throws if the assignment count
/// exceeds max_assignments.
AllocationResult allocate_exhaustive(const PathInventory& inv, const AntennaPattern& bs_pattern,
                                     const AntennaPattern& ue_pattern, const RadioConfig& cfg,
                                     const std::vector<int>& all_ue_ids,
                                     double max_assignments = 1e6);

} // namespace mmnet

#endif // MMNET_ALLOCATION_HPP
