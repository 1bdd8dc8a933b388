// SPDX-License-Identifier: Apache-2.0
//
// mmnet - multi-user mm-wave urban cellular downlink simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "mmnet/linkmodel.hpp"

#include <doctest.h>

#include <array>
#include <cmath>
#include <random>
#include <vector>

using namespace mmnet;

namespace {

PropagationPath make_path(scalar loss_db, scalar aod_az = 0, scalar aod_el = 0,
                          scalar aoa_az = 180, scalar aoa_el = 0, int bounces = 0) {
    PropagationPath p;
    p.kind = bounces == 0 ? PathKind::LOS : PathKind::NLOS;
    p.bounces = bounces;
    p.aod_az_deg = aod_az;
    p.aod_el_deg = aod_el;
    p.aoa_az_deg = aoa_az;
    p.aoa_el_deg = aoa_el;
    p.path_loss_db = loss_db;
    p.length_m = 10;
    if (bounces) p.wall_ids.assign(static_cast<std::size_t>(bounces), 0);
    return p;
}

// Straight transcription of the interference model: every allocated link
// contributes through every path toward the victim, with both ends' steered
// gains applied. Intentionally naive; no shared code with AllocationState.
struct NaiveModel {
    const PathInventory& inv;
    const AntennaPattern& bsp;
    const AntennaPattern& uep;
    const RadioConfig& cfg;

    const PropagationPath& serving(const Link& l) const {
        return inv.find(l.bs_id, l.ue_id)->at(static_cast<std::size_t>(l.path_index));
    }

    int load(const std::vector<Link>& links, int bs_id) const {
        int n = 0;
        for (const Link& l : links)
            if (l.bs_id == bs_id) ++n;
        return n;
    }

    scalar link_power_mw(const std::vector<Link>& links, const Link& l) const {
        const int n = cfg.mac == MacScheme::SDMA ? load(links, l.bs_id) : 1;
        return dbm_to_mw(tx_power_per_link_dbm(cfg, bsp, n));
    }

    scalar coupled_mw(const std::vector<Link>& links, const Link& victim,
                      const Link& aggressor, scalar scale) const {
        const PropagationPath& steer_tx = serving(aggressor);
        const PropagationPath& steer_rx = serving(victim);
        const auto* paths = inv.find(aggressor.bs_id, victim.ue_id);
        if (!paths) return 0;
        scalar sum = 0;
        for (const PropagationPath& j : *paths) {
            const scalar g_tx = db_to_linear(bsp.steered_gain_db(
                {steer_tx.aod_az_deg, steer_tx.aod_el_deg}, j.aod_az_deg, j.aod_el_deg));
            const scalar g_rx = db_to_linear(uep.steered_gain_db(
                {steer_rx.aoa_az_deg, steer_rx.aoa_el_deg}, j.aoa_az_deg, j.aoa_el_deg));
            sum += scale * link_power_mw(links, aggressor) * g_tx * g_rx /
                   db_to_linear(j.path_loss_db);
        }
        return sum;
    }

    scalar intra_mw(const std::vector<Link>& links, std::size_t k) const {
        if (cfg.mac != MacScheme::SDMA) return 0;
        scalar sum = 0;
        for (std::size_t i = 0; i < links.size(); ++i)
            if (i != k && links[i].bs_id == links[k].bs_id)
                sum += coupled_mw(links, links[k], links[i], 1.0);
        return sum;
    }

    scalar inter_mw(const std::vector<Link>& links, std::size_t k) const {
        if (cfg.mac == MacScheme::SU) return 0;
        scalar sum = 0;
        for (std::size_t i = 0; i < links.size(); ++i) {
            if (links[i].bs_id == links[k].bs_id) continue;
            const scalar scale = cfg.mac == MacScheme::TDMA
                                     ? 1.0 / load(links, links[i].bs_id)
                                     : 1.0;
            sum += coupled_mw(links, links[k], links[i], scale);
        }
        return sum;
    }

    scalar sinr_db_of(const std::vector<Link>& links, std::size_t k) const {
        const Link& l = links[k];
        const PropagationPath& sv = serving(l);
        // Received signal: every path of the serving pair contributes, with
        // both beams steered along the serving path.
        scalar s = 0;
        for (const PropagationPath& j : *inv.find(l.bs_id, l.ue_id)) {
            const scalar g_tx = db_to_linear(bsp.steered_gain_db(
                {sv.aod_az_deg, sv.aod_el_deg}, j.aod_az_deg, j.aod_el_deg));
            const scalar g_rx = db_to_linear(uep.steered_gain_db(
                {sv.aoa_az_deg, sv.aoa_el_deg}, j.aoa_az_deg, j.aoa_el_deg));
            s += link_power_mw(links, l) * g_tx * g_rx / db_to_linear(j.path_loss_db);
        }
        return linear_to_db(s / (cfg.noise_power_mw() + intra_mw(links, k) +
                                 inter_mw(links, k)));
    }
};

PathInventory random_inventory(std::mt19937_64& rng, int n_bs, int n_ue) {
    std::uniform_real_distribution<scalar> loss(80, 140), az(-180, 180), el(-60, 60);
    std::uniform_int_distribution<int> n_paths(1, 3);
    PathInventory inv;
    for (int b = 0; b < n_bs; ++b)
        for (int u = 0; u < n_ue; ++u) {
            const int n = n_paths(rng);
            for (int j = 0; j < n; ++j)
                inv.add(b, u, make_path(loss(rng), az(rng), el(rng), az(rng), el(rng),
                                        j == 0 ? 0 : 1));
        }
    return inv;
}

} // namespace

TEST_CASE("total BS power respects the EIRP cap") {
    RadioConfig cfg;
    auto sector = AntennaPattern::ideal_sector(30, 15);
    CHECK(tx_power_total_dbm(cfg, sector) == doctest::Approx(25.0)); // 40 - 15
    auto iso = AntennaPattern::isotropic();
    CHECK(tx_power_total_dbm(cfg, iso) == doctest::Approx(30.0)); // under the cap
    auto arr = AntennaPattern::planar_array(8);
    CHECK(tx_power_total_dbm(cfg, arr) ==
          doctest::Approx(40.0 - arr.peak_gain_dbi()).epsilon(1e-12));
}

TEST_CASE("per-link power splits the total equally in linear terms") {
    RadioConfig cfg;
    auto sector = AntennaPattern::ideal_sector(30, 15);
    CHECK(tx_power_per_link_dbm(cfg, sector, 1) == doctest::Approx(25.0));
    CHECK(tx_power_per_link_dbm(cfg, sector, 2) ==
          doctest::Approx(25.0 - 10.0 * std::log10(2.0)));
    CHECK(tx_power_per_link_dbm(cfg, sector, 2) == doctest::Approx(21.99).epsilon(1e-3));
    // Linear sum of 4 shares recovers the total.
    const scalar share = dbm_to_mw(tx_power_per_link_dbm(cfg, sector, 4));
    CHECK(4.0 * share == doctest::Approx(dbm_to_mw(25.0)).epsilon(1e-12));
}

TEST_CASE("noise power at the default bandwidth and noise figure") {
    RadioConfig cfg;
    CHECK(cfg.noise_power_dbm() == doctest::Approx(-78.0).epsilon(1e-9));
}

TEST_CASE("truncated throughput curve") {
    RadioConfig cfg;
    CHECK(throughput_bps(-11.0, 1.0, cfg) == 0.0);
    CHECK(throughput_bps(-10.01, 1.0, cfg) == 0.0);
    CHECK(throughput_bps(30.0, 1.0, cfg) == doctest::Approx(4.4e9));
    CHECK(throughput_bps(10.0, 1.0, cfg) ==
          doctest::Approx(0.6e9 * std::log2(11.0)).epsilon(1e-12));
    CHECK(std::abs(throughput_bps(10.0, 1.0, cfg) - 2.0757e9) < 1e6);
    CHECK(throughput_bps(30.0, 0.25, cfg) == doctest::Approx(1.1e9));
    // Continuity at the upper breakpoint within 0.5%.
    const scalar below = throughput_bps(22.049999, 1.0, cfg);
    CHECK(below == doctest::Approx(4.4e9).epsilon(0.005));
}

TEST_CASE("two co-channel links of equal strength sit near 0 dB SINR") {
    // One BS, two co-located UEs, identical 88 dB LOS paths, SDMA.
    PathInventory inv;
    inv.add(0, 0, make_path(88.0));
    inv.add(0, 1, make_path(88.0));
    RadioConfig cfg;
    cfg.mac = MacScheme::SDMA;
    auto iso = AntennaPattern::isotropic();
    AllocationState st(inv, iso, iso, cfg);
    st.add_link(0, 0, 0);
    st.add_link(0, 1, 0);
    st.recompute_all();
    for (std::size_t k = 0; k < 2; ++k) {
        // S = I so the ratio is 1 before noise; noise drags it just below 0.
        CHECK(st.links()[k].sinr_db < 0.0);
        CHECK(st.links()[k].sinr_db > -0.2);
        CHECK(st.links()[k].i_intra_mw ==
              doctest::Approx(dbm_to_mw(st.links()[k].tx_power_dbm - 88.0)).epsilon(1e-12));
    }
}

TEST_CASE("TDMA shares air time and scales aggressor interference") {
    // BS0 serves UE0; BS1 serves UEs 1..n with a cross path toward UE0.
    auto build = [](int n_far) {
        PathInventory inv;
        inv.add(0, 0, make_path(88.0, 0, 0, 180, 0));
        for (int u = 1; u <= n_far; ++u)
            inv.add(1, u, make_path(90.0, 0, 0, 180, 0));
        inv.add(1, 0, make_path(110.0, 0, 0, 180, 0)); // aggressor cross path
        return inv;
    };
    RadioConfig cfg;
    cfg.mac = MacScheme::TDMA;
    auto iso = AntennaPattern::isotropic();

    PathInventory one = build(1);
    AllocationState st1(one, iso, iso, cfg);
    st1.add_link(0, 0, 0);
    st1.add_link(1, 1, 0);
    st1.recompute_all();

    PathInventory four = build(4);
    AllocationState st4(four, iso, iso, cfg);
    st4.add_link(0, 0, 0);
    for (int u = 1; u <= 4; ++u) st4.add_link(1, u, 0);
    st4.recompute_all();

    // Full power per active link: 30 dBm - 110 dB = -80 dBm, averaged over
    // the aggressor's schedule. Identical cross geometry means the 4-link
    // aggressor contributes 4 * (1/4) of the single-link value.
    CHECK(st1.links()[0].i_inter_mw == doctest::Approx(dbm_to_mw(-80.0)).epsilon(1e-12));
    CHECK(st4.links()[0].i_inter_mw ==
          doctest::Approx(st1.links()[0].i_inter_mw).epsilon(1e-12));
    CHECK(st1.links()[0].i_intra_mw == 0.0);

    // Air time splits evenly at the loaded BS.
    CHECK(st4.links()[0].air_time_ratio == doctest::Approx(1.0));
    for (int k = 1; k <= 4; ++k)
        CHECK(st4.links()[static_cast<std::size_t>(k)].air_time_ratio ==
              doctest::Approx(0.25));
    // Throughput carries the air-time factor.
    const Link& shared = st4.links()[1];
    CHECK(shared.throughput_bps ==
          doctest::Approx(throughput_bps(shared.sinr_db, 0.25, cfg)).epsilon(1e-12));
}

TEST_CASE("dedicated-spectrum links see no interference at all") {
    PathInventory inv;
    inv.add(0, 0, make_path(88.0));
    inv.add(1, 1, make_path(90.0));
    inv.add(1, 0, make_path(95.0));
    inv.add(0, 1, make_path(95.0));
    RadioConfig cfg;
    cfg.mac = MacScheme::SU;
    auto iso = AntennaPattern::isotropic();
    AllocationState st(inv, iso, iso, cfg);
    st.add_link(0, 0, 0);
    st.add_link(1, 1, 0);
    st.recompute_all();
    for (const Link& l : st.links()) {
        CHECK(l.i_intra_mw == 0.0);
        CHECK(l.i_inter_mw == 0.0);
        CHECK(l.air_time_ratio == 1.0);
    }
    // SNR = 30 dBm - 88 dB - (-78 dBm) = 20 dB for the first link.
    CHECK(st.links()[0].sinr_db == doctest::Approx(20.0).epsilon(1e-9));
}

TEST_CASE("state interference matches a naive direct sum") {
    std::mt19937_64 rng(17);
    auto sector = AntennaPattern::ideal_sector(30, 15);
    auto arr = AntennaPattern::planar_array(8);
    const AntennaPattern* bs_pats[] = {&sector, &arr};
    for (MacScheme mac : {MacScheme::SU, MacScheme::TDMA, MacScheme::SDMA}) {
        for (int trial = 0; trial < 8; ++trial) {
            const int n_bs = 2 + trial % 2, n_ue = 4 + trial % 3;
            PathInventory inv = random_inventory(rng, n_bs, n_ue);
            RadioConfig cfg;
            cfg.mac = mac;
            const AntennaPattern& bsp = *bs_pats[trial % 2];
            auto uep = AntennaPattern::ideal_sector(30, 15);
            AllocationState st(inv, bsp, uep, cfg);
            std::uniform_int_distribution<int> pick_bs(0, n_bs - 1);
            for (int u = 0; u < n_ue; ++u) {
                const int b = pick_bs(rng);
                const int n_paths = static_cast<int>(inv.find(b, u)->size());
                std::uniform_int_distribution<int> pick_path(0, n_paths - 1);
                st.add_link(b, u, pick_path(rng));
            }
            st.recompute_all();

            NaiveModel naive{inv, bsp, uep, cfg};
            for (std::size_t k = 0; k < st.links().size(); ++k) {
                const Link& l = st.links()[k];
                const scalar want_intra = naive.intra_mw(st.links(), k);
                const scalar want_inter = naive.inter_mw(st.links(), k);
                CHECK(l.i_intra_mw == doctest::Approx(want_intra).epsilon(1e-9));
                CHECK(l.i_inter_mw == doctest::Approx(want_inter).epsilon(1e-9));
                CHECK(l.sinr_db ==
                      doctest::Approx(naive.sinr_db_of(st.links(), k)).epsilon(1e-9));
                CHECK(l.tx_power_dbm ==
                      doctest::Approx(mw_to_dbm(naive.link_power_mw(st.links(), l)))
                          .epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("scheme ordering: dedicated >= time-shared >= spatial reuse SINR") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 6; ++trial) {
        PathInventory inv = random_inventory(rng, 2, 5);
        auto iso = AntennaPattern::isotropic();
        std::vector<std::array<int, 3>> assignment;
        std::uniform_int_distribution<int> pick_bs(0, 1);
        for (int u = 0; u < 5; ++u) assignment.push_back({pick_bs(rng), u, 0});

        auto sinrs = [&](MacScheme mac) {
            RadioConfig cfg;
            cfg.mac = mac;
            AllocationState st(inv, iso, iso, cfg);
            for (auto [b, u, p] : assignment) st.add_link(b, u, p);
            st.recompute_all();
            std::vector<scalar> out;
            for (const Link& l : st.links()) out.push_back(l.sinr_db);
            return out;
        };
        auto su = sinrs(MacScheme::SU), td = sinrs(MacScheme::TDMA),
             sd = sinrs(MacScheme::SDMA);
        for (std::size_t k = 0; k < su.size(); ++k) {
            CHECK(su[k] >= td[k] - 1e-9);
            CHECK(td[k] >= sd[k] - 1e-9);
        }
    }
}

TEST_CASE("snapshot and restore reproduce the state bit for bit") {
    std::mt19937_64 rng(41);
    PathInventory inv = random_inventory(rng, 2, 4);
    RadioConfig cfg;
    cfg.mac = MacScheme::SDMA;
    auto iso = AntennaPattern::isotropic();
    AllocationState st(inv, iso, iso, cfg);
    st.add_link(0, 0, 0);
    st.add_link(1, 1, 0);
    st.recompute_all();
    const std::vector<Link> before = st.links();

    st.snapshot();
    st.add_link(0, 2, 0);
    st.add_link(1, 3, 0);
    st.recompute_all();
    CHECK(st.links().size() == 4);
    st.restore();

    REQUIRE(st.links().size() == before.size());
    for (std::size_t k = 0; k < before.size(); ++k) {
        const Link& a = st.links()[k];
        const Link& b = before[k];
        CHECK(a.bs_id == b.bs_id);
        CHECK(a.ue_id == b.ue_id);
        CHECK(a.path_index == b.path_index);
        CHECK(a.tx_power_dbm == b.tx_power_dbm);
        CHECK(a.sinr_db == b.sinr_db);
        CHECK(a.throughput_bps == b.throughput_bps);
        CHECK(a.air_time_ratio == b.air_time_ratio);
        CHECK(a.i_intra_mw == b.i_intra_mw);
        CHECK(a.i_inter_mw == b.i_inter_mw);
    }
    CHECK(st.bs_load(0) == 1);
    CHECK(st.bs_load(1) == 1);

    st.snapshot();
    st.add_link(0, 2, 0);
    st.discard_snapshot();
    CHECK(st.links().size() == 3); // the provisional link stays committed
}

TEST_CASE("a second spatial-reuse link on the same BS strictly lowers the first's SINR") {
    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 6; ++trial) {
        PathInventory inv = random_inventory(rng, 1, 3);
        RadioConfig cfg;
        cfg.mac = MacScheme::SDMA;
        auto iso = AntennaPattern::isotropic();
        AllocationState st(inv, iso, iso, cfg);
        st.add_link(0, 0, 0);
        st.recompute_all();
        const scalar alone = st.links()[0].sinr_db;
        st.add_link(0, 1, 0);
        st.recompute_all();
        CHECK(st.links()[0].sinr_db < alone);
    }
}

TEST_CASE("gain aggregation across a pair's paths matches a manual sum") {
    PathInventory inv;
    inv.add(0, 0, make_path(88.0, 0, 0, 180, 0));
    inv.add(0, 0, make_path(100.0, 40, 0, 140, 0, 1));
    auto iso = AntennaPattern::isotropic();
    // Isotropic ends: the steering choice is irrelevant and the total gain is
    // the plain sum of inverse losses.
    const scalar want = db_to_linear(-88.0) + db_to_linear(-100.0);
    CHECK(total_link_gain(inv, iso, iso, 0, 0, 0) == doctest::Approx(want).epsilon(1e-12));
    CHECK(total_link_gain(inv, iso, iso, 0, 0, 1) == doctest::Approx(want).epsilon(1e-12));
    CHECK_THROWS_AS(static_cast<void>(total_link_gain(inv, iso, iso, 0, 1, 0)),
                    std::out_of_range);
    CHECK_THROWS_AS(static_cast<void>(total_link_gain(inv, iso, iso, 0, 0, 7)),
                    std::out_of_range);
}
