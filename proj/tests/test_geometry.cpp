// SPDX-License-Identifier: Apache-2.0
//
// mmnet - multi-user mm-wave urban cellular downlink simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "mmnet/geometry.hpp"

#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

using namespace mmnet;

TEST_CASE("full-fill grid layout has the constructed building count") {
    LayoutParams p;
    p.block_size_m = 50;
    p.street_width_m = 15;
    p.fill_ratio = 1.0;
    UrbanLayout layout = generate_layout(p, 1);
    const int per_side = static_cast<int>(std::floor(750.0 / 65.0));
    CHECK(layout.buildings.size() == static_cast<std::size_t>(per_side * per_side));
    CHECK_NOTHROW(layout.validate());
}

TEST_CASE("layout generation is deterministic per seed") {
    LayoutParams p;
    p.fill_ratio = 0.7;
    UrbanLayout a = generate_layout(p, 42);
    UrbanLayout b = generate_layout(p, 42);
    REQUIRE(a.buildings.size() == b.buildings.size());
    for (std::size_t i = 0; i < a.buildings.size(); ++i) {
        CHECK(a.buildings[i].footprint.x_min == b.buildings[i].footprint.x_min);
        CHECK(a.buildings[i].height == b.buildings[i].height);
    }
    UrbanLayout c = generate_layout(p, 43);
    bool same = a.buildings.size() == c.buildings.size();
    if (same)
        for (std::size_t i = 0; i < a.buildings.size(); ++i)
            if (a.buildings[i].height != c.buildings[i].height) { same = false; break; }
    CHECK_FALSE(same);
}

TEST_CASE("invalid layout params are rejected") {
    LayoutParams p;
    p.street_width_m = 0;
    CHECK_THROWS_AS(generate_layout(p, 1), std::invalid_argument);
    p.street_width_m = 60; // wider than the 50 m block
    CHECK_THROWS_AS(generate_layout(p, 1), std::invalid_argument);
    p.street_width_m = 15;
    p.fill_ratio = 0.0;
    CHECK_THROWS_AS(generate_layout(p, 1), std::invalid_argument);
}

TEST_CASE("BS count follows density times network area") {
    LayoutParams p;
    UrbanLayout layout = generate_layout(p, 1);
    CHECK(place_bs(layout, 64).size() == 16); // 64/km^2 * 0.25 km^2
    CHECK(place_bs(layout, 32).size() == 8);
    CHECK(place_bs(layout, 196).size() == 49);
}

TEST_CASE("BSs sit on building corners at h_BS") {
    LayoutParams p;
    UrbanLayout layout = generate_layout(p, 1);
    std::set<std::pair<scalar, scalar>> corners;
    for (const Building& b : layout.buildings) {
        corners.insert({b.footprint.x_min, b.footprint.y_min});
        corners.insert({b.footprint.x_min, b.footprint.y_max});
        corners.insert({b.footprint.x_max, b.footprint.y_min});
        corners.insert({b.footprint.x_max, b.footprint.y_max});
    }
    for (const Node& bs : place_bs(layout, 64)) {
        CHECK(bs.position.z() == 6.0);
        CHECK(bs.kind == NodeKind::BS);
        CHECK(corners.count({bs.position.x(), bs.position.y()}) == 1);
    }
}

TEST_CASE("place_bs requires buildings") {
    UrbanLayout empty;
    empty.site_extent = {0, 0, 750, 750};
    empty.network_extent = {125, 125, 625, 625};
    CHECK_THROWS_AS(place_bs(empty, 64), std::invalid_argument);
}

TEST_CASE("UEs land outdoors, in the network area, deterministically") {
    LayoutParams p;
    p.fill_ratio = 0.8;
    UrbanLayout layout = generate_layout(p, 3);
    auto ues = place_ue(layout, 1000, 7);
    auto again = place_ue(layout, 1000, 7);
    REQUIRE(ues.size() == again.size());
    for (std::size_t i = 0; i < ues.size(); ++i)
        CHECK(ues[i].position == again[i].position);
    for (const Node& ue : ues) {
        CHECK(ue.position.z() == 1.5);
        CHECK(layout.network_extent.contains(Vec2{ue.position.x(), ue.position.y()}));
        for (const Building& b : layout.buildings)
            CHECK_FALSE(b.footprint.contains_strict({ue.position.x(), ue.position.y()}));
    }
}

TEST_CASE("UE count sample mean tracks density within 5%") {
    UrbanLayout empty;
    empty.site_extent = {0, 0, 750, 750};
    empty.network_extent = {125, 125, 625, 625};
    const scalar expected = 1000.0 * 0.25; // per realization
    scalar total = 0;
    const int n_seeds = 200;
    for (int seed = 0; seed < n_seeds; ++seed)
        total += static_cast<scalar>(place_ue(empty, 1000, seed).size());
    const scalar mean = total / n_seeds;
    CHECK(mean == doctest::Approx(expected).epsilon(0.05));
}

TEST_CASE("layout round-trips through the text format") {
    LayoutParams p;
    p.fill_ratio = 0.6;
    UrbanLayout layout = generate_layout(p, 11);
    std::stringstream ss;
    save_layout(layout, ss);
    UrbanLayout loaded = load_layout(ss);
    REQUIRE(loaded.buildings.size() == layout.buildings.size());
    CHECK(loaded.site_extent.x_max == layout.site_extent.x_max);
    CHECK(loaded.network_extent.x_min == layout.network_extent.x_min);
    for (std::size_t i = 0; i < layout.buildings.size(); ++i) {
        CHECK(loaded.buildings[i].footprint.x_min ==
              doctest::Approx(layout.buildings[i].footprint.x_min));
        CHECK(loaded.buildings[i].height == doctest::Approx(layout.buildings[i].height));
    }
}

TEST_CASE("malformed layout rows are rejected with line numbers") {
    std::stringstream ss("10,10,20,20,25\nnot,a,building\n");
    CHECK_THROWS_WITH_AS(static_cast<void>(load_layout(ss)),
                         doctest::Contains("line 2"), std::runtime_error);
}

TEST_CASE("overlapping buildings fail validation") {
    UrbanLayout layout;
    layout.site_extent = {0, 0, 100, 100};
    layout.network_extent = layout.site_extent;
    layout.buildings.push_back({{10, 10, 30, 30}, 20});
    layout.buildings.push_back({{20, 20, 40, 40}, 20});
    CHECK_THROWS_AS(layout.validate(), std::invalid_argument);
}
