// SPDX-License-Identifier: Apache-2.0
//
// mmnet - multi-user mm-wave urban cellular downlink simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef MMNET_GEOMETRY_HPP
#define MMNET_GEOMETRY_HPP

#include "mmnet/types.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace mmnet {

/// Axis-aligned rectangle in the ground plane, meters.
struct Rect {
    scalar x_min = 0, y_min = 0, x_max = 0, y_max = 0;

    scalar width() const { return x_max - x_min; }
    scalar height() const { return y_max - y_min; }
    scalar area() const { return width() * height(); }
    Vec2 center() const { return {0.5 * (x_min + x_max), 0.5 * (y_min + y_max)}; }

    bool contains(const Vec2& p) const {
        return p.x() >= x_min && p.x() <= x_max && p.y() >= y_min && p.y() <= y_max;
    }
    bool contains_strict(const Vec2& p) const {
        return p.x() > x_min && p.x() < x_max && p.y() > y_min && p.y() < y_max;
    }
    bool contains(const Rect& r) const {
        return r.x_min >= x_min && r.x_max <= x_max && r.y_min >= y_min && r.y_max <= y_max;
    }
    bool overlaps_strict(const Rect& r) const {
        return r.x_min < x_max && r.x_max > x_min && r.y_min < y_max && r.y_max > y_min;
    }
};

/// Rectangular-footprint building extruded from the ground plane.
struct Building {
    Rect footprint;
    scalar height = 0; // meters, > 0
};

struct UrbanLayout {
    Rect site_extent;
    Rect network_extent; // inner study area, must lie within site_extent
    std::vector<Building> buildings;

    /// Throws std::invalid_argument if any invariant is violated
    /// (extent nesting, positive building dimensions, overlaps).
    void validate() const;
};

enum class NodeKind { BS, UE };

struct Node {
    int id = -1;
    Vec3 position = Vec3::Zero();
    NodeKind kind = NodeKind::UE;
};

struct LayoutParams {
    scalar site_size_m = 750.0;
    scalar network_size_m = 500.0;
    scalar block_size_m = 50.0;
    scalar street_width_m = 15.0;
    scalar fill_ratio = 1.0; // probability a grid block carries a building, (0,1]
    scalar height_min_m = 15.0;
    scalar height_max_m = 40.0;
};

/// Named presets: "dense" (closely packed tall blocks) and "open"
/// (wider streets, sparser and lower buildings).
LayoutParams layout_preset(const std::string& name);

/// Deterministic Manhattan-grid layout on the site extent. With fill 1.0 the
/// building count is floor(site / (block + street))^2.
UrbanLayout generate_layout(const LayoutParams& params, unsigned seed);

/// Grid BS deployment snapped to the nearest building corner.
/// Count = round(density_per_km2 * network area in km^2). Ties in the
/// corner-distance broken toward the lowest (x, then y) corner.
std::vector<Node> place_bs(const UrbanLayout& layout, scalar density_per_km2,
                           scalar h_bs_m = 6.0);

/// PPP UE deployment over the network area; draws landing strictly inside a
/// building footprint are rejected and redrawn.
std::vector<Node> place_ue(const UrbanLayout& layout, scalar density_per_km2,
                           unsigned seed, scalar h_ue_m = 1.5);

/// Layout file format: optional "site"/"network" extent lines followed by
/// one CSV row per building (x_min,y_min,x_max,y_max,height). '#' comments.
void save_layout(const UrbanLayout& layout, std::ostream& os);
UrbanLayout load_layout(std::istream& is);
UrbanLayout load_layout_file(const std::string& path);
void save_layout_file(const UrbanLayout& layout, const std::string& path);

} // namespace mmnet

#endif // MMNET_GEOMETRY_HPP
