// SPDX-License-Identifier: Apache-2.0
//
// mmnet - multi-user mm-wave urban cellular downlink simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "mmnet/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

namespace mmnet {

void UrbanLayout::validate() const {
    if (!site_extent.contains(network_extent))
        throw std::invalid_argument("network extent must lie within the site extent");
    for (std::size_t i = 0; i < buildings.size(); ++i) {
        const Building& b = buildings[i];
        if (b.footprint.width() <= 0 || b.footprint.height() <= 0)
            throw std::invalid_argument("building footprint must have positive area");
        if (b.height <= 0)
            throw std::invalid_argument("building height must be positive");
        if (!site_extent.contains(b.footprint))
            throw std::invalid_argument("building footprint outside site extent");
        for (std::size_t j = i + 1; j < buildings.size(); ++j)
            if (b.footprint.overlaps_strict(buildings[j].footprint))
                throw std::invalid_argument("building footprints overlap");
    }
}

LayoutParams layout_preset(const std::string& name) {
    LayoutParams p;
    if (name == "dense") {
        p.block_size_m = 50.0;
        p.street_width_m = 15.0;
        p.fill_ratio = 0.9;
        p.height_min_m = 15.0;
        p.height_max_m = 40.0;
    } else if (name == "open") {
        p.block_size_m = 40.0;
        p.street_width_m = 25.0;
        p.fill_ratio = 0.55;
        p.height_min_m = 8.0;
        p.height_max_m = 20.0;
    } else {
        throw std::invalid_argument("unknown layout preset: " + name);
    }
    return p;
}

UrbanLayout generate_layout(const LayoutParams& params, unsigned seed) {
    if (params.street_width_m <= 0)
        throw std::invalid_argument("street width must be positive");
    if (params.street_width_m > params.block_size_m)
        throw std::invalid_argument("street width exceeds block size");
    if (params.fill_ratio <= 0 || params.fill_ratio > 1)
        throw std::invalid_argument("fill ratio must be in (0,1]");
    if (params.height_min_m <= 0 || params.height_max_m < params.height_min_m)
        throw std::invalid_argument("invalid building height range");
    if (params.network_size_m > params.site_size_m)
        throw std::invalid_argument("network size exceeds site size");

    UrbanLayout layout;
    layout.site_extent = {0, 0, params.site_size_m, params.site_size_m};
    const scalar margin = 0.5 * (params.site_size_m - params.network_size_m);
    layout.network_extent = {margin, margin, margin + params.network_size_m,
                             margin + params.network_size_m};

    const scalar pitch = params.block_size_m + params.street_width_m;
    const int n_blocks = static_cast<int>(std::floor(params.site_size_m / pitch));

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<scalar> keep(0.0, 1.0);
    std::uniform_real_distribution<scalar> height(params.height_min_m, params.height_max_m);

    // Center the block grid on the site.
    const scalar grid_span = n_blocks * pitch - params.street_width_m;
    const scalar offset = 0.5 * (params.site_size_m - grid_span);

    for (int ix = 0; ix < n_blocks; ++ix) {
        for (int iy = 0; iy < n_blocks; ++iy) {
            const scalar u = keep(rng);
            const scalar h = height(rng);
            if (u > params.fill_ratio) continue;
            Building b;
            b.footprint.x_min = offset + ix * pitch;
            b.footprint.y_min = offset + iy * pitch;
            b.footprint.x_max = b.footprint.x_min + params.block_size_m;
            b.footprint.y_max = b.footprint.y_min + params.block_size_m;
            b.height = h;
            layout.buildings.push_back(b);
        }
    }
    layout.validate();
    return layout;
}

std::vector<Node> place_bs(const UrbanLayout& layout, scalar density_per_km2, scalar h_bs_m) {
    if (layout.buildings.empty())
        throw std::invalid_argument("cannot place BSs on a layout with no buildings");

    const scalar area_km2 = layout.network_extent.area() * 1e-6;
    const int count = static_cast<int>(std::lround(density_per_km2 * area_km2));

    std::vector<Vec2> corners;
    corners.reserve(layout.buildings.size() * 4);
    for (const Building& b : layout.buildings) {
        corners.push_back({b.footprint.x_min, b.footprint.y_min});
        corners.push_back({b.footprint.x_min, b.footprint.y_max});
        corners.push_back({b.footprint.x_max, b.footprint.y_min});
        corners.push_back({b.footprint.x_max, b.footprint.y_max});
    }

    // Nominal uniform grid over the network area (cell centers, row-major).
    const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<scalar>(count))));
    const int rows = cols > 0 ? (count + cols - 1) / cols : 0;
    const Rect& net = layout.network_extent;

    std::vector<Node> out;
    out.reserve(count);
    int placed = 0;
    for (int r = 0; r < rows && placed < count; ++r) {
        for (int c = 0; c < cols && placed < count; ++c) {
            Vec2 nominal{net.x_min + (c + 0.5) * net.width() / cols,
                         net.y_min + (r + 0.5) * net.height() / rows};
            Vec2 best = corners.front();
            scalar best_d = std::numeric_limits<scalar>::infinity();
            for (const Vec2& corner : corners) {
                const scalar d = (corner - nominal).squaredNorm();
                if (d < best_d - 1e-12 ||
                    (std::abs(d - best_d) <= 1e-12 &&
                     (corner.x() < best.x() ||
                      (corner.x() == best.x() && corner.y() < best.y())))) {
                    best_d = d;
                    best = corner;
                }
            }
            Node n;
            n.id = placed;
            n.kind = NodeKind::BS;
            n.position = {best.x(), best.y(), h_bs_m};
            out.push_back(n);
            ++placed;
        }
    }
    return out;
}

std::vector<Node> place_ue(const UrbanLayout& layout, scalar density_per_km2,
                           unsigned seed, scalar h_ue_m) {
    if (density_per_km2 <= 0)
        throw std::invalid_argument("UE density must be positive");

    const scalar area_km2 = layout.network_extent.area() * 1e-6;
    std::mt19937_64 rng(seed);
    std::poisson_distribution<int> count_dist(density_per_km2 * area_km2);
    const int count = count_dist(rng);

    const Rect& net = layout.network_extent;
    std::uniform_real_distribution<scalar> ux(net.x_min, net.x_max);
    std::uniform_real_distribution<scalar> uy(net.y_min, net.y_max);

    std::vector<Node> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        Vec2 p;
        for (;;) {
            p = {ux(rng), uy(rng)};
            bool indoor = false;
            for (const Building& b : layout.buildings)
                if (b.footprint.contains_strict(p)) { indoor = true; break; }
            if (!indoor) break;
        }
        Node n;
        n.id = i;
        n.kind = NodeKind::UE;
        n.position = {p.x(), p.y(), h_ue_m};
        out.push_back(n);
    }
    return out;
}

void save_layout(const UrbanLayout& layout, std::ostream& os) {
    os << "# mmnet layout: building rows are x_min,y_min,x_max,y_max,height\n";
    os << "site," << layout.site_extent.x_min << ',' << layout.site_extent.y_min << ','
       << layout.site_extent.x_max << ',' << layout.site_extent.y_max << '\n';
    os << "network," << layout.network_extent.x_min << ',' << layout.network_extent.y_min << ','
       << layout.network_extent.x_max << ',' << layout.network_extent.y_max << '\n';
    for (const Building& b : layout.buildings)
        os << b.footprint.x_min << ',' << b.footprint.y_min << ',' << b.footprint.x_max << ','
           << b.footprint.y_max << ',' << b.height << '\n';
}

UrbanLayout load_layout(std::istream& is) {
    UrbanLayout layout;
    std::string line;
    int lineno = 0;
    bool have_site = false, have_network = false;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;

        std::stringstream ss(line);
        std::string tok;
        std::vector<std::string> fields;
        while (std::getline(ss, tok, ',')) fields.push_back(tok);

        auto num = [&](const std::string& s) {
            try {
                std::size_t pos = 0;
                const scalar v = std::stod(s, &pos);
                if (pos != s.find_last_not_of(" \t\r") + 1 && pos < s.size() &&
                    s.find_first_not_of(" \t\r", pos) != std::string::npos)
                    throw std::invalid_argument("trailing junk");
                return v;
            } catch (const std::exception&) {
                throw std::runtime_error("layout parse error at line " + std::to_string(lineno) +
                                         ": bad number '" + s + "'");
            }
        };

        if (fields.size() == 5 && (fields[0] == "site" || fields[0] == "network")) {
            Rect r{num(fields[1]), num(fields[2]), num(fields[3]), num(fields[4])};
            if (fields[0] == "site") { layout.site_extent = r; have_site = true; }
            else { layout.network_extent = r; have_network = true; }
        } else if (fields.size() == 5) {
            Building b;
            b.footprint = {num(fields[0]), num(fields[1]), num(fields[2]), num(fields[3])};
            b.height = num(fields[4]);
            layout.buildings.push_back(b);
        } else {
            throw std::runtime_error("layout parse error at line " + std::to_string(lineno) +
                                     ": expected 5 comma-separated fields");
        }
    }
    if (!have_site) {
        // Bounding box of the buildings, as a fallback for plain building lists.
        Rect r{0, 0, 0, 0};
        for (const Building& b : layout.buildings) {
            r.x_max = std::max(r.x_max, b.footprint.x_max);
            r.y_max = std::max(r.y_max, b.footprint.y_max);
        }
        layout.site_extent = r;
    }
    if (!have_network) layout.network_extent = layout.site_extent;
    layout.validate();
    return layout;
}

UrbanLayout load_layout_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open layout file: " + path);
    return load_layout(is);
}

void save_layout_file(const UrbanLayout& layout, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write layout file: " + path);
    save_layout(layout, os);
}

} // namespace mmnet
