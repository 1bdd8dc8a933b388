// SPDX-License-Identifier: Apache-2.0
//
// mmnet - multi-user mm-wave urban cellular downlink simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "mmnet/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mmnet {

namespace {

constexpr scalar kGeomEps = 1e-9;
constexpr scalar kSurfaceEps = 1e-7; // box shrink for grazing rays, meters

// Vertical wall face of a building: plane axis (0: x = c, 1: y = c), lateral
// extent [lo, hi] along the other axis, z in [0, height]. `outward` is the
// sign of the outward normal along the plane axis.
struct Wall {
    int axis;
    scalar c;
    scalar lo, hi;
    scalar height;
    scalar outward;
    int id;
};

std::vector<Wall> collect_walls(const UrbanLayout& layout) {
    std::vector<Wall> walls;
    walls.reserve(layout.buildings.size() * 4);
    int id = 0;
    for (const Building& b : layout.buildings) {
        const Rect& f = b.footprint;
        walls.push_back({0, f.x_min, f.y_min, f.y_max, b.height, -1.0, id++});
        walls.push_back({0, f.x_max, f.y_min, f.y_max, b.height, +1.0, id++});
        walls.push_back({1, f.y_min, f.x_min, f.x_max, b.height, -1.0, id++});
        walls.push_back({1, f.y_max, f.x_min, f.x_max, b.height, +1.0, id++});
    }
    return walls;
}

Vec3 mirror(const Vec3& p, const Wall& w) {
    Vec3 q = p;
    q[w.axis] = 2.0 * w.c - p[w.axis];
    return q;
}

bool outward_of(const Vec3& p, const Wall& w) {
    return (p[w.axis] - w.c) * w.outward > kGeomEps;
}

// Intersection of segment a->b with the wall plane; returns false unless the
// hit is interior to the segment and lands on the finite wall face.
bool wall_hit(const Vec3& a, const Vec3& b, const Wall& w, Vec3& hit) {
    const scalar da = a[w.axis] - w.c;
    const scalar db = b[w.axis] - w.c;
    const scalar denom = da - db;
    if (std::abs(denom) < kGeomEps) return false;
    const scalar t = da / denom;
    if (t <= kGeomEps || t >= 1.0 - kGeomEps) return false;
    hit = a + t * (b - a);
    const int lateral = 1 - w.axis;
    if (hit[lateral] < w.lo - kGeomEps || hit[lateral] > w.hi + kGeomEps) return false;
    if (hit.z() < -kGeomEps || hit.z() > w.height + kGeomEps) return false;
    return true;
}

// Segment-vs-prism test (slab method, boxes shrunk by kSurfaceEps so rays
// grazing a face or departing from a wall/corner do not count as blocked).
bool segment_hits_building(const Vec3& a, const Vec3& b, const Building& bld) {
    const scalar lo[3] = {bld.footprint.x_min + kSurfaceEps, bld.footprint.y_min + kSurfaceEps,
                          -1e9};
    const scalar hi[3] = {bld.footprint.x_max - kSurfaceEps, bld.footprint.y_max - kSurfaceEps,
                          bld.height - kSurfaceEps};
    scalar t_enter = 0.0, t_exit = 1.0;
    for (int ax = 0; ax < 3; ++ax) {
        const scalar d = b[ax] - a[ax];
        if (std::abs(d) < kGeomEps) {
            if (a[ax] <= lo[ax] || a[ax] >= hi[ax]) return false;
        } else {
            scalar t0 = (lo[ax] - a[ax]) / d;
            scalar t1 = (hi[ax] - a[ax]) / d;
            if (t0 > t1) std::swap(t0, t1);
            t_enter = std::max(t_enter, t0);
            t_exit = std::min(t_exit, t1);
            if (t_enter >= t_exit - kGeomEps) return false;
        }
    }
    return true;
}

bool segment_blocked(const Vec3& a, const Vec3& b, const UrbanLayout& layout) {
    // Shrink endpoints so a segment leaving a reflection point or a
    // corner-mounted BS does not self-intersect its own wall.
    const Vec3 dir = b - a;
    const scalar len = dir.norm();
    if (len < kGeomEps) return false;
    const scalar s = std::min(1e-6 / len, 0.4);
    const Vec3 a2 = a + s * dir;
    const Vec3 b2 = b - s * dir;
    for (const Building& bld : layout.buildings)
        if (segment_hits_building(a2, b2, bld)) return true;
    return false;
}

void direction_angles(const Vec3& from, const Vec3& to, scalar& az_deg, scalar& el_deg) {
    const Vec3 d = to - from;
    az_deg = wrap_azimuth_deg(rad2deg(std::atan2(d.y(), d.x())));
    el_deg = rad2deg(std::atan2(d.z(), std::hypot(d.x(), d.y())));
}

PropagationPath make_path(const Vec3& bs, const Vec3& ue, const std::vector<Vec3>& bounces,
                          std::vector<int> wall_ids, scalar f_c_hz) {
    PropagationPath p;
    p.bounces = static_cast<int>(bounces.size());
    p.kind = p.bounces == 0 ? PathKind::LOS : PathKind::NLOS;
    p.wall_ids = std::move(wall_ids);

    scalar length = 0;
    Vec3 prev = bs;
    for (const Vec3& v : bounces) {
        length += (v - prev).norm();
        prev = v;
    }
    length += (ue - prev).norm();
    p.length_m = length;
    p.path_loss_db = fspl_db(length, f_c_hz) + kReflectionLossDb * p.bounces;

    const Vec3& first = bounces.empty() ? ue : bounces.front();
    const Vec3& last = bounces.empty() ? bs : bounces.back();
    direction_angles(bs, first, p.aod_az_deg, p.aod_el_deg);
    direction_angles(ue, last, p.aoa_az_deg, p.aoa_el_deg);
    return p;
}

} // namespace

void PathInventory::add(int bs_id, int ue_id, PropagationPath path) {
    auto& list = paths_[{bs_id, ue_id}];
    auto it = std::upper_bound(list.begin(), list.end(), path.path_loss_db,
                               [](scalar loss, const PropagationPath& q) {
                                   return loss < q.path_loss_db;
                               });
    list.insert(it, std::move(path));
}

const std::vector<PropagationPath>* PathInventory::find(int bs_id, int ue_id) const {
    auto it = paths_.find({bs_id, ue_id});
    return it == paths_.end() ? nullptr : &it->second;
}

std::size_t PathInventory::path_count() const {
    std::size_t n = 0;
    for (const auto& [key, list] : paths_) n += list.size();
    return n;
}

scalar fspl_db(scalar distance_m, scalar f_c_hz) {
    if (distance_m <= 0) throw std::domain_error("fspl_db: distance must be positive");
    return 20.0 * std::log10(4.0 * kPi * distance_m * f_c_hz / kSpeedOfLight);
}

PathInventory trace_paths(const UrbanLayout& layout, const Node& bs,
                          const std::vector<Node>& ues, scalar f_c_hz, int max_bounces) {
    const std::vector<Wall> walls = collect_walls(layout);
    PathInventory inv;

    for (const Node& ue : ues) {
        const Vec3& tx = bs.position;
        const Vec3& rx = ue.position;

        if (!segment_blocked(tx, rx, layout))
            inv.add(bs.id, ue.id, make_path(tx, rx, {}, {}, f_c_hz));

        if (max_bounces < 1) continue;
        for (const Wall& w : walls) {
            if (!outward_of(tx, w) || !outward_of(rx, w)) continue;
            const Vec3 tx_img = mirror(tx, w);
            Vec3 p;
            if (!wall_hit(tx_img, rx, w, p)) continue;
            if (segment_blocked(tx, p, layout) || segment_blocked(p, rx, layout)) continue;
            inv.add(bs.id, ue.id, make_path(tx, rx, {p}, {w.id}, f_c_hz));
        }

        if (max_bounces < 2) continue;
        for (const Wall& w1 : walls) {
            if (!outward_of(tx, w1)) continue;
            const Vec3 img1 = mirror(tx, w1);
            for (const Wall& w2 : walls) {
                if (w2.id == w1.id) continue;
                if (!outward_of(rx, w2)) continue;
                const Vec3 img12 = mirror(img1, w2);
                Vec3 p2;
                if (!wall_hit(img12, rx, w2, p2)) continue;
                if (!outward_of(p2, w1)) continue;
                Vec3 p1;
                if (!wall_hit(img1, p2, w1, p1)) continue;
                if (!outward_of(p1, w2)) continue;
                if ((p2 - p1).norm() < kGeomEps) continue;
                if (segment_blocked(tx, p1, layout) || segment_blocked(p1, p2, layout) ||
                    segment_blocked(p2, rx, layout))
                    continue;
                inv.add(bs.id, ue.id, make_path(tx, rx, {p1, p2}, {w1.id, w2.id}, f_c_hz));
            }
        }
    }
    return inv;
}

PathInventory trace_all(const UrbanLayout& layout, const std::vector<Node>& bss,
                        const std::vector<Node>& ues, scalar f_c_hz, int max_bounces) {
    PathInventory inv;
    for (const Node& bs : bss) {
        PathInventory partial = trace_paths(layout, bs, ues, f_c_hz, max_bounces);
        for (const auto& [key, list] : partial.pairs())
            for (const PropagationPath& p : list) inv.add(key.first, key.second, p);
    }
    return inv;
}

namespace {

[[noreturn]] void parse_fail(int lineno, const std::string& what) {
    throw std::runtime_error("inventory parse error at line " + std::to_string(lineno) + ": " +
                             what);
}

} // namespace

PathInventory load_inventory(std::istream& is, const std::vector<int>* known_bs_ids,
                             const std::vector<int>* known_ue_ids) {
    PathInventory inv;
    std::string line;
    int lineno = 0;
    bool header_seen = false;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;

        std::stringstream ss(line);
        std::string tok;
        std::vector<std::string> f;
        while (std::getline(ss, tok, ',')) f.push_back(tok);
        if (!header_seen && !f.empty() && f[0] == "bs_id") {
            header_seen = true;
            continue;
        }
        if (f.size() != 10) parse_fail(lineno, "expected 10 fields");

        auto num = [&](int i) {
            try {
                return std::stod(f[i]);
            } catch (const std::exception&) {
                parse_fail(lineno, "bad number '" + f[i] + "'");
            }
        };
        auto integer = [&](int i) {
            const scalar v = num(i);
            if (v != std::floor(v)) parse_fail(lineno, "expected integer '" + f[i] + "'");
            return static_cast<int>(v);
        };

        const int bs_id = integer(0);
        const int ue_id = integer(1);
        PropagationPath p;
        if (f[2] == "LOS") p.kind = PathKind::LOS;
        else if (f[2] == "NLOS") p.kind = PathKind::NLOS;
        else parse_fail(lineno, "kind must be LOS or NLOS");
        p.bounces = integer(3);
        if (p.bounces < 0 || p.bounces > 2) parse_fail(lineno, "bounces out of range 0..2");
        if ((p.kind == PathKind::LOS) != (p.bounces == 0))
            parse_fail(lineno, "kind and bounce count disagree");
        p.aod_az_deg = num(4);
        p.aod_el_deg = num(5);
        p.aoa_az_deg = num(6);
        p.aoa_el_deg = num(7);
        for (scalar az : {p.aod_az_deg, p.aoa_az_deg})
            if (az < -180.0 || az >= 180.0) parse_fail(lineno, "azimuth outside [-180,180)");
        for (scalar el : {p.aod_el_deg, p.aoa_el_deg})
            if (el < -90.0 || el > 90.0) parse_fail(lineno, "elevation outside [-90,90]");
        p.path_loss_db = num(8);
        if (p.path_loss_db < 0) parse_fail(lineno, "negative path loss");
        p.length_m = num(9);
        if (p.length_m <= 0) parse_fail(lineno, "non-positive path length");

        auto known = [](const std::vector<int>* ids, int v) {
            return !ids || std::find(ids->begin(), ids->end(), v) != ids->end();
        };
        if (!known(known_bs_ids, bs_id)) parse_fail(lineno, "unknown bs_id");
        if (!known(known_ue_ids, ue_id)) parse_fail(lineno, "unknown ue_id");

        inv.add(bs_id, ue_id, std::move(p));
    }
    return inv;
}

PathInventory load_inventory_file(const std::string& path, const std::vector<int>* known_bs_ids,
                                  const std::vector<int>* known_ue_ids) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open inventory file: " + path);
    return load_inventory(is, known_bs_ids, known_ue_ids);
}

void save_inventory(const PathInventory& inv, std::ostream& os) {
    os << "bs_id,ue_id,kind,bounces,aod_az,aod_el,aoa_az,aoa_el,path_loss_db,length_m\n";
    for (const auto& [key, list] : inv.pairs())
        for (const PropagationPath& p : list)
            os << key.first << ',' << key.second << ','
               << (p.kind == PathKind::LOS ? "LOS" : "NLOS") << ',' << p.bounces << ','
               << p.aod_az_deg << ',' << p.aod_el_deg << ',' << p.aoa_az_deg << ','
               << p.aoa_el_deg << ',' << p.path_loss_db << ',' << p.length_m << '\n';
}

void save_inventory_file(const PathInventory& inv, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write inventory file: " + path);
    save_inventory(inv, os);
}

PathInventory prune_inventory(const PathInventory& inv, scalar floor_dbm, scalar tx_power_dbm,
                              scalar bs_peak_gain_dbi, scalar ue_peak_gain_dbi) {
    PathInventory out;
    for (const auto& [key, list] : inv.pairs())
        for (const PropagationPath& p : list) {
            const scalar best_rss =
                tx_power_dbm + bs_peak_gain_dbi + ue_peak_gain_dbi - p.path_loss_db;
            if (best_rss >= floor_dbm) out.add(key.first, key.second, p);
        }
    return out;
}

} // namespace mmnet
