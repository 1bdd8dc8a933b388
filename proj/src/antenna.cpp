// SPDX-License-Identifier: Apache-2.0
//
// mmnet - multi-user mm-wave urban cellular downlink simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "mmnet/antenna.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace mmnet {

namespace {

constexpr scalar kSectorFloorDbi = -40.0;
constexpr scalar kLinearFloor = 1e-30;

// Fold an (az, el) offset pair onto the sphere: elevation outside [-90, 90]
// maps to the antipodal azimuth half-plane.
void fold_offsets(scalar& az, scalar& el) {
    el = wrap_azimuth_deg(el);
    if (el > 90.0) {
        el = 180.0 - el;
        az += 180.0;
    } else if (el < -90.0) {
        el = -180.0 - el;
        az += 180.0;
    }
    az = wrap_azimuth_deg(az);
}

// |sin(N x / 2) / sin(x / 2)|^2 with the x -> 0 limit N^2.
scalar dirichlet_power(int n, scalar x) {
    const scalar half = 0.5 * x;
    const scalar denom = std::sin(half);
    if (std::abs(denom) < 1e-9) {
        const scalar r = static_cast<scalar>(n);
        return r * r;
    }
    const scalar num = std::sin(n * half);
    const scalar v = num / denom;
    return v * v;
}

// Squared array factor of an N x N broadside planar array (isotropic
// elements, spacing in wavelengths), radiating into the front hemisphere.
scalar array_factor_sq(int n, scalar spacing, scalar az_deg, scalar el_deg) {
    if (std::abs(az_deg) > 90.0) return 0.0;
    const scalar az = deg2rad(az_deg);
    const scalar el = deg2rad(el_deg);
    const scalar psi_y = 2.0 * kPi * spacing * std::cos(el) * std::sin(az);
    const scalar psi_z = 2.0 * kPi * spacing * std::sin(el);
    return dirichlet_power(n, psi_y) * dirichlet_power(n, psi_z);
}

} // namespace

AntennaPattern AntennaPattern::isotropic() {
    AntennaPattern p;
    p.kind_ = Kind::Iso;
    p.peak_gain_dbi_ = 0;
    p.hpbw_deg_ = 360;
    return p;
}

AntennaPattern AntennaPattern::ideal_sector(scalar hpbw_deg, scalar peak_gain_dbi) {
    if (hpbw_deg <= 0 || hpbw_deg > 360)
        throw std::invalid_argument("sector HPBW must be in (0, 360]");
    AntennaPattern p;
    p.kind_ = Kind::IdealSector;
    p.hpbw_deg_ = hpbw_deg;
    p.peak_gain_dbi_ = peak_gain_dbi;
    return p;
}

AntennaPattern AntennaPattern::planar_array(int n_per_side, scalar spacing_wavelengths,
                                            scalar grid_res_deg) {
    if (n_per_side < 1)
        throw std::invalid_argument("planar array needs at least one element per side");
    if (n_per_side == 1) return isotropic();
    if (spacing_wavelengths <= 0)
        throw std::invalid_argument("element spacing must be positive");
    if (grid_res_deg <= 0 || grid_res_deg > 10)
        throw std::invalid_argument("grid resolution out of range");

    const int n_az = static_cast<int>(std::lround(360.0 / grid_res_deg)) + 1;
    const int n_el = static_cast<int>(std::lround(180.0 / grid_res_deg)) + 1;

    auto grid = std::make_shared<Eigen::ArrayXXd>(n_el, n_az);
    scalar peak = 0;
    for (int r = 0; r < n_el; ++r) {
        const scalar el = -90.0 + r * grid_res_deg;
        for (int c = 0; c < n_az; ++c) {
            const scalar az = -180.0 + c * grid_res_deg;
            const scalar v = array_factor_sq(n_per_side, spacing_wavelengths, az, el);
            (*grid)(r, c) = v;
            peak = std::max(peak, v);
        }
    }

    // Normalize so the linear gain integrates to 4*pi over the sphere.
    const scalar d = deg2rad(grid_res_deg);
    scalar integral = 0;
    for (int r = 0; r < n_el; ++r) {
        const scalar el = -90.0 + r * grid_res_deg;
        const scalar w_r = (r == 0 || r == n_el - 1) ? 0.5 : 1.0;
        scalar row_sum = 0;
        for (int c = 0; c + 1 < n_az; ++c) // last column duplicates az = -180
            row_sum += (*grid)(r, c);
        integral += w_r * row_sum * std::cos(deg2rad(el));
    }
    integral *= d * d;
    const scalar directivity = 4.0 * kPi * peak / integral;
    *grid *= directivity / peak;

    AntennaPattern p;
    p.kind_ = Kind::PlanarArray;
    p.n_per_side_ = n_per_side;
    p.grid_ = grid;
    p.grid_res_deg_ = grid_res_deg;
    p.peak_gain_dbi_ = linear_to_db(directivity);

    // Measure the -3 dB beamwidth on the azimuth cut.
    const scalar target = directivity * 0.5;
    scalar prev = directivity;
    for (scalar az = grid_res_deg * 0.25; az <= 90.0; az += grid_res_deg * 0.25) {
        const scalar g = p.array_gain_linear(az, 0.0);
        if (g < target) {
            const scalar az_prev = az - grid_res_deg * 0.25;
            const scalar frac = (prev - target) / (prev - g);
            p.hpbw_deg_ = 2.0 * (az_prev + frac * grid_res_deg * 0.25);
            break;
        }
        prev = g;
    }
    return p;
}

scalar AntennaPattern::array_gain_linear(scalar d_az_deg, scalar d_el_deg) const {
    const scalar res = grid_res_deg_;
    const scalar fc = (d_az_deg + 180.0) / res;
    const scalar fr = (d_el_deg + 90.0) / res;
    const int c0 = std::clamp(static_cast<int>(std::floor(fc)), 0,
                              static_cast<int>(grid_->cols()) - 2);
    const int r0 = std::clamp(static_cast<int>(std::floor(fr)), 0,
                              static_cast<int>(grid_->rows()) - 2);
    const scalar tc = std::clamp(fc - c0, 0.0, 1.0);
    const scalar tr = std::clamp(fr - r0, 0.0, 1.0);
    const auto& g = *grid_;
    return (1 - tr) * ((1 - tc) * g(r0, c0) + tc * g(r0, c0 + 1)) +
           tr * ((1 - tc) * g(r0 + 1, c0) + tc * g(r0 + 1, c0 + 1));
}

scalar AntennaPattern::gain_offset_db(scalar d_az_deg, scalar d_el_deg) const {
    fold_offsets(d_az_deg, d_el_deg);
    switch (kind_) {
    case Kind::Iso:
        return 0.0;
    case Kind::IdealSector: {
        const scalar half = 0.5 * hpbw_deg_;
        return (std::abs(d_az_deg) <= half && std::abs(d_el_deg) <= half) ? peak_gain_dbi_
                                                                          : kSectorFloorDbi;
    }
    case Kind::PlanarArray:
        return linear_to_db(std::max(array_gain_linear(d_az_deg, d_el_deg), kLinearFloor));
    }
    return 0.0;
}

scalar AntennaPattern::steered_gain_db(const Steering& steer, scalar dir_az_deg,
                                       scalar dir_el_deg) const {
    return gain_offset_db(steer.az_deg - dir_az_deg, steer.el_deg - dir_el_deg);
}

scalar AntennaPattern::energy_integral() const {
    const scalar res = 0.25;
    const scalar d = deg2rad(res);
    scalar integral = 0;
    const int n_el = static_cast<int>(std::lround(180.0 / res)) + 1;
    const int n_az = static_cast<int>(std::lround(360.0 / res));
    for (int r = 0; r < n_el; ++r) {
        const scalar el = -90.0 + r * res;
        const scalar w_r = (r == 0 || r == n_el - 1) ? 0.5 : 1.0;
        scalar row_sum = 0;
        for (int c = 0; c < n_az; ++c) {
            const scalar az = -180.0 + c * res;
            row_sum += db_to_linear(gain_offset_db(az, el));
        }
        integral += w_r * row_sum * std::cos(deg2rad(el));
    }
    return integral * d * d / (4.0 * kPi);
}

void AntennaPattern::export_cuts_csv(std::ostream& os, scalar step_deg) const {
    os << "cut,angle_deg,gain_dbi\n";
    for (scalar az = -180.0; az <= 180.0 + 1e-9; az += step_deg)
        os << "azimuth," << az << ',' << gain_offset_db(az, 0.0) << '\n';
    for (scalar el = -90.0; el <= 90.0 + 1e-9; el += step_deg)
        os << "elevation," << el << ',' << gain_offset_db(0.0, el) << '\n';
}

} // namespace mmnet
