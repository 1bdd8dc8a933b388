// SPDX-License-Identifier: Apache-2.0
//
// mmnet - multi-user mm-wave urban cellular downlink simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef MMNET_TYPES_HPP
#define MMNET_TYPES_HPP

#include <Eigen/Core>
#include <cmath>

namespace mmnet {

using scalar = double;
using Vec2 = Eigen::Matrix<scalar, 2, 1>;
using Vec3 = Eigen::Matrix<scalar, 3, 1>;

inline constexpr scalar kSpeedOfLight = 299792458.0;
inline constexpr scalar kPi = 3.14159265358979323846;

inline scalar deg2rad(scalar d) { return d * kPi / 180.0; }
inline scalar rad2deg(scalar r) { return r * 180.0 / kPi; }

inline scalar db_to_linear(scalar db) { return std::pow(10.0, db / 10.0); }
inline scalar linear_to_db(scalar lin) { return 10.0 * std::log10(lin); }
inline scalar dbm_to_mw(scalar dbm) { return std::pow(10.0, dbm / 10.0); }
inline scalar mw_to_dbm(scalar mw) { return 10.0 * std::log10(mw); }

/// Wrap an azimuth angle to [-180, 180) degrees.
inline scalar wrap_azimuth_deg(scalar az) {
    az = std::fmod(az + 180.0, 360.0);
    if (az < 0.0) az += 360.0;
    return az - 180.0;
}

} // namespace mmnet

#endif // MMNET_TYPES_HPP
