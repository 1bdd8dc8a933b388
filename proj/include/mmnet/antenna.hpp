// SPDX-License-Identifier: Apache-2.0
//
// mmnet - multi-user mm-wave urban cellular downlink simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef MMNET_ANTENNA_HPP
#define MMNET_ANTENNA_HPP

#include "mmnet/types.hpp"

#include <iosfwd>
#include <memory>

namespace mmnet {

/// Main-lobe pointing direction, degrees.
struct Steering {
    scalar az_deg = 0;
    scalar el_deg = 0;
};

/// Directional gain model queried by angular offset from the main lobe.
///
/// Three variants: isotropic (0 dBi everywhere), ideal square sector (peak
/// gain inside +-HPBW/2 in both azimuth and elevation, -40 dBi outside), and
/// an N x N uniform planar array of isotropic elements whose |AF|^2 pattern
/// is precomputed on a grid and normalized so the gain integrates to 4*pi
/// over the sphere.
class AntennaPattern {
public:
    enum class Kind { Iso, IdealSector, PlanarArray };

    static AntennaPattern isotropic();
    static AntennaPattern ideal_sector(scalar hpbw_deg, scalar peak_gain_dbi);
    /// n = 1 degenerates to the isotropic pattern. Grid resolution in degrees.
    static AntennaPattern planar_array(int n_per_side, scalar spacing_wavelengths = 0.5,
                                       scalar grid_res_deg = 0.25);

    /// Gain at an angular offset (d_az, d_el) from the main lobe, dBi.
    /// Offsets are wrapped onto the sphere internally.
    scalar gain_offset_db(scalar d_az_deg, scalar d_el_deg) const;

    /// Gain toward direction `dir` with the main lobe steered to `steer`:
    /// gain_offset(steer - dir). Equals the peak when dir == steer.
    scalar steered_gain_db(const Steering& steer, scalar dir_az_deg, scalar dir_el_deg) const;

    Kind kind() const { return kind_; }
    scalar peak_gain_dbi() const { return peak_gain_dbi_; }
    /// Half-power beamwidth: the sector parameter, or measured on the array
    /// azimuth cut. Isotropic reports 360.
    scalar hpbw_deg() const { return hpbw_deg_; }
    int elements_per_side() const { return n_per_side_; }

    /// (1/4pi) * integral of the linear gain over the sphere; 1 for a
    /// lossless normalized pattern. Sector patterns are not normalized.
    scalar energy_integral() const;

    /// CSV cuts (az sweep at el=0 and el sweep at az=0): columns cut,angle_deg,gain_dbi.
    void export_cuts_csv(std::ostream& os, scalar step_deg = 0.25) const;

private:
    AntennaPattern() = default;

    Kind kind_ = Kind::Iso;
    scalar peak_gain_dbi_ = 0;
    scalar hpbw_deg_ = 360;
    int n_per_side_ = 0;

    // Array grid: rows = elevation samples [-90,90], cols = azimuth [-180,180].
    std::shared_ptr<const Eigen::ArrayXXd> grid_;
    scalar grid_res_deg_ = 0.25;

    scalar array_gain_linear(scalar d_az_deg, scalar d_el_deg) const;
};

} // namespace mmnet

#endif // MMNET_ANTENNA_HPP
