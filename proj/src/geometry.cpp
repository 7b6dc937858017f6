// SPDX-License-Identifier: Apache-2.0
//
// fimloc — Fisher information limits for joint position and orientation
// estimation over a single MIMO link, under near-field and far-field
// propagation models
// Copyright (C) 2026 the fimloc authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "fimloc/geometry.hpp"

#include <cmath>

namespace fimloc {

namespace {

bool all_finite(const EulerAngles &a)
{
    return std::isfinite(a.alpha) && std::isfinite(a.psi) && std::isfinite(a.phi);
}

Mat3 rot_z(double a)
{
    const double c = std::cos(a), s = std::sin(a);
    Mat3 m;
    m << c, -s, 0.0,
        s, c, 0.0,
        0.0, 0.0, 1.0;
    return m;
}

Mat3 rot_y(double a)
{
    const double c = std::cos(a), s = std::sin(a);
    Mat3 m;
    m << c, 0.0, s,
        0.0, 1.0, 0.0,
        -s, 0.0, c;
    return m;
}

Mat3 rot_x(double a)
{
    const double c = std::cos(a), s = std::sin(a);
    Mat3 m;
    m << 1.0, 0.0, 0.0,
        0.0, c, -s,
        0.0, s, c;
    return m;
}

Mat3 drot_z(double a)
{
    const double c = std::cos(a), s = std::sin(a);
    Mat3 m;
    m << -s, -c, 0.0,
        c, -s, 0.0,
        0.0, 0.0, 0.0;
    return m;
}

Mat3 drot_y(double a)
{
    const double c = std::cos(a), s = std::sin(a);
    Mat3 m;
    m << -s, 0.0, c,
        0.0, 0.0, 0.0,
        -c, 0.0, -s;
    return m;
}

Mat3 drot_x(double a)
{
    const double c = std::cos(a), s = std::sin(a);
    Mat3 m;
    m << 0.0, 0.0, 0.0,
        0.0, -s, -c,
        0.0, c, -s;
    return m;
}

} // namespace

ArrayGeometry::ArrayGeometry(Mat3X local_coords)
    : local_coords_(std::move(local_coords))
{
    if (local_coords_.cols() < 1)
        throw std::invalid_argument("ArrayGeometry: element count must be >= 1");
    if (!local_coords_.allFinite())
        throw std::invalid_argument("ArrayGeometry: local coordinates must be finite");

    // Centroid frame: the column mean must vanish.
    const Vec3 mean = local_coords_.rowwise().mean();
    if (mean.cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("ArrayGeometry: local coordinates are not centered on the centroid");
}

Mat3 rotation_matrix(const EulerAngles &angles)
{
    if (!all_finite(angles))
        throw std::invalid_argument("rotation_matrix: angles must be finite");
    return rot_z(angles.alpha) * rot_y(angles.psi) * rot_x(angles.phi);
}

std::array<Mat3, 3> rotation_derivatives(const EulerAngles &angles)
{
    if (!all_finite(angles))
        throw std::invalid_argument("rotation_derivatives: angles must be finite");
    const Mat3 rz = rot_z(angles.alpha);
    const Mat3 ry = rot_y(angles.psi);
    const Mat3 rx = rot_x(angles.phi);
    return {drot_z(angles.alpha) * ry * rx,
            rz * drot_y(angles.psi) * rx,
            rz * ry * drot_x(angles.phi)};
}

Mat3X global_antenna_positions(const Pose &pose, const ArrayGeometry &array)
{
    const Mat3 q = rotation_matrix(pose.angles);
    Mat3X global = q * array.local_coords();
    global.colwise() += pose.position;
    return global;
}

DirectionInfo direction_info(const Vec3 &p_from, const Vec3 &p_to)
{
    const Vec3 diff = p_to - p_from;
    const double dist = diff.norm();
    if (dist == 0.0)
        throw degenerate_geometry_error("direction_info: points coincide");
    if (!std::isfinite(dist))
        throw std::invalid_argument("direction_info: points must be finite");

    DirectionInfo info;
    info.distance = dist;
    info.unit_vector = diff / dist;
    // Azimuth is undefined along +-z; report 0 there.
    if (info.unit_vector.x() == 0.0 && info.unit_vector.y() == 0.0)
        info.azimuth = 0.0;
    else
        info.azimuth = std::atan2(info.unit_vector.y(), info.unit_vector.x());
    const double z = std::clamp(info.unit_vector.z(), -1.0, 1.0);
    info.elevation = std::acos(z);
    return info;
}

double fraunhofer_distance(double max_diameter, double wavelength)
{
    if (!(max_diameter > 0.0) || !(wavelength > 0.0))
        throw std::invalid_argument("fraunhofer_distance: diameter and wavelength must be positive");
    return 2.0 * max_diameter * max_diameter / wavelength;
}

double array_diameter(const ArrayGeometry &array)
{
    const Mat3X &s = array.local_coords();
    const Eigen::Index n = s.cols();
    double max_sq = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
            max_sq = std::max(max_sq, (s.col(i) - s.col(j)).squaredNorm());
    return std::sqrt(max_sq);
}

ArrayGeometry upa_array(Eigen::Index count, double wavelength)
{
    if (count < 1)
        throw std::invalid_argument("upa_array: count must be >= 1");
    if (!(wavelength > 0.0))
        throw std::invalid_argument("upa_array: wavelength must be positive");

    // Most-square factorization: rows is the largest divisor <= sqrt(count).
    Eigen::Index rows = 1;
    for (Eigen::Index d = 1; d * d <= count; ++d)
        if (count % d == 0)
            rows = d;
    const Eigen::Index cols = count / rows;

    // Offsets are odd/even integer multiples of lambda/4, symmetric about 0,
    // so the centroid is exact up to one rounding per coordinate.
    const double quarter = wavelength / 4.0;
    Mat3X coords(3, count);
    Eigen::Index b = 0;
    for (Eigen::Index k = 0; k < rows; ++k)
        for (Eigen::Index i = 0; i < cols; ++i, ++b)
        {
            coords(0, b) = static_cast<double>(2 * i - (cols - 1)) * quarter;
            coords(1, b) = static_cast<double>(2 * k - (rows - 1)) * quarter;
            coords(2, b) = 0.0;
        }
    return ArrayGeometry(std::move(coords));
}

} // namespace fimloc
