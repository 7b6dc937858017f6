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

#ifndef FIMLOC_GEOMETRY_HPP
#define FIMLOC_GEOMETRY_HPP

#include <Eigen/Dense>
#include <array>
#include <stdexcept>

namespace fimloc {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Mat3X = Eigen::Matrix3Xd;

inline constexpr double speed_of_light = 299792458.0; // m/s

/// Thrown when a geometric configuration makes the requested quantity
/// undefined (coincident points, zero-length baselines).
class degenerate_geometry_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Intrinsic orientation angles in radians, stored unwrapped. No mod-2*pi
/// normalization is ever applied; the information matrix is local, so
/// wrapping would only disturb finite differencing.
struct EulerAngles
{
    double alpha = 0.0; // rotation about z (yaw)
    double psi = 0.0;   // rotation about y (pitch)
    double phi = 0.0;   // rotation about x (roll)
};

/// Position of a node's centroid in the global frame plus its orientation
/// offset.
struct Pose
{
    Vec3 position = Vec3::Zero(); // meters
    EulerAngles angles;
};

/// Antenna element coordinates relative to the array centroid, before the
/// orientation offset is applied. Columns are the per-element vectors; the
/// column mean must be zero (centroid frame) so that position and
/// orientation effects stay decoupled.
class ArrayGeometry
{
  public:
    explicit ArrayGeometry(Mat3X local_coords);

    const Mat3X &local_coords() const { return local_coords_; }
    Eigen::Index count() const { return local_coords_.cols(); }

  private:
    Mat3X local_coords_;
};

/// Relation between two points: Euclidean distance, unit direction vector
/// and the spherical angles (azimuth from +x in the x-y plane, elevation
/// measured from +z) that reproduce it as
/// [cos(az) sin(el), sin(az) sin(el), cos(el)].
///
/// When the direction is parallel to +-z the azimuth is undefined; it is
/// reported as 0 by convention.
struct DirectionInfo
{
    double distance = 0.0;        // meters, > 0
    Vec3 unit_vector = Vec3::Zero();
    double azimuth = 0.0;         // radians
    double elevation = 0.0;       // radians, in [0, pi]
};

/// Rotation matrix for the intrinsic z-y-x sequence,
/// Q = R_z(alpha) * R_y(psi) * R_x(phi).
Mat3 rotation_matrix(const EulerAngles &angles);

/// Partial derivatives of rotation_matrix with respect to (alpha, psi, phi),
/// obtained by differentiating one elementary factor at a time.
std::array<Mat3, 3> rotation_derivatives(const EulerAngles &angles);

/// Global element positions: column b is pose.position + Q * local_coords[b].
Mat3X global_antenna_positions(const Pose &pose, const ArrayGeometry &array);

/// Distance, unit direction and spherical angles from p_from to p_to.
/// Throws degenerate_geometry_error when the points coincide.
DirectionInfo direction_info(const Vec3 &p_from, const Vec3 &p_to);

/// Near/far field boundary 2*D^2/lambda for an aperture of maximum
/// diameter D.
double fraunhofer_distance(double max_diameter, double wavelength);

/// Maximum pairwise element distance of an array (0 for a single element).
double array_diameter(const ArrayGeometry &array);

/// Uniform planar array in the local x-y plane with half-wavelength
/// spacing, centered on its centroid. The element count is factored as
/// rows x cols with rows the largest divisor <= sqrt(count), rows along y
/// and cols along x; elements are ordered row-major.
ArrayGeometry upa_array(Eigen::Index count, double wavelength);

} // namespace fimloc

#endif // FIMLOC_GEOMETRY_HPP
