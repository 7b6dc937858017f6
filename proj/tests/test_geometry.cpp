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

#include <catch2/catch_amalgamated.hpp>

#include "fimloc/geometry.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

using namespace fimloc;

namespace {

constexpr double pi = std::numbers::pi;

// Reference wavelength of the default 10 GHz carrier.
constexpr double lambda0 = speed_of_light / 10e9;

EulerAngles paper_phi_b() { return {1.1, 2.2, 0.7}; }

} // namespace

TEST_CASE("rotation_matrix at zero angles is the identity")
{
    const Mat3 q = rotation_matrix({0.0, 0.0, 0.0});
    REQUIRE((q - Mat3::Identity()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("rotation_matrix for a quarter turn about z")
{
    const Mat3 q = rotation_matrix({pi / 2.0, 0.0, 0.0});
    Mat3 expected;
    expected << 0.0, -1.0, 0.0,
        1.0, 0.0, 0.0,
        0.0, 0.0, 1.0;
    REQUIRE((q - expected).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("rotation_matrix matches the elementary-product reference value")
{
    // Product R_z(1.1)*R_y(2.2)*R_x(0.7) evaluated independently.
    const Mat3 q = rotation_matrix(paper_phi_b());
    Mat3 expected;
    expected << -2.6694182424164375e-01, -4.4537849754576386e-01, 8.5462275677308142e-01,
        -5.2447652710234205e-01, 8.1111273857963317e-01, 2.5888317410081702e-01,
        -8.0849640381959009e-01, -3.7912282869503611e-01, -4.5011048174094392e-01;
    REQUIRE((q - expected).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("rotation_matrix output is orthonormal with unit determinant")
{
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> angle(-2.0 * pi, 2.0 * pi);
    for (int i = 0; i < 100; ++i)
    {
        const Mat3 q = rotation_matrix({angle(rng), angle(rng), angle(rng)});
        REQUIRE((q.transpose() * q - Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-12);
        REQUIRE(std::abs(q.determinant() - 1.0) < 1e-12);
    }
}

TEST_CASE("rotation_matrix rejects non-finite angles")
{
    REQUIRE_THROWS_AS(rotation_matrix({std::nan(""), 0.0, 0.0}), std::invalid_argument);
    REQUIRE_THROWS_AS(rotation_matrix({0.0, std::numeric_limits<double>::infinity(), 0.0}),
                      std::invalid_argument);
}

TEST_CASE("rotation_derivatives at zero angles are the elementary generators")
{
    const auto d = rotation_derivatives({0.0, 0.0, 0.0});
    Mat3 gen_z, gen_x;
    gen_z << 0.0, -1.0, 0.0,
        1.0, 0.0, 0.0,
        0.0, 0.0, 0.0;
    gen_x << 0.0, 0.0, 0.0,
        0.0, 0.0, -1.0,
        0.0, 1.0, 0.0;
    REQUIRE((d[0] - gen_z).cwiseAbs().maxCoeff() < 1e-15);
    REQUIRE((d[2] - gen_x).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("rotation_derivatives matches central finite differences")
{
    const double h = 1e-6;
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> angle(-2.0 * pi, 2.0 * pi);

    const auto check = [&](const EulerAngles &a) {
        const auto d = rotation_derivatives(a);
        const std::array<EulerAngles, 3> plus = {
            EulerAngles{a.alpha + h, a.psi, a.phi},
            EulerAngles{a.alpha, a.psi + h, a.phi},
            EulerAngles{a.alpha, a.psi, a.phi + h},
        };
        const std::array<EulerAngles, 3> minus = {
            EulerAngles{a.alpha - h, a.psi, a.phi},
            EulerAngles{a.alpha, a.psi - h, a.phi},
            EulerAngles{a.alpha, a.psi, a.phi - h},
        };
        for (int k = 0; k < 3; ++k)
        {
            const Mat3 fd = (rotation_matrix(plus[k]) - rotation_matrix(minus[k])) / (2.0 * h);
            REQUIRE((d[k] - fd).norm() / fd.norm() < 1e-6);
        }
    };

    check(paper_phi_b());
    for (int i = 0; i < 100; ++i)
        check({angle(rng), angle(rng), angle(rng)});
}

TEST_CASE("global_antenna_positions with the identity pose returns the local coordinates")
{
    const ArrayGeometry array = upa_array(6, lambda0);
    const Mat3X global = global_antenna_positions(Pose{}, array);
    REQUIRE((global - array.local_coords()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("global_antenna_positions with zero angles translates every column")
{
    const ArrayGeometry array = upa_array(5, lambda0);
    const Vec3 p(0.4, -1.25, 7.0);
    const Mat3X global = global_antenna_positions(Pose{p, {}}, array);
    for (Eigen::Index b = 0; b < array.count(); ++b)
        REQUIRE((global.col(b) - (array.local_coords().col(b) + p)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("global_antenna_positions for the reference pose and a two-element array")
{
    // p_B +- Q * [lambda/4, 0, 0] with Q the reference rotation, evaluated
    // independently at lambda = c / 10 GHz.
    const Pose pose{Vec3(1.5, 1.0, 4.0), paper_phi_b()};
    const Mat3X global = global_antenna_positions(pose, upa_array(2, lambda0));
    const Vec3 lo(1.5020006786408102, 1.0039308526805828, 4.0060595281046307);
    const Vec3 hi(1.4979993213591898, 0.99606914731941709, 3.9939404718953693);
    REQUIRE((global.col(0) - lo).cwiseAbs().maxCoeff() < 1e-14);
    REQUIRE((global.col(1) - hi).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("direction_info on boresight and axis-aligned links")
{
    const DirectionInfo up = direction_info(Vec3(0, 0, 0), Vec3(0, 0, 2));
    REQUIRE(up.distance == 2.0);
    REQUIRE((up.unit_vector - Vec3(0, 0, 1)).cwiseAbs().maxCoeff() == 0.0);
    REQUIRE(up.elevation == 0.0);
    REQUIRE(up.azimuth == 0.0); // undefined along +z, reported as 0

    const DirectionInfo x = direction_info(Vec3(0, 0, 0), Vec3(1, 0, 0));
    REQUIRE(x.distance == 1.0);
    REQUIRE(x.azimuth == 0.0);
    REQUIRE(std::abs(x.elevation - pi / 2.0) < 1e-15);
}

TEST_CASE("direction_info for the reference link")
{
    const DirectionInfo dir = direction_info(Vec3(1.5, 1.0, 4.0), Vec3(2.6, 2.15, 5.1));
    REQUIRE(std::abs(dir.distance - 1.9345542122153101) < 1e-15);
    REQUIRE(std::abs(dir.azimuth - 0.80761672872416723) < 1e-14);
    REQUIRE(std::abs(dir.elevation - 0.96598552704161500) < 1e-14);
}

TEST_CASE("direction_info is antisymmetric and invertible from its angles")
{
    std::mt19937 rng(5150);
    std::uniform_real_distribution<double> coord(-5.0, 5.0);
    for (int i = 0; i < 50; ++i)
    {
        const Vec3 p(coord(rng), coord(rng), coord(rng));
        const Vec3 q(coord(rng), coord(rng), coord(rng));
        if ((p - q).norm() == 0.0)
            continue;
        const DirectionInfo fw = direction_info(p, q);
        const DirectionInfo bw = direction_info(q, p);
        REQUIRE((fw.unit_vector + bw.unit_vector).cwiseAbs().maxCoeff() < 1e-15);

        const double se = std::sin(fw.elevation);
        const Vec3 rebuilt(std::cos(fw.azimuth) * se, std::sin(fw.azimuth) * se,
                           std::cos(fw.elevation));
        REQUIRE((fw.unit_vector - rebuilt).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("direction_info rejects coincident points")
{
    REQUIRE_THROWS_AS(direction_info(Vec3(1, 2, 3), Vec3(1, 2, 3)), degenerate_geometry_error);
}

TEST_CASE("fraunhofer_distance formula and input checks")
{
    REQUIRE(fraunhofer_distance(lambda0, lambda0) == 2.0 * lambda0);
    REQUIRE(std::abs(fraunhofer_distance(0.1, 0.01) - 2.0) < 1e-15);
    REQUIRE_THROWS_AS(fraunhofer_distance(0.0, 0.01), std::invalid_argument);
    REQUIRE_THROWS_AS(fraunhofer_distance(0.1, -1.0), std::invalid_argument);
}

TEST_CASE("the reference link sits inside the Fraunhofer boundary of the 100-element source")
{
    const ArrayGeometry source = upa_array(100, lambda0);
    const double diameter = array_diameter(source);
    // 10 x 10 grid at lambda/2 spacing: diagonal 4.5 * sqrt(2) * lambda.
    REQUIRE(std::abs(diameter - 4.5 * std::sqrt(2.0) * lambda0) < 1e-15);

    const double d_f = fraunhofer_distance(diameter, lambda0);
    REQUIRE(std::abs(d_f - 2.4283189097999998) < 1e-12);

    const double d_bu = direction_info(Vec3(1.5, 1.0, 4.0), Vec3(2.6, 2.15, 5.1)).distance;
    REQUIRE(d_bu < d_f); // near field
}

TEST_CASE("upa_array builds centered most-square grids")
{
    const ArrayGeometry upa100 = upa_array(100, lambda0);
    REQUIRE(upa100.count() == 100);
    REQUIRE(upa100.local_coords().rowwise().mean().cwiseAbs().maxCoeff() < 1e-15);
    // 10 x 10: both axes span 4.5 lambda.
    REQUIRE(std::abs(upa100.local_coords().row(0).maxCoeff() - 2.25 * lambda0) < 1e-15);
    REQUIRE(std::abs(upa100.local_coords().row(1).maxCoeff() - 2.25 * lambda0) < 1e-15);
    REQUIRE(upa100.local_coords().row(2).cwiseAbs().maxCoeff() == 0.0);

    const ArrayGeometry upa2 = upa_array(2, lambda0);
    REQUIRE(upa2.local_coords().col(0).isApprox(Vec3(-lambda0 / 4.0, 0.0, 0.0)));
    REQUIRE(upa2.local_coords().col(1).isApprox(Vec3(lambda0 / 4.0, 0.0, 0.0)));

    const ArrayGeometry upa12 = upa_array(12, lambda0);
    // 3 x 4: x spans 1.5 lambda, y spans 1 lambda.
    REQUIRE(std::abs(upa12.local_coords().row(0).maxCoeff() - 0.75 * lambda0) < 1e-15);
    REQUIRE(std::abs(upa12.local_coords().row(1).maxCoeff() - 0.5 * lambda0) < 1e-15);

    REQUIRE(upa_array(1, lambda0).local_coords().cwiseAbs().maxCoeff() == 0.0);
    REQUIRE_THROWS_AS(upa_array(0, lambda0), std::invalid_argument);
}

TEST_CASE("ArrayGeometry rejects uncentered coordinates")
{
    Mat3X coords(3, 2);
    coords << 0.0, 1.0,
        0.0, 0.0,
        0.0, 0.0;
    REQUIRE_THROWS_AS(ArrayGeometry(coords), std::invalid_argument);
}
