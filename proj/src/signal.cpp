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

#include "fimloc/signal.hpp"

#include <cmath>
#include <numbers>

namespace fimloc {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

void check_transmission_index(const TransmitPlan &plan, Eigen::Index t, const char *where)
{
    if (t < 0 || t >= plan.num_transmissions())
        throw std::invalid_argument(std::string(where) + ": transmission index out of range");
}

} // namespace

CVecX TransmitPlan::weights(Eigen::Index t) const
{
    check_transmission_index(*this, t, "TransmitPlan::weights");
    return beamformers[static_cast<std::size_t>(t)] * symbols;
}

CMatX dft_codebook(Eigen::Index n_antennas, Eigen::Index n_streams,
                   Eigen::Index transmission_index)
{
    if (n_antennas < 1 || n_streams < 1 || n_streams > n_antennas)
        throw std::invalid_argument("dft_codebook: need 1 <= n_streams <= n_antennas");
    if (transmission_index < 0)
        throw std::invalid_argument("dft_codebook: transmission index must be >= 0");

    const double scale = 1.0 / std::sqrt(static_cast<double>(n_antennas));
    CMatX f(n_antennas, n_streams);
    for (Eigen::Index d = 0; d < n_streams; ++d)
    {
        const Eigen::Index k = (transmission_index * n_streams + d) % n_antennas;
        for (Eigen::Index n = 0; n < n_antennas; ++n)
        {
            const double phase = -two_pi * static_cast<double>(n) * static_cast<double>(k) /
                                 static_cast<double>(n_antennas);
            f(n, d) = std::polar(scale, phase);
        }
    }
    return f;
}

TransmitPlan identity_plan(Eigen::Index n_antennas, Eigen::Index num_transmissions)
{
    if (n_antennas < 1)
        throw std::invalid_argument("identity_plan: n_antennas must be >= 1");
    if (num_transmissions < 1)
        throw std::invalid_argument("identity_plan: num_transmissions must be >= 1");

    TransmitPlan plan;
    plan.beamformers.assign(static_cast<std::size_t>(num_transmissions),
                            CMatX::Identity(n_antennas, n_antennas));
    plan.symbols = CVecX::Constant(n_antennas, 1.0 / std::sqrt(static_cast<double>(n_antennas)));
    return plan;
}

TransmitPlan dft_plan(Eigen::Index n_antennas, Eigen::Index n_streams,
                      Eigen::Index num_transmissions)
{
    if (num_transmissions < 1)
        throw std::invalid_argument("dft_plan: num_transmissions must be >= 1");

    TransmitPlan plan;
    plan.beamformers.reserve(static_cast<std::size_t>(num_transmissions));
    for (Eigen::Index t = 0; t < num_transmissions; ++t)
        plan.beamformers.push_back(dft_codebook(n_antennas, n_streams, t));

    const double scale = 1.0 / std::sqrt(static_cast<double>(n_streams));
    plan.symbols.resize(n_streams);
    for (Eigen::Index d = 0; d < n_streams; ++d)
    {
        const double phase = std::numbers::pi * static_cast<double>(d) * static_cast<double>(d) /
                             static_cast<double>(n_streams);
        plan.symbols(d) = std::polar(scale, phase);
    }
    return plan;
}

CVecX steering_vector(const Mat3X &local_coords, const EulerAngles &angles,
                      const Vec3 &direction, double wavelength)
{
    if (std::abs(direction.norm() - 1.0) > 1e-9)
        throw std::invalid_argument("steering_vector: direction must be a unit vector");
    if (!(wavelength > 0.0))
        throw std::invalid_argument("steering_vector: wavelength must be positive");

    const Mat3 q = rotation_matrix(angles);
    const Eigen::VectorXd proj = (q * local_coords).transpose() * direction;
    const double wavenumber = two_pi / wavelength;

    CVecX a(proj.size());
    for (Eigen::Index n = 0; n < proj.size(); ++n)
        a(n) = std::polar(1.0, -wavenumber * proj(n));
    return a;
}

CVecX nearfield_mu(const Scenario &scenario, Eigen::Index transmission_index)
{
    if (scenario.regime != Regime::NearField)
        throw std::invalid_argument("nearfield_mu: scenario regime is not NearField");
    check_transmission_index(scenario.plan, transmission_index, "nearfield_mu");

    const Mat3X pb = global_antenna_positions(scenario.source_pose, scenario.source_array);
    const Mat3X pu = global_antenna_positions(scenario.dest_pose, scenario.dest_array);
    const CVecX w = scenario.plan.weights(transmission_index);
    const double wavenumber = two_pi / scenario.channel.wavelength();
    const std::complex<double> beta = scenario.channel.gain();

    CVecX mu = CVecX::Zero(pu.cols());
    for (Eigen::Index u = 0; u < pu.cols(); ++u)
    {
        std::complex<double> acc = 0.0;
        for (Eigen::Index b = 0; b < pb.cols(); ++b)
        {
            const double d = (pu.col(u) - pb.col(b)).norm();
            if (d == 0.0)
                throw degenerate_geometry_error("nearfield_mu: transmit and receive antennas coincide");
            acc += w(b) * std::polar(1.0, -wavenumber * d);
        }
        mu(u) = beta * acc;
    }
    return mu;
}

CVecX farfield_mu(const Scenario &scenario, Eigen::Index transmission_index)
{
    if (scenario.regime != Regime::FarField)
        throw std::invalid_argument("farfield_mu: scenario regime is not FarField");
    check_transmission_index(scenario.plan, transmission_index, "farfield_mu");

    const DirectionInfo dir =
        direction_info(scenario.source_pose.position, scenario.dest_pose.position);
    const double lambda = scenario.channel.wavelength();

    const CVecX a_src = steering_vector(scenario.source_array.local_coords(),
                                        scenario.source_pose.angles, dir.unit_vector, lambda);
    const CVecX a_dst = steering_vector(scenario.dest_array.local_coords(),
                                        scenario.dest_pose.angles, dir.unit_vector, lambda);

    const CVecX w = scenario.plan.weights(transmission_index);
    const std::complex<double> g = a_src.dot(w); // a_src^H * F_t * x
    const std::complex<double> bulk = std::polar(1.0, -two_pi * dir.distance / lambda);
    return scenario.channel.gain() * bulk * g * a_dst;
}

CVecX received_mu(const Scenario &scenario, Eigen::Index transmission_index)
{
    return scenario.regime == Regime::NearField ? nearfield_mu(scenario, transmission_index)
                                                : farfield_mu(scenario, transmission_index);
}

} // namespace fimloc
