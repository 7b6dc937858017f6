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

#include "fimloc/derivs.hpp"

#include <cmath>
#include <numbers>

namespace fimloc {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr std::complex<double> imag_unit{0.0, 1.0};

void check_blocks(std::span<const ParamBlock> blocks, const char *where)
{
    if (blocks.empty())
        throw std::invalid_argument(std::string(where) + ": block list is empty");
    for (std::size_t i = 0; i + 1 < blocks.size(); ++i)
        for (std::size_t j = i + 1; j < blocks.size(); ++j)
            if (blocks[i] == blocks[j])
                throw std::invalid_argument(std::string(where) + ": duplicate block " +
                                            block_name(blocks[i]));
}

/// Column offset of each block within the Jacobian.
std::vector<Eigen::Index> column_offsets(std::span<const ParamBlock> blocks)
{
    std::vector<Eigen::Index> offsets;
    offsets.reserve(blocks.size());
    Eigen::Index off = 0;
    for (ParamBlock b : blocks)
    {
        offsets.push_back(off);
        off += block_dimension(b);
    }
    return offsets;
}

} // namespace

Eigen::Index block_dimension(ParamBlock block)
{
    switch (block)
    {
    case ParamBlock::PosU:
    case ParamBlock::PosB:
    case ParamBlock::OriU:
    case ParamBlock::OriB:
        return 3;
    case ParamBlock::GainR:
    case ParamBlock::GainI:
        return 1;
    }
    throw std::invalid_argument("block_dimension: unknown block");
}

std::string block_name(ParamBlock block)
{
    switch (block)
    {
    case ParamBlock::PosU:
        return "pos_u";
    case ParamBlock::PosB:
        return "pos_b";
    case ParamBlock::OriU:
        return "ori_u";
    case ParamBlock::OriB:
        return "ori_b";
    case ParamBlock::GainR:
        return "gain_r";
    case ParamBlock::GainI:
        return "gain_i";
    }
    throw std::invalid_argument("block_name: unknown block");
}

Eigen::Index total_dimension(std::span<const ParamBlock> blocks)
{
    Eigen::Index k = 0;
    for (ParamBlock b : blocks)
        k += block_dimension(b);
    return k;
}

CMatX nearfield_jacobian(const Scenario &scenario, std::span<const ParamBlock> blocks,
                         Eigen::Index transmission_index)
{
    if (scenario.regime != Regime::NearField)
        throw std::invalid_argument("nearfield_jacobian: scenario regime is not NearField");
    check_blocks(blocks, "nearfield_jacobian");

    const Mat3X pb = global_antenna_positions(scenario.source_pose, scenario.source_array);
    const Mat3X pu = global_antenna_positions(scenario.dest_pose, scenario.dest_array);
    const CVecX w = scenario.plan.weights(transmission_index);
    const double wavenumber = two_pi / scenario.channel.wavelength();
    const std::complex<double> beta = scenario.channel.gain();
    const std::complex<double> phase_factor = -imag_unit * wavenumber * beta;

    // Angle-derivatives of the rotated local coordinates, one 3 x N matrix
    // per Euler angle and node.
    const std::array<Mat3, 3> dq_src = rotation_derivatives(scenario.source_pose.angles);
    const std::array<Mat3, 3> dq_dst = rotation_derivatives(scenario.dest_pose.angles);
    std::array<Mat3X, 3> dsrc, ddst;
    for (int k = 0; k < 3; ++k)
    {
        dsrc[k] = dq_src[k] * scenario.source_array.local_coords();
        ddst[k] = dq_dst[k] * scenario.dest_array.local_coords();
    }

    const std::vector<Eigen::Index> offsets = column_offsets(blocks);
    CMatX jac = CMatX::Zero(pu.cols(), total_dimension(blocks));

    for (Eigen::Index u = 0; u < pu.cols(); ++u)
        for (Eigen::Index b = 0; b < pb.cols(); ++b)
        {
            const Vec3 diff = pu.col(u) - pb.col(b);
            const double d = diff.norm();
            if (d == 0.0)
                throw degenerate_geometry_error(
                    "nearfield_jacobian: transmit and receive antennas coincide");
            // Beta-stripped per-pair contribution to mu_u.
            const std::complex<double> term = w(b) * std::polar(1.0, -wavenumber * d);
            const std::complex<double> pose_scale = phase_factor * term / d;

            for (std::size_t i = 0; i < blocks.size(); ++i)
            {
                const Eigen::Index col = offsets[i];
                switch (blocks[i])
                {
                case ParamBlock::PosU:
                    for (int k = 0; k < 3; ++k)
                        jac(u, col + k) += pose_scale * diff(k);
                    break;
                case ParamBlock::PosB:
                    for (int k = 0; k < 3; ++k)
                        jac(u, col + k) -= pose_scale * diff(k);
                    break;
                case ParamBlock::OriU:
                    for (int k = 0; k < 3; ++k)
                        jac(u, col + k) += pose_scale * diff.dot(ddst[k].col(u));
                    break;
                case ParamBlock::OriB:
                    for (int k = 0; k < 3; ++k)
                        jac(u, col + k) -= pose_scale * diff.dot(dsrc[k].col(b));
                    break;
                case ParamBlock::GainR:
                    jac(u, col) += term;
                    break;
                case ParamBlock::GainI:
                    jac(u, col) += imag_unit * term;
                    break;
                }
            }
        }
    return jac;
}

CMatX farfield_jacobian(const Scenario &scenario, std::span<const ParamBlock> blocks,
                        Eigen::Index transmission_index)
{
    if (scenario.regime != Regime::FarField)
        throw std::invalid_argument("farfield_jacobian: scenario regime is not FarField");
    check_blocks(blocks, "farfield_jacobian");

    const DirectionInfo dir =
        direction_info(scenario.source_pose.position, scenario.dest_pose.position);
    const Vec3 delta = dir.unit_vector;
    const double lambda = scenario.channel.wavelength();
    const double wavenumber = two_pi / lambda;
    const std::complex<double> beta = scenario.channel.gain();

    const Mat3 q_src = rotation_matrix(scenario.source_pose.angles);
    const Mat3 q_dst = rotation_matrix(scenario.dest_pose.angles);
    const Mat3X s_src = q_src * scenario.source_array.local_coords();
    const Mat3X s_dst = q_dst * scenario.dest_array.local_coords();

    const CVecX a_src = steering_vector(scenario.source_array.local_coords(),
                                        scenario.source_pose.angles, delta, lambda);
    const CVecX a_dst = steering_vector(scenario.dest_array.local_coords(),
                                        scenario.dest_pose.angles, delta, lambda);

    const CVecX w = scenario.plan.weights(transmission_index);
    const std::complex<double> g = a_src.dot(w);
    const std::complex<double> bulk = std::polar(1.0, -wavenumber * dir.distance);
    const CVecX stripped = bulk * g * a_dst;  // mu / beta
    const CVecX mu = beta * stripped;

    // Jacobian of the unit direction with respect to the destination
    // position; the source position gets the negated matrix.
    const Mat3 dir_jac = (Mat3::Identity() - delta * delta.transpose()) / dir.distance;

    const std::array<Mat3, 3> dq_src = rotation_derivatives(scenario.source_pose.angles);
    const std::array<Mat3, 3> dq_dst = rotation_derivatives(scenario.dest_pose.angles);

    const std::vector<Eigen::Index> offsets = column_offsets(blocks);
    CMatX jac = CMatX::Zero(a_dst.size(), total_dimension(blocks));

    for (std::size_t i = 0; i < blocks.size(); ++i)
    {
        const Eigen::Index col = offsets[i];
        switch (blocks[i])
        {
        case ParamBlock::PosU:
        case ParamBlock::PosB:
        {
            const double sign = blocks[i] == ParamBlock::PosU ? 1.0 : -1.0;
            for (int k = 0; k < 3; ++k)
            {
                const Vec3 ddelta = sign * dir_jac.col(k); // d(delta)/d(nu_k)
                const double ddist = sign * delta(k);      // d(d)/d(nu_k)
                // Aperture-weighted source sum: a_src^H diag(S_src' ddelta) w.
                std::complex<double> h = 0.0;
                for (Eigen::Index b = 0; b < s_src.cols(); ++b)
                    h += std::conj(a_src(b)) * s_src.col(b).dot(ddelta) * w(b);
                for (Eigen::Index u = 0; u < a_dst.size(); ++u)
                {
                    const double du = s_dst.col(u).dot(ddelta) + ddist;
                    jac(u, col + k) =
                        -imag_unit * wavenumber * (du * mu(u) - beta * bulk * a_dst(u) * h);
                }
            }
            break;
        }
        case ParamBlock::OriB:
            for (int k = 0; k < 3; ++k)
            {
                const Mat3X ds = dq_src[k] * scenario.source_array.local_coords();
                std::complex<double> h = 0.0;
                for (Eigen::Index b = 0; b < s_src.cols(); ++b)
                    h += std::conj(a_src(b)) * (imag_unit * wavenumber * delta.dot(ds.col(b))) * w(b);
                jac.col(col + k) = beta * bulk * h * a_dst;
            }
            break;
        case ParamBlock::OriU:
            for (int k = 0; k < 3; ++k)
            {
                const Mat3X ds = dq_dst[k] * scenario.dest_array.local_coords();
                for (Eigen::Index u = 0; u < a_dst.size(); ++u)
                    jac(u, col + k) = -imag_unit * wavenumber * delta.dot(ds.col(u)) * mu(u);
            }
            break;
        case ParamBlock::GainR:
            jac.col(col) = stripped;
            break;
        case ParamBlock::GainI:
            jac.col(col) = imag_unit * stripped;
            break;
        }
    }
    return jac;
}

CMatX analytic_jacobian(const Scenario &scenario, std::span<const ParamBlock> blocks,
                        Eigen::Index transmission_index)
{
    return scenario.regime == Regime::NearField
               ? nearfield_jacobian(scenario, blocks, transmission_index)
               : farfield_jacobian(scenario, blocks, transmission_index);
}

JacobianStack jacobian_stack(const Scenario &scenario, std::span<const ParamBlock> blocks)
{
    JacobianStack stack;
    stack.blocks.assign(blocks.begin(), blocks.end());
    const Eigen::Index t_count = scenario.plan.num_transmissions();
    stack.per_transmission.reserve(static_cast<std::size_t>(t_count));
    for (Eigen::Index t = 0; t < t_count; ++t)
        stack.per_transmission.push_back(analytic_jacobian(scenario, blocks, t));
    return stack;
}

FdSteps default_fd_steps(const Scenario &scenario)
{
    FdSteps steps;
    const double d = (scenario.dest_pose.position - scenario.source_pose.position).norm();
    steps.position = 1e-7 * std::max(1.0, d);
    // Angle steps sit higher than the position steps: orientation columns
    // can be orders of magnitude smaller than the signal, and the total
    // propagation phase (hundreds of radians) sets the roundoff floor of
    // each evaluation. 1e-5 rad keeps that floor near 1e-8 relative while
    // the O(h^2) truncation stays below 1e-8 for decimeter apertures.
    steps.angle = 1e-5;
    return steps;
}

namespace {

double *scalar_slot(Scenario &s, ParamBlock block, int k)
{
    switch (block)
    {
    case ParamBlock::PosU:
        return &s.dest_pose.position(k);
    case ParamBlock::PosB:
        return &s.source_pose.position(k);
    case ParamBlock::OriU:
        return k == 0 ? &s.dest_pose.angles.alpha
                      : (k == 1 ? &s.dest_pose.angles.psi : &s.dest_pose.angles.phi);
    case ParamBlock::OriB:
        return k == 0 ? &s.source_pose.angles.alpha
                      : (k == 1 ? &s.source_pose.angles.psi : &s.source_pose.angles.phi);
    case ParamBlock::GainR:
        return &s.channel.gain_real;
    case ParamBlock::GainI:
        return &s.channel.gain_imag;
    }
    throw std::invalid_argument("scalar_slot: unknown block");
}

double step_for(ParamBlock block, const FdSteps &steps)
{
    switch (block)
    {
    case ParamBlock::PosU:
    case ParamBlock::PosB:
        return steps.position;
    case ParamBlock::OriU:
    case ParamBlock::OriB:
        return steps.angle;
    case ParamBlock::GainR:
    case ParamBlock::GainI:
        return steps.gain;
    }
    throw std::invalid_argument("step_for: unknown block");
}

} // namespace

CMatX finite_difference_jacobian(const MuEvaluator &mu, const Scenario &scenario,
                                 std::span<const ParamBlock> blocks,
                                 Eigen::Index transmission_index, const FdSteps &steps)
{
    check_blocks(blocks, "finite_difference_jacobian");
    if (!(steps.position > 0.0) || !(steps.angle > 0.0) || !(steps.gain > 0.0))
        throw std::invalid_argument("finite_difference_jacobian: steps must be positive");

    CMatX jac(scenario.dest_array.count(), total_dimension(blocks));
    Eigen::Index col = 0;
    for (ParamBlock block : blocks)
    {
        const double h = step_for(block, steps);
        for (int k = 0; k < block_dimension(block); ++k, ++col)
        {
            Scenario plus = scenario;
            Scenario minus = scenario;
            double *slot_plus = scalar_slot(plus, block, k);
            double *slot_minus = scalar_slot(minus, block, k);
            const double base = *slot_plus;
            *slot_plus = base + h;
            *slot_minus = base - h;
            if (*slot_plus == base || *slot_minus == base)
                throw std::invalid_argument(
                    "finite_difference_jacobian: step underflows against parameter magnitude");
            jac.col(col) =
                (mu(plus, transmission_index) - mu(minus, transmission_index)) / (2.0 * h);
        }
    }
    return jac;
}

} // namespace fimloc
