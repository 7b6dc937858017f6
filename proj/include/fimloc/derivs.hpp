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

#ifndef FIMLOC_DERIVS_HPP
#define FIMLOC_DERIVS_HPP

#include "fimloc/signal.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace fimloc {

/// One block of unknown parameters. Positions and orientations are
/// 3-dimensional; each gain part is a single real scalar. Blocks always
/// appear in the fixed global order PosU, PosB, OriU, OriB, GainR, GainI;
/// parameterizations select an order-preserving subset.
enum class ParamBlock
{
    PosU,  // destination position
    PosB,  // source position
    OriU,  // destination orientation
    OriB,  // source orientation
    GainR, // Re(beta)
    GainI, // Im(beta)
};

Eigen::Index block_dimension(ParamBlock block);
std::string block_name(ParamBlock block);

/// Total unknown dimension of an ordered block list.
Eigen::Index total_dimension(std::span<const ParamBlock> blocks);

/// Per-transmission Jacobians of the noise-free signal with respect to an
/// ordered block list: T matrices, each n_dest x K, column-blocked in the
/// order the blocks were given.
struct JacobianStack
{
    std::vector<CMatX> per_transmission;
    std::vector<ParamBlock> blocks;

    Eigen::Index total_dim() const
    {
        return total_dimension(std::span<const ParamBlock>(blocks));
    }
};

/// Analytical Jacobian of nearfield_mu at one transmission. Position and
/// orientation columns carry the factor -j*(2*pi/lambda)*beta times the
/// per-antenna-pair distance gradient, summed over transmit elements; the
/// gain columns are the beta-stripped signal and j times it.
CMatX nearfield_jacobian(const Scenario &scenario, std::span<const ParamBlock> blocks,
                         Eigen::Index transmission_index);

/// Analytical Jacobian of farfield_mu at one transmission. Positions act
/// through the centroid distance and the direction-vector Jacobian
/// (I - delta*delta')/d; orientations act through the per-element phase
/// slopes of the rotated apertures projected on the link direction.
CMatX farfield_jacobian(const Scenario &scenario, std::span<const ParamBlock> blocks,
                        Eigen::Index transmission_index);

/// Dispatch on scenario.regime.
CMatX analytic_jacobian(const Scenario &scenario, std::span<const ParamBlock> blocks,
                        Eigen::Index transmission_index);

/// Analytic Jacobians for every transmission in the plan.
JacobianStack jacobian_stack(const Scenario &scenario, std::span<const ParamBlock> blocks);

/// Central-difference step sizes per block family.
struct FdSteps
{
    double position = 1e-7; // meters, scaled by max(1, d) at construction
    double angle = 1e-5;    // radians
    double gain = 1e-7;
};

/// Steps tuned for phase functions at centimeter wavelengths:
/// positions 1e-7 * max(1, centroid distance), angles 1e-5, gains 1e-7.
FdSteps default_fd_steps(const Scenario &scenario);

using MuEvaluator = std::function<CVecX(const Scenario &, Eigen::Index)>;

/// Central finite differences (mu(x+h) - mu(x-h)) / (2h) for every scalar
/// unknown, rebuilding the scenario per perturbation so angles re-enter
/// through the rotation matrix and positions through the global element
/// placement. Verification oracle for the analytic Jacobians; kept
/// independent of them.
CMatX finite_difference_jacobian(const MuEvaluator &mu, const Scenario &scenario,
                                 std::span<const ParamBlock> blocks,
                                 Eigen::Index transmission_index, const FdSteps &steps);

} // namespace fimloc

#endif // FIMLOC_DERIVS_HPP
