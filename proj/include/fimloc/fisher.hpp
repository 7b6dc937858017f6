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

#ifndef FIMLOC_FISHER_HPP
#define FIMLOC_FISHER_HPP

#include "fimloc/derivs.hpp"

namespace fimloc {

/// Location of one parameter block inside a stacked matrix.
struct BlockSpan
{
    ParamBlock block;
    Eigen::Index offset;
    Eigen::Index dim;
};

/// Fisher information matrix over an ordered set of parameter blocks,
/// symmetric positive semidefinite up to roundoff.
struct Fim
{
    Eigen::MatrixXd matrix;
    std::vector<BlockSpan> layout;

    const BlockSpan &span_of(ParamBlock block) const;
    bool has_block(ParamBlock block) const;
};

/// Equivalent FIM of the parameters of interest after removing the
/// nuisance blocks via the Schur complement. When the nuisance sub-block
/// is numerically singular the reduction falls back to an eigendecomposition
/// pseudo-inverse and nuisance_singular is set; the caller decides whether
/// that regime is meaningful for its question.
struct Efim
{
    Eigen::MatrixXd matrix;
    std::vector<BlockSpan> layout; // interest blocks only
    Eigen::Index nuisance_dims = 0;
    bool nuisance_singular = false;

    const BlockSpan &span_of(ParamBlock block) const;
    bool has_block(ParamBlock block) const;
};

/// Eigen-diagnostics of a symmetric information matrix. A direction counts
/// toward the rank when its eigenvalue exceeds rel_threshold times the
/// largest eigenvalue; positive definiteness means full rank under that
/// cutoff.
struct IdentReport
{
    Eigen::VectorXd eigenvalues; // ascending
    Eigen::Index rank = 0;
    bool positive_definite = false;
    double rel_threshold = 0.0;
};

inline constexpr double default_rank_threshold = 1e-9;

/// J = 2 * snr * sum_t Re(D_t^H D_t), symmetrized exactly.
Fim assemble_fim(const JacobianStack &stack, double snr_linear);

/// Principal submatrix of a FIM for an ordered subset of its blocks;
/// equal to the FIM assembled from the reduced Jacobian stack.
Fim select_blocks(const Fim &fim, std::span<const ParamBlock> blocks);

/// Schur complement removing every block not listed as interest.
Efim reduce_to_interest(const Fim &fim, std::span<const ParamBlock> interest);

IdentReport identifiability(const Eigen::MatrixXd &matrix,
                            double rel_threshold = default_rank_threshold);
IdentReport identifiability(const Efim &efim,
                            double rel_threshold = default_rank_threshold);

/// Position error bound: sqrt of the trace of the position sub-block of
/// the inverse EFIM, in meters. Returns +infinity when the EFIM is not
/// positive definite (the position is not fully identifiable).
double peb(const Efim &efim);

/// Orientation error bound in radians; same contract as peb for the
/// orientation sub-block.
double oeb(const Efim &efim);

} // namespace fimloc

#endif // FIMLOC_FISHER_HPP
