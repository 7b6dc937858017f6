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

#include "fimloc/fisher.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fimloc {

namespace {

const BlockSpan *find_span(const std::vector<BlockSpan> &layout, ParamBlock block)
{
    for (const BlockSpan &s : layout)
        if (s.block == block)
            return &s;
    return nullptr;
}

std::vector<BlockSpan> build_layout(std::span<const ParamBlock> blocks)
{
    std::vector<BlockSpan> layout;
    layout.reserve(blocks.size());
    Eigen::Index off = 0;
    for (ParamBlock b : blocks)
    {
        const Eigen::Index dim = block_dimension(b);
        layout.push_back({b, off, dim});
        off += dim;
    }
    return layout;
}

std::vector<Eigen::Index> layout_indices(const std::vector<BlockSpan> &layout,
                                         std::span<const ParamBlock> blocks, const char *where)
{
    std::vector<Eigen::Index> idx;
    for (ParamBlock b : blocks)
    {
        const BlockSpan *s = find_span(layout, b);
        if (s == nullptr)
            throw std::invalid_argument(std::string(where) + ": block " + block_name(b) +
                                        " is not part of this matrix");
        for (Eigen::Index k = 0; k < s->dim; ++k)
            idx.push_back(s->offset + k);
    }
    return idx;
}

Eigen::MatrixXd submatrix(const Eigen::MatrixXd &m, const std::vector<Eigen::Index> &rows,
                          const std::vector<Eigen::Index> &cols)
{
    Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()),
                        static_cast<Eigen::Index>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(rows[i], cols[j]);
    return out;
}

double error_bound_for(const Efim &efim, ParamBlock primary, ParamBlock alternate,
                       const char *where)
{
    const BlockSpan *s = find_span(efim.layout, primary);
    if (s == nullptr)
        s = find_span(efim.layout, alternate);
    if (s == nullptr)
        throw std::invalid_argument(std::string(where) + ": EFIM has no matching block");

    const IdentReport report = identifiability(efim);
    if (!report.positive_definite)
        return std::numeric_limits<double>::infinity();

    const Eigen::MatrixXd inv = efim.matrix.ldlt().solve(
        Eigen::MatrixXd::Identity(efim.matrix.rows(), efim.matrix.cols()));
    return std::sqrt(inv.block(s->offset, s->offset, s->dim, s->dim).trace());
}

} // namespace

const BlockSpan &Fim::span_of(ParamBlock block) const
{
    const BlockSpan *s = find_span(layout, block);
    if (s == nullptr)
        throw std::invalid_argument("Fim::span_of: block " + block_name(block) + " not present");
    return *s;
}

bool Fim::has_block(ParamBlock block) const { return find_span(layout, block) != nullptr; }

const BlockSpan &Efim::span_of(ParamBlock block) const
{
    const BlockSpan *s = find_span(layout, block);
    if (s == nullptr)
        throw std::invalid_argument("Efim::span_of: block " + block_name(block) + " not present");
    return *s;
}

bool Efim::has_block(ParamBlock block) const { return find_span(layout, block) != nullptr; }

Fim assemble_fim(const JacobianStack &stack, double snr_linear)
{
    if (stack.per_transmission.empty())
        throw std::invalid_argument("assemble_fim: stack is empty");
    if (!(snr_linear > 0.0))
        throw std::invalid_argument("assemble_fim: snr_linear must be positive");

    const Eigen::Index k = stack.total_dim();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(k, k);
    for (const CMatX &d : stack.per_transmission)
    {
        if (d.cols() != k)
            throw std::invalid_argument("assemble_fim: inconsistent Jacobian shapes in stack");
        m += (d.adjoint() * d).real();
    }
    m *= 2.0 * snr_linear;
    m = ((m + m.transpose()) / 2.0).eval();

    return Fim{std::move(m), build_layout(std::span<const ParamBlock>(stack.blocks))};
}

Fim select_blocks(const Fim &fim, std::span<const ParamBlock> blocks)
{
    const std::vector<Eigen::Index> idx = layout_indices(fim.layout, blocks, "select_blocks");
    return Fim{submatrix(fim.matrix, idx, idx), build_layout(blocks)};
}

Efim reduce_to_interest(const Fim &fim, std::span<const ParamBlock> interest)
{
    if (interest.empty())
        throw std::invalid_argument("reduce_to_interest: interest list is empty");

    std::vector<ParamBlock> nuisance;
    for (const BlockSpan &s : fim.layout)
        if (std::find(interest.begin(), interest.end(), s.block) == interest.end())
            nuisance.push_back(s.block);

    const std::vector<Eigen::Index> ii = layout_indices(fim.layout, interest, "reduce_to_interest");
    const std::vector<Eigen::Index> nn =
        layout_indices(fim.layout, std::span<const ParamBlock>(nuisance), "reduce_to_interest");

    Efim out;
    out.layout = build_layout(interest);
    out.nuisance_dims = static_cast<Eigen::Index>(nn.size());

    const Eigen::MatrixXd j11 = submatrix(fim.matrix, ii, ii);
    if (nn.empty())
    {
        out.matrix = j11;
        return out;
    }

    const Eigen::MatrixXd j12 = submatrix(fim.matrix, ii, nn);
    const Eigen::MatrixXd j22 = submatrix(fim.matrix, nn, nn);

    // Invert the nuisance block through its eigendecomposition; directions
    // below the cutoff carry no information and are dropped, which is the
    // exact limit whenever the cross-information into them vanishes too.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(j22);
    const Eigen::VectorXd &vals = eig.eigenvalues();
    const double vmax = std::max(vals.maxCoeff(), 0.0);
    const double cutoff = 1e-12 * vmax;

    Eigen::VectorXd inv_vals(vals.size());
    for (Eigen::Index i = 0; i < vals.size(); ++i)
    {
        if (vals(i) > cutoff && vals(i) > 0.0)
        {
            inv_vals(i) = 1.0 / vals(i);
        }
        else
        {
            inv_vals(i) = 0.0;
            out.nuisance_singular = true;
        }
    }
    const Eigen::MatrixXd j22_inv =
        eig.eigenvectors() * inv_vals.asDiagonal() * eig.eigenvectors().transpose();

    Eigen::MatrixXd schur = j11 - j12 * j22_inv * j12.transpose();
    out.matrix = ((schur + schur.transpose()) / 2.0).eval();
    return out;
}

IdentReport identifiability(const Eigen::MatrixXd &matrix, double rel_threshold)
{
    if (matrix.rows() != matrix.cols())
        throw std::invalid_argument("identifiability: matrix must be square");

    IdentReport report;
    report.rel_threshold = rel_threshold;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(matrix);
    report.eigenvalues = eig.eigenvalues(); // ascending

    const double lmax = report.eigenvalues.size() > 0 ? report.eigenvalues.maxCoeff() : 0.0;
    if (lmax > 0.0)
    {
        const double cut = rel_threshold * lmax;
        for (Eigen::Index i = 0; i < report.eigenvalues.size(); ++i)
            if (report.eigenvalues(i) > cut)
                ++report.rank;
    }
    report.positive_definite = report.rank == matrix.rows() && matrix.rows() > 0;
    return report;
}

IdentReport identifiability(const Efim &efim, double rel_threshold)
{
    return identifiability(efim.matrix, rel_threshold);
}

double peb(const Efim &efim)
{
    return error_bound_for(efim, ParamBlock::PosU, ParamBlock::PosB, "peb");
}

double oeb(const Efim &efim)
{
    return error_bound_for(efim, ParamBlock::OriU, ParamBlock::OriB, "oeb");
}

} // namespace fimloc
