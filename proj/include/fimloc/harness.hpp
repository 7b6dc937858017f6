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

#ifndef FIMLOC_HARNESS_HPP
#define FIMLOC_HARNESS_HPP

#include "fimloc/config.hpp"
#include "fimloc/fisher.hpp"

namespace fimloc {

/// Unknown blocks of a parameterization case, gains last (nuisance).
std::vector<ParamBlock> case_unknowns(CaseId case_id);

/// The location blocks of a case (everything except the gains).
std::vector<ParamBlock> case_interest(CaseId case_id);

/// Scenario from a config, with the configured regime, plan and
/// destination size.
Scenario build_scenario(const RunConfig &config);

/// Same, overriding regime, destination element count and plan.
Scenario build_scenario(const RunConfig &config, Regime regime, Eigen::Index n_u,
                        PlanKind plan);

/// Everything run_case produces: the assembled FIM over the case unknowns,
/// the EFIM of the location parameters with the gains removed, its eigen
/// diagnostics, and the two error bounds (infinite when the corresponding
/// block is not fully identifiable).
struct FisherReport
{
    Fim fim;
    Efim efim;
    IdentReport ident;
    double peb_m = 0.0;
    double oeb_rad = 0.0;
};

FisherReport run_case(const RunConfig &config);
FisherReport run_case(const RunConfig &config, Regime regime, CaseId case_id,
                      Eigen::Index n_u, PlanKind plan);

/// How many dimensions of a 3-dimensional parameter are estimable.
enum class Verdict
{
    NA,     // parameter known in this row
    ThreeD,
    TwoD,
    OneD,
    None,
};

std::string verdict_label(Verdict verdict);

/// One row of the estimability table for one propagation model: the
/// per-parameter verdicts under the row's unknown set. Verdicts come from
/// the rank of each parameter's EFIM with every other unknown of the row
/// (including the gains) treated as nuisance.
struct TableRow
{
    std::string label;
    Regime regime = Regime::NearField;
    Verdict pos_u = Verdict::NA;
    Verdict ori_u = Verdict::NA;
    Verdict pos_b = Verdict::NA;
    Verdict ori_b = Verdict::NA;
};

/// The seven unknown-parameter rows under both propagation models
/// (near-field first for each row). The configured case is ignored; the
/// configured plan, destination size and channel are used as-is.
std::vector<TableRow> build_table(const RunConfig &config);

/// Joint estimability of the source orientation and the complex gain.
/// Under the planar model with identity precoding the EFIM of the source
/// orientation collapses to zero; `passed` reports that collapse,
/// `applicable` whether the config is that regime/plan combination.
struct AppendixReport
{
    Regime regime = Regime::FarField;
    PlanKind plan = PlanKind::Identity;
    double jphi_frobenius = 0.0; // Frobenius norm of the orientation block of the FIM
    double efim_frobenius = 0.0;
    Eigen::Index efim_rank = 0;
    bool applicable = false;
    bool passed = false;
};

AppendixReport appendix_check(const RunConfig &config);

/// One sweep point: bounds for the destination-position/source-orientation
/// case at a given destination array size under one propagation model.
struct SweepRecord
{
    Eigen::Index n_u = 0;
    Regime regime = Regime::NearField;
    CaseId case_id = CaseId::II;
    double peb_m = 0.0;
    double oeb_rad = 0.0;
    Eigen::Index efim_rank = 0;
    bool pd = false;
};

/// Bounds over config.nu_sweep for both propagation models, sorted by
/// (n_u, regime).
std::vector<SweepRecord> sweep_nu(const RunConfig &config);

/// Worst relative Frobenius deviation between the analytic and the
/// central-finite-difference Jacobian, per regime and block, across all
/// transmissions. Zero-against-zero comparisons report 0.
struct DerivCheck
{
    Regime regime = Regime::NearField;
    ParamBlock block = ParamBlock::PosU;
    double max_rel_error = 0.0;
};

struct DerivReport
{
    std::vector<DerivCheck> checks;
    double worst = 0.0;
};

DerivReport verify_derivatives(const RunConfig &config);

/// Serializers. All output is deterministic: fixed key order, fixed
/// formatting, unbounded values as the literal `inf`.
std::string format_double(double v);
std::string sweep_csv(const RunConfig &config, const std::vector<SweepRecord> &records);
std::string table_json(const RunConfig &config, const std::vector<TableRow> &rows);
std::string table_text(const std::vector<TableRow> &rows);
std::string info_text(const RunConfig &config);

} // namespace fimloc

#endif // FIMLOC_HARNESS_HPP
