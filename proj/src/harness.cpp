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

#include "fimloc/harness.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <sstream>

namespace fimloc {

namespace {

constexpr std::array<ParamBlock, 6> all_blocks = {ParamBlock::PosU,  ParamBlock::PosB,
                                                  ParamBlock::OriU,  ParamBlock::OriB,
                                                  ParamBlock::GainR, ParamBlock::GainI};

struct TableRowSpec
{
    const char *label;
    std::vector<ParamBlock> location_blocks;
};

// Fixed row order: joint cases first, then single-parameter rows.
const std::vector<TableRowSpec> &table_rows()
{
    static const std::vector<TableRowSpec> rows = {
        {"Source position and source orientation", {ParamBlock::PosB, ParamBlock::OriB}},
        {"Source position and destination orientation", {ParamBlock::PosB, ParamBlock::OriU}},
        {"Destination position and source orientation", {ParamBlock::PosU, ParamBlock::OriB}},
        {"Source position", {ParamBlock::PosB}},
        {"Source orientation", {ParamBlock::OriB}},
        {"Destination position", {ParamBlock::PosU}},
        {"Destination orientation", {ParamBlock::OriU}},
    };
    return rows;
}

Verdict verdict_from_rank(Eigen::Index rank)
{
    switch (rank)
    {
    case 3:
        return Verdict::ThreeD;
    case 2:
        return Verdict::TwoD;
    case 1:
        return Verdict::OneD;
    default:
        return Verdict::None;
    }
}

void set_verdict(TableRow &row, ParamBlock block, Verdict verdict)
{
    switch (block)
    {
    case ParamBlock::PosU:
        row.pos_u = verdict;
        break;
    case ParamBlock::OriU:
        row.ori_u = verdict;
        break;
    case ParamBlock::PosB:
        row.pos_b = verdict;
        break;
    case ParamBlock::OriB:
        row.ori_b = verdict;
        break;
    default:
        throw std::invalid_argument("set_verdict: gains have no table column");
    }
}

double frobenius(const Eigen::MatrixXd &m) { return m.norm(); }

} // namespace

std::vector<ParamBlock> case_unknowns(CaseId case_id)
{
    std::vector<ParamBlock> blocks = case_interest(case_id);
    blocks.push_back(ParamBlock::GainR);
    blocks.push_back(ParamBlock::GainI);
    return blocks;
}

std::vector<ParamBlock> case_interest(CaseId case_id)
{
    switch (case_id)
    {
    case CaseId::I:
        return {ParamBlock::PosU, ParamBlock::OriU};
    case CaseId::II:
        return {ParamBlock::PosU, ParamBlock::OriB};
    case CaseId::III:
        return {ParamBlock::PosB, ParamBlock::OriU};
    case CaseId::IV:
        return {ParamBlock::PosB, ParamBlock::OriB};
    }
    throw std::invalid_argument("case_interest: unknown case");
}

Scenario build_scenario(const RunConfig &config)
{
    return build_scenario(config, config.regime, config.n_u, config.plan);
}

Scenario build_scenario(const RunConfig &config, Regime regime, Eigen::Index n_u, PlanKind plan)
{
    validate_config(config);
    const double lambda = config.wavelength();

    TransmitPlan transmit = plan == PlanKind::Identity
                                ? identity_plan(config.n_b, config.num_transmissions)
                                : dft_plan(config.n_b, config.n_d, config.num_transmissions);

    return Scenario{
        Pose{config.p_b, config.phi_b},
        upa_array(config.n_b, lambda),
        Pose{config.p_u, config.phi_u},
        upa_array(n_u, lambda),
        ChannelParams{config.beta_real, config.beta_imag, config.carrier_hz,
                      config.snr_linear()},
        std::move(transmit),
        regime,
    };
}

FisherReport run_case(const RunConfig &config)
{
    return run_case(config, config.regime, config.case_id, config.n_u, config.plan);
}

FisherReport run_case(const RunConfig &config, Regime regime, CaseId case_id, Eigen::Index n_u,
                      PlanKind plan)
{
    const Scenario scenario = build_scenario(config, regime, n_u, plan);
    const std::vector<ParamBlock> unknowns = case_unknowns(case_id);
    const std::vector<ParamBlock> interest = case_interest(case_id);

    FisherReport report;
    report.fim = assemble_fim(jacobian_stack(scenario, unknowns), config.snr_linear());
    report.efim = reduce_to_interest(report.fim, interest);
    report.ident = identifiability(report.efim);
    report.peb_m = peb(report.efim);
    report.oeb_rad = oeb(report.efim);
    return report;
}

std::vector<TableRow> build_table(const RunConfig &config)
{
    std::vector<TableRow> result;
    result.reserve(table_rows().size() * 2);

    // One 14-column master FIM per regime; every row's FIM is a principal
    // submatrix of it.
    std::array<Fim, 2> masters;
    const std::array<Regime, 2> regimes = {Regime::NearField, Regime::FarField};
    for (std::size_t r = 0; r < 2; ++r)
    {
        const Scenario scenario = build_scenario(config, regimes[r], config.n_u, config.plan);
        masters[r] = assemble_fim(jacobian_stack(scenario, all_blocks), config.snr_linear());
    }

    for (const TableRowSpec &spec : table_rows())
        for (std::size_t r = 0; r < 2; ++r)
        {
            std::vector<ParamBlock> unknowns = spec.location_blocks;
            unknowns.push_back(ParamBlock::GainR);
            unknowns.push_back(ParamBlock::GainI);
            const Fim fim = select_blocks(masters[r], unknowns);

            TableRow row;
            row.label = spec.label;
            row.regime = regimes[r];
            for (ParamBlock block : spec.location_blocks)
            {
                const std::array<ParamBlock, 1> single = {block};
                const Efim efim = reduce_to_interest(fim, single);
                set_verdict(row, block, verdict_from_rank(identifiability(efim).rank));
            }
            result.push_back(std::move(row));
        }
    return result;
}

AppendixReport appendix_check(const RunConfig &config)
{
    const Scenario scenario = build_scenario(config);
    const std::vector<ParamBlock> unknowns = {ParamBlock::OriB, ParamBlock::GainR,
                                              ParamBlock::GainI};
    const Fim fim = assemble_fim(jacobian_stack(scenario, unknowns), config.snr_linear());
    const std::array<ParamBlock, 1> interest = {ParamBlock::OriB};
    const Efim efim = reduce_to_interest(fim, interest);

    AppendixReport report;
    report.regime = config.regime;
    report.plan = config.plan;
    const BlockSpan &span = fim.span_of(ParamBlock::OriB);
    report.jphi_frobenius = frobenius(fim.matrix.block(span.offset, span.offset, span.dim, span.dim));
    report.efim_frobenius = frobenius(efim.matrix);
    report.applicable = config.regime == Regime::FarField && config.plan == PlanKind::Identity;
    report.passed = report.efim_frobenius <= 1e-8 * report.jphi_frobenius;
    // A collapsed EFIM is all roundoff; ranking it against its own largest
    // eigenvalue would count noise, so report 0 outright.
    report.efim_rank = report.passed ? 0 : identifiability(efim).rank;
    return report;
}

std::vector<SweepRecord> sweep_nu(const RunConfig &config)
{
    std::vector<SweepRecord> records;
    records.reserve(config.nu_sweep.size() * 2);
    for (Eigen::Index n_u : config.nu_sweep)
        for (Regime regime : {Regime::NearField, Regime::FarField})
        {
            const FisherReport report = run_case(config, regime, CaseId::II, n_u, config.plan);
            records.push_back(SweepRecord{n_u, regime, CaseId::II, report.peb_m, report.oeb_rad,
                                          report.ident.rank, report.ident.positive_definite});
        }
    return records;
}

DerivReport verify_derivatives(const RunConfig &config)
{
    DerivReport report;
    for (Regime regime : {Regime::NearField, Regime::FarField})
    {
        const Scenario scenario = build_scenario(config, regime, config.n_u, config.plan);
        const FdSteps steps = default_fd_steps(scenario);
        for (ParamBlock block : all_blocks)
        {
            const std::array<ParamBlock, 1> single = {block};
            double max_err = 0.0;
            for (Eigen::Index t = 0; t < scenario.plan.num_transmissions(); ++t)
            {
                const CMatX analytic = analytic_jacobian(scenario, single, t);
                const CMatX fd =
                    finite_difference_jacobian(received_mu, scenario, single, t, steps);
                const double den = std::max(analytic.norm(), fd.norm());
                const double err = den > 0.0 ? (analytic - fd).norm() / den : 0.0;
                max_err = std::max(max_err, err);
            }
            report.checks.push_back(DerivCheck{regime, block, max_err});
            report.worst = std::max(report.worst, max_err);
        }
    }
    return report;
}

std::string verdict_label(Verdict verdict)
{
    switch (verdict)
    {
    case Verdict::NA:
        return "NA";
    case Verdict::ThreeD:
        return "3D";
    case Verdict::TwoD:
        return "2D";
    case Verdict::OneD:
        return "1D";
    case Verdict::None:
        return "none";
    }
    return "?";
}

std::string format_double(double v)
{
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string sweep_csv(const RunConfig &config, const std::vector<SweepRecord> &records)
{
    const std::string hash = config_hash(config);
    std::ostringstream out;
    out << "n_u,regime,case,peb_m,oeb_rad,efim_rank,pd,config_hash\n";
    for (const SweepRecord &rec : records)
        out << rec.n_u << ',' << regime_label(rec.regime) << ',' << case_label(rec.case_id) << ','
            << format_double(rec.peb_m) << ',' << format_double(rec.oeb_rad) << ','
            << rec.efim_rank << ',' << (rec.pd ? "true" : "false") << ',' << hash << '\n';
    return out.str();
}

std::string table_json(const RunConfig &config, const std::vector<TableRow> &rows)
{
    nlohmann::ordered_json doc;
    doc["config_hash"] = config_hash(config);
    doc["n_u"] = config.n_u;
    doc["plan"] = plan_label(config.plan);
    doc["rows"] = nlohmann::ordered_json::array();
    for (const TableRow &row : rows)
    {
        nlohmann::ordered_json j;
        j["unknown_parameters"] = row.label;
        j["regime"] = regime_label(row.regime);
        j["p_u"] = verdict_label(row.pos_u);
        j["phi_u"] = verdict_label(row.ori_u);
        j["p_b"] = verdict_label(row.pos_b);
        j["phi_b"] = verdict_label(row.ori_b);
        doc["rows"].push_back(std::move(j));
    }
    return doc.dump(2) + "\n";
}

std::string table_text(const std::vector<TableRow> &rows)
{
    std::ostringstream out;
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%-46s %-6s %-5s %-6s %-5s %-6s\n", "Unknown parameters",
                  "regime", "p_U", "Phi_U", "p_B", "Phi_B");
    out << buf;
    for (const TableRow &row : rows)
    {
        std::snprintf(buf, sizeof(buf), "%-46s %-6s %-5s %-6s %-5s %-6s\n", row.label.c_str(),
                      regime_label(row.regime).c_str(), verdict_label(row.pos_u).c_str(),
                      verdict_label(row.ori_u).c_str(), verdict_label(row.pos_b).c_str(),
                      verdict_label(row.ori_b).c_str());
        out << buf;
    }
    return out.str();
}

std::string info_text(const RunConfig &config)
{
    const double lambda = config.wavelength();
    const ArrayGeometry source = upa_array(config.n_b, lambda);
    const ArrayGeometry dest = upa_array(config.n_u, lambda);
    const double diameter = std::max(array_diameter(source), array_diameter(dest));
    const double d_f = diameter > 0.0 ? fraunhofer_distance(diameter, lambda) : 0.0;
    const DirectionInfo dir = direction_info(config.p_b, config.p_u);

    std::ostringstream out;
    out << "config_hash        = " << config_hash(config) << "\n";
    out << "carrier_hz         = " << format_double(config.carrier_hz) << "\n";
    out << "wavelength_m       = " << format_double(lambda) << "\n";
    out << "source_elements    = " << config.n_b << "\n";
    out << "dest_elements      = " << config.n_u << "\n";
    out << "max_diameter_m     = " << format_double(diameter) << "\n";
    out << "fraunhofer_m       = " << format_double(d_f) << "\n";
    out << "link_distance_m    = " << format_double(dir.distance) << "\n";
    out << "boundary_regime    = " << (dir.distance < d_f ? "near" : "far") << "\n";
    out << "configured_regime  = " << regime_label(config.regime) << "\n";
    out << "configured_plan    = " << plan_label(config.plan) << "\n";
    out << "configured_case    = " << case_label(config.case_id) << "\n";
    return out.str();
}

} // namespace fimloc
