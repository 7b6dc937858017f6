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

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config_error = 2;
constexpr int exit_degenerate_geometry = 3;
constexpr int exit_check_failed = 4;

fimloc::RunConfig load_config(const std::string &path)
{
    if (path.empty())
        return fimloc::RunConfig{}; // built-in reference scenario
    return fimloc::parse_config_file(path);
}

void write_file(const std::string &path, const std::string &content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open output file '" + path + "'");
    out << content;
}

int cmd_info(const std::string &config_path)
{
    const fimloc::RunConfig config = load_config(config_path);
    std::cout << fimloc::info_text(config);
    return exit_ok;
}

int cmd_table(const std::string &config_path, const std::string &out_path)
{
    const fimloc::RunConfig config = load_config(config_path);
    const std::vector<fimloc::TableRow> rows = fimloc::build_table(config);
    std::cout << fimloc::table_text(rows);
    if (!out_path.empty())
        write_file(out_path, fimloc::table_json(config, rows));
    return exit_ok;
}

int cmd_sweep(const std::string &config_path, const std::string &out_path)
{
    const fimloc::RunConfig config = load_config(config_path);
    const std::vector<fimloc::SweepRecord> records = fimloc::sweep_nu(config);
    const std::string csv = fimloc::sweep_csv(config, records);
    write_file(out_path, csv);
    std::cout << "wrote " << records.size() << " sweep records to " << out_path << "\n";
    return exit_ok;
}

int cmd_verify(const std::string &config_path)
{
    const fimloc::RunConfig config = load_config(config_path);
    const fimloc::DerivReport report = fimloc::verify_derivatives(config);
    for (const fimloc::DerivCheck &check : report.checks)
        std::cout << fimloc::regime_label(check.regime) << ' ' << fimloc::block_name(check.block)
                  << " max_rel_error = " << fimloc::format_double(check.max_rel_error) << "\n";
    const bool ok = report.worst < 1e-6;
    std::cout << "worst = " << fimloc::format_double(report.worst) << " -> "
              << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? exit_ok : exit_check_failed;
}

int cmd_appendix(const std::string &config_path)
{
    const fimloc::RunConfig config = load_config(config_path);
    const fimloc::AppendixReport report = fimloc::appendix_check(config);
    std::cout << "regime          = " << fimloc::regime_label(report.regime) << "\n";
    std::cout << "plan            = " << fimloc::plan_label(report.plan) << "\n";
    std::cout << "jphi_frobenius  = " << fimloc::format_double(report.jphi_frobenius) << "\n";
    std::cout << "efim_frobenius  = " << fimloc::format_double(report.efim_frobenius) << "\n";
    std::cout << "efim_rank       = " << report.efim_rank << "\n";
    std::cout << "zero_efim       = " << (report.passed ? "true" : "false") << "\n";
    std::cout << "applicable      = " << (report.applicable ? "true" : "false") << "\n";
    if (report.applicable && !report.passed)
        return exit_check_failed;
    return exit_ok;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Fisher information bounds for single-link position and orientation estimation"};
    app.require_subcommand(1);

    std::string config_path, out_path;

    CLI::App *info = app.add_subcommand("info", "Fraunhofer boundary and regime classification");
    info->add_option("--config", config_path, "config file (key = value)");

    CLI::App *table = app.add_subcommand("table", "estimability table under both models");
    table->add_option("--config", config_path, "config file (key = value)")->required();
    table->add_option("--out", out_path, "write the table as JSON");

    CLI::App *sweep = app.add_subcommand("sweep", "PEB/OEB vs destination array size (CSV)");
    sweep->add_option("--config", config_path, "config file (key = value)")->required();
    sweep->add_option("--out", out_path, "output CSV path")->required();

    CLI::App *verify = app.add_subcommand("verify", "finite-difference check of the Jacobians");
    verify->add_option("--config", config_path, "config file (key = value)")->required();

    CLI::App *appendix =
        app.add_subcommand("appendix", "source-orientation/gain joint estimability check");
    appendix->add_option("--config", config_path, "config file (key = value)")->required();

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (info->parsed())
            return cmd_info(config_path);
        if (table->parsed())
            return cmd_table(config_path, out_path);
        if (sweep->parsed())
            return cmd_sweep(config_path, out_path);
        if (verify->parsed())
            return cmd_verify(config_path);
        if (appendix->parsed())
            return cmd_appendix(config_path);
    }
    catch (const fimloc::config_error &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config_error;
    }
    catch (const fimloc::degenerate_geometry_error &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_degenerate_geometry;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_ok;
}
