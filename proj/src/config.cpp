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

#include "fimloc/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace fimloc {

namespace {

std::string trim(const std::string &s)
{
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos)
        return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_commas(const std::string &s)
{
    std::vector<std::string> parts;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ','))
        parts.push_back(trim(item));
    return parts;
}

double parse_double(const std::string &key, const std::string &value)
{
    try
    {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size())
            throw std::invalid_argument("trailing characters");
        return v;
    }
    catch (const std::exception &)
    {
        throw config_error("config key '" + key + "': expected a number, got '" + value + "'");
    }
}

Eigen::Index parse_count(const std::string &key, const std::string &value)
{
    try
    {
        std::size_t pos = 0;
        const long long v = std::stoll(value, &pos);
        if (pos != value.size())
            throw std::invalid_argument("trailing characters");
        return static_cast<Eigen::Index>(v);
    }
    catch (const std::exception &)
    {
        throw config_error("config key '" + key + "': expected an integer, got '" + value + "'");
    }
}

Vec3 parse_triple(const std::string &key, const std::string &value)
{
    const std::vector<std::string> parts = split_commas(value);
    if (parts.size() != 3)
        throw config_error("config key '" + key + "': expected three comma-separated values");
    return Vec3(parse_double(key, parts[0]), parse_double(key, parts[1]),
                parse_double(key, parts[2]));
}

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

double RunConfig::snr_linear() const { return std::pow(10.0, snr_db / 10.0); }

void validate_config(const RunConfig &config)
{
    const auto require = [](bool ok, const std::string &msg) {
        if (!ok)
            throw config_error("config: " + msg);
    };

    require(config.p_b.allFinite(), "p_b must be finite");
    require(config.p_u.allFinite(), "p_u must be finite");
    require(std::isfinite(config.phi_b.alpha) && std::isfinite(config.phi_b.psi) &&
                std::isfinite(config.phi_b.phi),
            "phi_b must be finite");
    require(std::isfinite(config.phi_u.alpha) && std::isfinite(config.phi_u.psi) &&
                std::isfinite(config.phi_u.phi),
            "phi_u must be finite");
    require((config.p_b - config.p_u).squaredNorm() != 0.0, "p_b and p_u must be distinct");
    require(config.n_b >= 1, "n_b must be >= 1");
    require(config.n_u >= 1, "n_u must be >= 1");
    require(config.n_d >= 1 && config.n_d <= config.n_b, "n_d must satisfy 1 <= n_d <= n_b");
    require(config.num_transmissions >= 1, "num_transmissions must be >= 1");
    require(std::isfinite(config.carrier_hz) && config.carrier_hz > 0.0,
            "carrier_hz must be positive");
    require(std::isfinite(config.snr_db), "snr_db must be finite");
    require(std::isfinite(config.beta_real) && std::isfinite(config.beta_imag),
            "beta must be finite");
    require(!config.nu_sweep.empty(), "nu_sweep must not be empty");
    Eigen::Index prev = 0;
    for (Eigen::Index n : config.nu_sweep)
    {
        require(n >= 1, "nu_sweep entries must be >= 1");
        require(n > prev, "nu_sweep must be strictly increasing");
        prev = n;
    }
}

RunConfig parse_config_text(const std::string &text)
{
    RunConfig config;
    std::set<std::string> seen;

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw))
    {
        ++line_no;
        const auto hash = raw.find('#');
        if (hash != std::string::npos)
            raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty())
            continue;

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("config line " + std::to_string(line_no) +
                               ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw config_error("config line " + std::to_string(line_no) +
                               ": expected 'key = value'");
        if (!seen.insert(key).second)
            throw config_error("config key '" + key + "': duplicate");

        if (key == "p_b")
            config.p_b = parse_triple(key, value);
        else if (key == "phi_b")
        {
            const Vec3 v = parse_triple(key, value);
            config.phi_b = {v(0), v(1), v(2)};
        }
        else if (key == "p_u")
            config.p_u = parse_triple(key, value);
        else if (key == "phi_u")
        {
            const Vec3 v = parse_triple(key, value);
            config.phi_u = {v(0), v(1), v(2)};
        }
        else if (key == "n_b")
            config.n_b = parse_count(key, value);
        else if (key == "n_u")
            config.n_u = parse_count(key, value);
        else if (key == "n_d")
            config.n_d = parse_count(key, value);
        else if (key == "num_transmissions")
            config.num_transmissions = parse_count(key, value);
        else if (key == "carrier_hz")
            config.carrier_hz = parse_double(key, value);
        else if (key == "snr_db")
            config.snr_db = parse_double(key, value);
        else if (key == "beta_real")
            config.beta_real = parse_double(key, value);
        else if (key == "beta_imag")
            config.beta_imag = parse_double(key, value);
        else if (key == "regime")
        {
            if (value == "near")
                config.regime = Regime::NearField;
            else if (value == "far")
                config.regime = Regime::FarField;
            else
                throw config_error("config key 'regime': expected 'near' or 'far', got '" +
                                   value + "'");
        }
        else if (key == "case")
        {
            if (value == "I")
                config.case_id = CaseId::I;
            else if (value == "II")
                config.case_id = CaseId::II;
            else if (value == "III")
                config.case_id = CaseId::III;
            else if (value == "IV")
                config.case_id = CaseId::IV;
            else
                throw config_error("config key 'case': expected I, II, III or IV, got '" +
                                   value + "'");
        }
        else if (key == "plan")
        {
            if (value == "dft")
                config.plan = PlanKind::Dft;
            else if (value == "identity")
                config.plan = PlanKind::Identity;
            else
                throw config_error("config key 'plan': expected 'dft' or 'identity', got '" +
                                   value + "'");
        }
        else if (key == "nu_sweep")
        {
            config.nu_sweep.clear();
            for (const std::string &part : split_commas(value))
                config.nu_sweep.push_back(parse_count(key, part));
        }
        else
            throw config_error("config key '" + key + "': unknown key");
    }

    validate_config(config);
    return config;
}

RunConfig parse_config_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw config_error("config: cannot open file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::string canonical_config(const RunConfig &config)
{
    std::ostringstream out;
    const auto triple = [](const Vec3 &v) {
        return fmt(v(0)) + ", " + fmt(v(1)) + ", " + fmt(v(2));
    };
    out << "p_b = " << triple(config.p_b) << "\n";
    out << "phi_b = " << fmt(config.phi_b.alpha) << ", " << fmt(config.phi_b.psi) << ", "
        << fmt(config.phi_b.phi) << "\n";
    out << "p_u = " << triple(config.p_u) << "\n";
    out << "phi_u = " << fmt(config.phi_u.alpha) << ", " << fmt(config.phi_u.psi) << ", "
        << fmt(config.phi_u.phi) << "\n";
    out << "n_b = " << config.n_b << "\n";
    out << "n_u = " << config.n_u << "\n";
    out << "n_d = " << config.n_d << "\n";
    out << "num_transmissions = " << config.num_transmissions << "\n";
    out << "carrier_hz = " << fmt(config.carrier_hz) << "\n";
    out << "snr_db = " << fmt(config.snr_db) << "\n";
    out << "beta_real = " << fmt(config.beta_real) << "\n";
    out << "beta_imag = " << fmt(config.beta_imag) << "\n";
    out << "regime = " << regime_label(config.regime) << "\n";
    out << "case = " << case_label(config.case_id) << "\n";
    out << "plan = " << plan_label(config.plan) << "\n";
    out << "nu_sweep = ";
    for (std::size_t i = 0; i < config.nu_sweep.size(); ++i)
        out << (i == 0 ? "" : ", ") << config.nu_sweep[i];
    out << "\n";
    return out.str();
}

std::string config_hash(const RunConfig &config)
{
    // FNV-1a, 64-bit.
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : canonical_config(config))
    {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string regime_label(Regime regime)
{
    return regime == Regime::NearField ? "near" : "far";
}

std::string case_label(CaseId case_id)
{
    switch (case_id)
    {
    case CaseId::I:
        return "I";
    case CaseId::II:
        return "II";
    case CaseId::III:
        return "III";
    case CaseId::IV:
        return "IV";
    }
    return "?";
}

std::string plan_label(PlanKind plan)
{
    return plan == PlanKind::Dft ? "dft" : "identity";
}

} // namespace fimloc
