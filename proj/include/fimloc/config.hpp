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

#ifndef FIMLOC_CONFIG_HPP
#define FIMLOC_CONFIG_HPP

#include "fimloc/signal.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace fimloc {

/// Thrown on malformed or invalid run configurations; the message names
/// the offending key.
class config_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Which parameter combination is unknown. Cases pair one position with
/// one orientation; the complex gain is always an unknown nuisance.
enum class CaseId
{
    I,   // destination position + destination orientation
    II,  // destination position + source orientation
    III, // source position + destination orientation
    IV,  // source position + source orientation
};

enum class PlanKind
{
    Dft,
    Identity,
};

/// Flat key-value run configuration. Defaults describe the reference
/// scenario used throughout the tests; a config file overrides individual
/// keys. Unknown keys are errors.
struct RunConfig
{
    Vec3 p_b{1.5, 1.0, 4.0};
    EulerAngles phi_b{1.1, 2.2, 0.7};
    Vec3 p_u{2.6, 2.15, 5.1};
    EulerAngles phi_u{0.1, 0.2, 0.1};

    Eigen::Index n_b = 100;
    Eigen::Index n_u = 4;
    Eigen::Index n_d = 16;
    Eigen::Index num_transmissions = 20;

    // 10 GHz keeps the reference geometry inside the Fraunhofer boundary
    // of the 100-element source aperture (d_f ~ 2.43 m vs d ~ 1.93 m).
    double carrier_hz = 10e9;
    double snr_db = 10.0;
    double beta_real = 0.70710678118654752;
    double beta_imag = 0.70710678118654752;

    Regime regime = Regime::NearField;
    CaseId case_id = CaseId::II;
    PlanKind plan = PlanKind::Dft;

    std::vector<Eigen::Index> nu_sweep{4, 9, 16, 25, 36, 49, 64};

    double snr_linear() const;
    double wavelength() const { return speed_of_light / carrier_hz; }
};

/// Parse `key = value` lines ('#' starts a comment). Throws config_error
/// on unknown keys, duplicate keys, malformed values, or failed
/// validation.
RunConfig parse_config_text(const std::string &text);
RunConfig parse_config_file(const std::string &path);

/// Validation shared by parsing and programmatic construction.
void validate_config(const RunConfig &config);

/// Canonical serialization: every key once, fixed order, full-precision
/// values. Hash input and reproducibility record.
std::string canonical_config(const RunConfig &config);

/// FNV-1a 64-bit hash of the canonical serialization, as 16 hex digits.
std::string config_hash(const RunConfig &config);

std::string regime_label(Regime regime);
std::string case_label(CaseId case_id);
std::string plan_label(PlanKind plan);

} // namespace fimloc

#endif // FIMLOC_CONFIG_HPP
