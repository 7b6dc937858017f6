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

#ifndef FIMLOC_SIGNAL_HPP
#define FIMLOC_SIGNAL_HPP

#include "fimloc/geometry.hpp"

#include <complex>
#include <vector>

namespace fimloc {

using CVecX = Eigen::VectorXcd;
using CMatX = Eigen::MatrixXcd;

/// Complex path gain, carrier and SNR of the link. The wavelength is
/// derived from the carrier so that wavelength * carrier == c holds by
/// construction. Pathloss is folded into snr_linear; the gain is kept
/// unit-magnitude by default.
struct ChannelParams
{
    double gain_real = 0.0;  // Re(beta)
    double gain_imag = 0.0;  // Im(beta)
    double carrier_hz = 0.0; // f_c, > 0
    double snr_linear = 1.0; // 1/sigma^2, > 0

    double wavelength() const { return speed_of_light / carrier_hz; }
    std::complex<double> gain() const { return {gain_real, gain_imag}; }
};

/// Precoding schedule: one beamformer per transmission plus the fixed
/// symbol vector. Noise is never sampled anywhere in this library; the
/// noise power enters only through ChannelParams::snr_linear.
struct TransmitPlan
{
    std::vector<CMatX> beamformers; // T matrices, each n_antennas x n_streams
    CVecX symbols;                  // n_streams, ||x|| = 1

    Eigen::Index num_streams() const { return symbols.size(); }
    Eigen::Index num_transmissions() const { return static_cast<Eigen::Index>(beamformers.size()); }

    /// Beamformed antenna weights F_t * x for one transmission.
    CVecX weights(Eigen::Index t) const;
};

/// Propagation model selector. This is an explicit modeling choice and is
/// deliberately independent of whether the link distance exceeds the
/// Fraunhofer boundary: applying the planar model inside the near field is
/// one of the mismatch studies this library exists for.
enum class Regime
{
    NearField,
    FarField,
};

/// Full description of one source-to-destination link.
struct Scenario
{
    Pose source_pose;
    ArrayGeometry source_array;
    Pose dest_pose;
    ArrayGeometry dest_array;
    ChannelParams channel;
    TransmitPlan plan;
    Regime regime = Regime::NearField;
};

/// n_streams distinct columns of the unitary n_antennas-point DFT matrix.
/// Column d holds DFT column (t * n_streams + d) mod n_antennas, so the
/// selection rotates through the codebook as the transmission index
/// advances. Every column has unit norm.
CMatX dft_codebook(Eigen::Index n_antennas, Eigen::Index n_streams,
                   Eigen::Index transmission_index);

/// Identity beamforming (n_streams == n_antennas) with the uniform symbol
/// vector x = 1/sqrt(n_antennas).
TransmitPlan identity_plan(Eigen::Index n_antennas, Eigen::Index num_transmissions);

/// Rotating DFT-codebook beamformers with a fixed deterministic chirp
/// symbol vector x_d = exp(j*pi*d^2/n_streams)/sqrt(n_streams). The chirp
/// keeps ||x|| = 1 while avoiding the accidental orthogonality to DFT
/// columns an all-ones vector would have.
TransmitPlan dft_plan(Eigen::Index n_antennas, Eigen::Index n_streams,
                      Eigen::Index num_transmissions);

/// Plane-wave phase profile exp(-j*(2*pi/lambda)*(Q*s_n)' * direction) of
/// an array rotated by `angles` for a unit propagation direction.
CVecX steering_vector(const Mat3X &local_coords, const EulerAngles &angles,
                      const Vec3 &direction, double wavelength);

/// Noise-free received vector under the spherical-wavefront model: entry u
/// sums beta * exp(-j*2*pi*f_c*tau_bu) over all transmit antennas b, with
/// tau_bu the exact per-element propagation delay.
CVecX nearfield_mu(const Scenario &scenario, Eigen::Index transmission_index);

/// Noise-free received vector under the planar-wavefront approximation:
/// beta * a_dest * (a_source^H F_t x) * exp(-j*2*pi*d/lambda) with steering
/// vectors evaluated along the centroid-to-centroid direction.
CVecX farfield_mu(const Scenario &scenario, Eigen::Index transmission_index);

/// Dispatch on scenario.regime.
CVecX received_mu(const Scenario &scenario, Eigen::Index transmission_index);

} // namespace fimloc

#endif // FIMLOC_SIGNAL_HPP
