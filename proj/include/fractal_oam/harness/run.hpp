// SPDX-License-Identifier: Apache-2.0
//
// fractal-oam  Numerical simulator for fractal OAM radio links over uniform circular arrays
// Copyright (C) 2026 the fractal-oam authors
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

#ifndef FRACTAL_OAM_HARNESS_RUN_HPP
#define FRACTAL_OAM_HARNESS_RUN_HPP

#include "fractal_oam/harness/config.hpp"
#include "fractal_oam/harness/io.hpp"
#include "fractal_oam/metrics.hpp"
#include "fractal_oam/modem.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fractal_oam
{
    // Geometry and transforms assembled from a config, in wavelength units.
    // The receive placement always follows the configured transmit radius;
    // baselines swap only the transmitter itself.
    struct LinkSetup
    {
        FractalGrid<double> grid;     // from the configured transmit radius
        UcaLayout<double> rx;         // receive ring
        ChannelMatrix<double> h;      // element-domain channel
        UnitDftPair<double> pair;     // modulation / demodulation transforms
        OamChannel<double> oam;       // H' = W' H W
        PowerAllocation<double> power;
        std::vector<std::string> warnings;
    };

    // Builds layouts, channel, and OAM channel for a validated config.
    // noise variance for a given SNR: sigma^2 = mean(P) * 10^(-snr_db/10).
    LinkSetup build_link(const ExperimentConfig &config);
    double noise_variance_for(const ExperimentConfig &config, double snr_db);

    // Full pipeline at one SNR point (the first config SNR by default).
    LinkResult<double> run_link(const ExperimentConfig &config, const LinkSetup &setup, double snr_db);
    LinkResult<double> run_link(const ExperimentConfig &config);

    // One row per swept value: swept value columns, per-mode gamma, capacity,
    // analytic BER, and Monte Carlo columns when trials > 0. Points execute in
    // parallel (worker_count cap) and rows keep sweep order.
    CurveTable run_sweep(const ExperimentConfig &config, const SweepSpec &sweep);

    // Evaluation over the configured raster; excitation is the configured mode.
    FieldMap<double> run_field_map(const ExperimentConfig &config);
}

#endif
