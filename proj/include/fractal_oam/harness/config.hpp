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

#ifndef FRACTAL_OAM_HARNESS_CONFIG_HPP
#define FRACTAL_OAM_HARNESS_CONFIG_HPP

#include "fractal_oam/channel.hpp"
#include "fractal_oam/geometry.hpp"
#include "fractal_oam/modem.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fractal_oam
{
    // Reported with the offending field path, e.g. "receive.radius: must be > 0".
    struct ConfigError : std::runtime_error
    {
        explicit ConfigError(const std::string &what) : std::runtime_error(what) {}
    };

    enum class LengthUnit
    {
        wavelength,
        millimeter,
        meter,
    };

    enum class Baseline
    {
        fractal,
        normal,    // transmit radius forced to lambda/2; receive placement unchanged
        two_layer, // six-sub-UCA composite transmitter
    };

    struct ReceiveSpec
    {
        double radius = 16.7; // config units
        int element_count = 6;
        bool use_grid_index = true;
        GridIndex grid_index{0, 0};
        double center_x = 0.0; // config units, used when use_grid_index is false
        double center_y = 0.0;
        double angular_offset = 0.0; // radians
    };

    struct FieldMapRegion
    {
        double x_min = 0.0, x_max = 0.0; // config units
        double y_min = 0.0, y_max = 0.0;
        int nx = 0, ny = 0;
        bool use_approx = false;
        int mode = 1;
        double power = 1.0;
        bool explicit_region = false; // false: derive extents from the grid
    };

    // One experiment: geometry, channel variant, power, SNR list, Monte Carlo
    // budget, and baseline selector. Lengths are in `unit`; `lambda` is the
    // wavelength expressed in that same unit (1 for LengthUnit::wavelength).
    struct ExperimentConfig
    {
        double lambda = 10.0;
        LengthUnit unit = LengthUnit::millimeter;
        std::uint64_t seed = 1;
        Baseline baseline = Baseline::fractal;

        double transmit_radius = 1500.0; // config units
        int transmit_count = 6;

        ReceiveSpec receive;
        double distance = 10000.0; // config units

        ChannelVariant channel = ChannelVariant::exact;
        std::vector<double> mode_powers = std::vector<double>(6, 1.0); // watts per mode
        Constellation constellation = Constellation::bpsk; // gaussian: analysis only, no Monte Carlo
        std::vector<double> snr_db = {20.0};
        std::uint64_t trials = 0; // 0: analytic metrics only
        bool allow_oversize_rx = false;

        double two_layer_inner_radius = 0.5; // wavelengths
        std::string channel_csv;             // optional: ingest instead of analytic build

        FieldMapRegion fieldmap;
    };

    // Conversion between config units and the internal wavelength unit.
    inline double to_wavelengths(double value, const ExperimentConfig &config)
    {
        return value / config.lambda;
    }
    inline double from_wavelengths(double value, const ExperimentConfig &config)
    {
        return value * config.lambda;
    }

    const char *unit_name(LengthUnit unit);
    const char *baseline_name(Baseline baseline);

    // Parse a config document (JSON). Unknown keys are rejected; missing keys
    // take the defaults above. Throws ConfigError with the field path.
    ExperimentConfig load_config(const std::string &path);
    ExperimentConfig parse_config(const std::string &text);

    // Structural validation plus the receive-radius bound check. Returns
    // human-readable warnings (small transmit radius, non-hexagonal element
    // count) without failing.
    std::vector<std::string> validate_config(const ExperimentConfig &config);

    // FNV-1a over the canonical serialized form; stable across runs.
    std::string config_hash(const ExperimentConfig &config);

    // Swept parameter for run_sweep.
    struct SweepSpec
    {
        enum class Param
        {
            snr,
            receive_radius,
            transmit_radius,
            distance,
            grid_index,
        };

        Param param = Param::snr;
        std::vector<double> values;          // config units (dB for snr)
        std::vector<GridIndex> grid_values;  // for Param::grid_index
        std::optional<double> tie_rr_factor; // R_r = factor * lambda * z / R_t
    };

    const char *param_name(SweepSpec::Param param);
    SweepSpec::Param parse_param(const std::string &name);

    // Value-list syntax: "a:step:b" (inclusive range) or comma-separated
    // scalars; for grid_index, semicolon-separated "m,n" pairs.
    std::vector<double> parse_value_list(const std::string &text);
    std::vector<GridIndex> parse_grid_index_list(const std::string &text);

    // Worker cap: FRACTAL_OAM_WORKERS when set, hardware concurrency otherwise.
    int worker_count();
}

#endif
