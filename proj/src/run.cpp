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

#include "fractal_oam/harness/run.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <thread>

namespace fractal_oam
{
    namespace
    {
        // Placement, bounds, and derived quantities always follow the
        // configured transmit radius; the baseline selector replaces only the
        // transmitter, so baseline comparisons differ in nothing else.
        struct InternalGeometry
        {
            double rt;        // configured transmit radius, wavelengths
            double z;         // plane distance, wavelengths
            double rr;        // receive radius, wavelengths
            Vec3<double> rx_center;
        };

        InternalGeometry internal_geometry(const ExperimentConfig &config,
                                           const FractalGrid<double> &grid)
        {
            InternalGeometry geometry{};
            geometry.rt = to_wavelengths(config.transmit_radius, config);
            geometry.z = to_wavelengths(config.distance, config);
            geometry.rr = to_wavelengths(config.receive.radius, config);
            if (config.receive.use_grid_index)
                geometry.rx_center = grid_center(config.receive.grid_index, grid);
            else
                geometry.rx_center = Vec3<double>(to_wavelengths(config.receive.center_x, config),
                                                  to_wavelengths(config.receive.center_y, config),
                                                  geometry.z);
            return geometry;
        }

        std::uint64_t fnv1a(const std::string &text, std::uint64_t hash = 0xcbf29ce484222325ULL)
        {
            for (unsigned char c : text)
            {
                hash ^= c;
                hash *= 0x100000001b3ULL;
            }
            return hash;
        }

        std::string sweep_hash(const ExperimentConfig &config, const SweepSpec &sweep)
        {
            std::string text = config_hash(config);
            text += '|';
            text += param_name(sweep.param);
            for (double v : sweep.values)
                text += ',' + format_double(v);
            for (const GridIndex &idx : sweep.grid_values)
                text += ';' + std::to_string(idx.m) + ',' + std::to_string(idx.n);
            if (sweep.tie_rr_factor)
                text += "|tie_rr=" + format_double(*sweep.tie_rr_factor);
            char buffer[17];
            std::snprintf(buffer, sizeof(buffer), "%016llx",
                          static_cast<unsigned long long>(fnv1a(text)));
            return buffer;
        }

        template <typename Fn>
        void parallel_for(std::size_t count, int workers, const Fn &body)
        {
            if (workers <= 1 || count < 2)
            {
                for (std::size_t i = 0; i < count; ++i)
                    body(i);
                return;
            }
            const std::size_t n_threads = std::min<std::size_t>(std::size_t(workers), count);
            const std::size_t chunk = (count + n_threads - 1) / n_threads;
            std::vector<std::thread> pool;
            pool.reserve(n_threads);
            for (std::size_t t = 0; t < n_threads; ++t)
                pool.emplace_back([&, t] {
                    const std::size_t begin = t * chunk;
                    const std::size_t end = std::min(count, begin + chunk);
                    for (std::size_t i = begin; i < end; ++i)
                        body(i);
                });
            for (auto &th : pool)
                th.join();
        }
    }

    double noise_variance_for(const ExperimentConfig &config, double snr_db)
    {
        // The configured SNR is referenced at the receive plane: noise is scaled
        // by the squared common paraxial path gain lambda/(4*pi*z), so SNR means
        // "per-mode transmit power over noise after the direct-path loss".
        // Referencing at the transmitter instead would put every free-space run
        // of interest at SINR ~ 1e-5, far below the regime the capacity and BER
        // studies operate in.
        const double mean_power =
            std::accumulate(config.mode_powers.begin(), config.mode_powers.end(), 0.0) /
            double(config.mode_powers.size());
        const double z = to_wavelengths(config.distance, config);
        const double path_gain = 1.0 / (4.0 * M_PI * z);
        return mean_power * path_gain * path_gain * std::pow(10.0, -snr_db / 10.0);
    }

    LinkSetup build_link(const ExperimentConfig &config)
    {
        LinkSetup setup;
        setup.warnings = validate_config(config);
        if (config.transmit_count != 6)
            throw ConfigError("transmit.element_count: link evaluation requires 6 elements");

        setup.grid = make_grid(1.0, to_wavelengths(config.transmit_radius, config),
                               to_wavelengths(config.distance, config));
        const InternalGeometry geometry = internal_geometry(config, setup.grid);
        setup.rx = make_uca(geometry.rr, config.receive.element_count, geometry.rx_center,
                            config.receive.angular_offset);

        ComplexMatrix<double> w_tx;
        if (!config.channel_csv.empty())
        {
            setup.h = import_channel_csv(config.channel_csv);
            if (setup.h.entries.cols() != 6)
                throw ConfigError("channel_csv: matrix must have 6 columns (one per transmit element)");
            w_tx = unit_idft<double>(6);
        }
        else
        {
            switch (config.baseline)
            {
            case Baseline::fractal:
            {
                const auto tx = make_uca(geometry.rt, 6);
                setup.h = build_free_space(tx, setup.rx, 1.0, config.channel);
                w_tx = unit_idft<double>(6);
                break;
            }
            case Baseline::normal:
            {
                const auto tx = make_uca(0.5, 6); // half-wavelength radius
                setup.h = build_free_space(tx, setup.rx, 1.0, config.channel);
                w_tx = unit_idft<double>(6);
                break;
            }
            case Baseline::two_layer:
            {
                if (config.channel == ChannelVariant::approx)
                    throw ConfigError("channel: the two-layer baseline supports only the exact variant");
                const auto composite =
                    composite_two_layer_layout(geometry.rt, config.two_layer_inner_radius, 6);
                setup.h = build_free_space(composite.elements, setup.rx, 1.0);
                w_tx = composite_modulation_matrix(composite);
                break;
            }
            }
        }

        setup.pair = UnitDftPair<double>{w_tx, unit_dft<double>(int(setup.h.entries.rows()))};
        setup.oam = to_oam_domain(setup.h, setup.pair.idft, setup.pair.dft);

        RealVector<double> powers(6);
        for (int l = 0; l < 6; ++l)
            powers[l] = config.mode_powers[std::size_t(l)];
        setup.power = PowerAllocation<double>::from_powers(powers);
        return setup;
    }

    namespace
    {
        LinkResult<double> evaluate_link(const ExperimentConfig &config, const LinkSetup &setup,
                                         double snr_db, int mc_workers)
        {
            LinkResult<double> result;
            result.snr_db = snr_db;
            const double sigma2 = noise_variance_for(config, snr_db);
            result.sinr = sinr(setup.oam, setup.power, sigma2);
            result.capacity = capacity(result.sinr);
            result.ber_analytic = ber_analytic(result.sinr);
            if (config.trials > 0)
                result.ber_monte_carlo = ber_monte_carlo(setup.h, setup.pair, setup.oam, setup.power,
                                                         sigma2, config.trials, config.seed, mc_workers);
            return result;
        }
    }

    LinkResult<double> run_link(const ExperimentConfig &config, const LinkSetup &setup, double snr_db)
    {
        return evaluate_link(config, setup, snr_db, worker_count());
    }

    LinkResult<double> run_link(const ExperimentConfig &config)
    {
        const LinkSetup setup = build_link(config);
        return run_link(config, setup, config.snr_db.front());
    }

    CurveTable run_sweep(const ExperimentConfig &config, const SweepSpec &sweep)
    {
        const bool by_grid_index = sweep.param == SweepSpec::Param::grid_index;
        const std::size_t count = by_grid_index ? sweep.grid_values.size() : sweep.values.size();
        if (count == 0)
            throw ConfigError("sweep.values: must not be empty");

        CurveTable table;
        table.meta.config_hash = sweep_hash(config, sweep);
        table.meta.seed = config.seed;
        table.meta.unit = unit_name(config.unit);
        if (by_grid_index)
        {
            table.columns = {"grid_m", "grid_n"};
        }
        else
        {
            table.columns = {param_name(sweep.param)};
        }
        for (int l = 0; l < 6; ++l)
            table.columns.push_back("gamma_" + std::to_string(l));
        table.columns.push_back("capacity");
        table.columns.push_back("ber_analytic");
        if (config.trials > 0)
        {
            table.columns.push_back("ber_mc");
            table.columns.push_back("ber_mc_stderr");
        }

        std::vector<std::vector<double>> rows(count);
        std::vector<std::exception_ptr> failures(count);
        std::vector<std::vector<std::string>> point_warnings(count);
        parallel_for(count, worker_count(), [&](std::size_t i) {
            try
            {
                ExperimentConfig point = config;
                if (by_grid_index)
                {
                    point.receive.use_grid_index = true;
                    point.receive.grid_index = sweep.grid_values[i];
                }
                else
                {
                    const double value = sweep.values[i];
                    switch (sweep.param)
                    {
                    case SweepSpec::Param::snr:
                        point.snr_db = {value};
                        break;
                    case SweepSpec::Param::receive_radius:
                        point.receive.radius = value;
                        break;
                    case SweepSpec::Param::transmit_radius:
                        point.transmit_radius = value;
                        break;
                    case SweepSpec::Param::distance:
                        point.distance = value;
                        break;
                    case SweepSpec::Param::grid_index:
                        break;
                    }
                }
                if (sweep.tie_rr_factor)
                    point.receive.radius =
                        *sweep.tie_rr_factor * point.lambda * point.distance / point.transmit_radius;

                const LinkSetup setup = build_link(point);
                point_warnings[i] = setup.warnings;
                const LinkResult<double> result =
                    evaluate_link(point, setup, point.snr_db.front(), 1);

                std::vector<double> &row = rows[i];
                if (by_grid_index)
                {
                    row.push_back(double(sweep.grid_values[i].m));
                    row.push_back(double(sweep.grid_values[i].n));
                }
                else
                {
                    row.push_back(sweep.values[i]);
                }
                for (int l = 0; l < 6; ++l)
                    row.push_back(result.sinr[l]);
                row.push_back(result.capacity);
                row.push_back(result.ber_analytic);
                if (result.ber_monte_carlo)
                {
                    row.push_back(result.ber_monte_carlo->ber);
                    row.push_back(result.ber_monte_carlo->standard_error);
                }
            }
            catch (...)
            {
                failures[i] = std::current_exception();
            }
        });

        for (std::size_t i = 0; i < count; ++i)
            if (failures[i])
                std::rethrow_exception(failures[i]);

        if (!point_warnings.empty())
            table.warnings = point_warnings.front();
        table.rows = std::move(rows);
        return table;
    }

    FieldMap<double> run_field_map(const ExperimentConfig &config)
    {
        (void)validate_config(config);
        const double rt = to_wavelengths(config.transmit_radius, config);
        const double z = to_wavelengths(config.distance, config);
        const FractalGrid<double> grid = make_grid(1.0, rt, z);

        MapSpec<double> spec;
        spec.z = z;
        spec.use_approx = config.fieldmap.use_approx;
        spec.nx = config.fieldmap.nx > 0 ? config.fieldmap.nx : 201;
        spec.ny = config.fieldmap.ny > 0 ? config.fieldmap.ny : 201;
        if (config.fieldmap.explicit_region)
        {
            spec.x_min = to_wavelengths(config.fieldmap.x_min, config);
            spec.x_max = to_wavelengths(config.fieldmap.x_max, config);
            spec.y_min = to_wavelengths(config.fieldmap.y_min, config);
            spec.y_max = to_wavelengths(config.fieldmap.y_max, config);
        }
        else
        {
            // default view: central replica plus the first ring
            const double extent = 1.6 * std::sqrt(3.0) * grid.cell_radius;
            spec.x_min = -extent;
            spec.x_max = extent;
            spec.y_min = -extent;
            spec.y_max = extent;
        }

        const int mode = config.fieldmap.mode;
        const double power = config.fieldmap.power;
        const int workers = worker_count();

        if (config.baseline == Baseline::two_layer)
        {
            if (spec.use_approx)
                throw ConfigError("fieldmap.evaluation: the two-layer transmitter supports only exact");
            const auto composite = composite_two_layer_layout(rt, config.two_layer_inner_radius,
                                                              config.transmit_count);
            const auto excitation = composite_mode_excitation(composite, mode, power);
            return render_field_map(composite.elements, excitation, spec, 1.0, workers);
        }

        const double radius = config.baseline == Baseline::normal ? 0.5 : rt;
        const auto tx = make_uca(radius, config.transmit_count);
        const auto excitation = mode_excitation<double>(config.transmit_count, mode, power);
        return render_field_map(tx, excitation, spec, 1.0, workers);
    }
}
