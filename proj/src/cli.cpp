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

#include "fractal_oam/harness/cli.hpp"

#include "fractal_oam/harness/config.hpp"
#include "fractal_oam/harness/io.hpp"
#include "fractal_oam/harness/run.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace fractal_oam
{
    namespace
    {
        // Inline overrides shared by the config-driven subcommands.
        struct Overrides
        {
            std::string config_path;
            std::optional<double> lambda;
            std::optional<std::string> unit;
            std::optional<std::uint64_t> seed;
            std::optional<std::string> baseline;
            std::optional<double> transmit_radius;
            std::optional<double> receive_radius;
            std::optional<int> receive_count;
            std::optional<double> distance;
            std::optional<int> grid_m, grid_n;
            std::optional<std::string> channel_variant;
            std::optional<std::string> snr;
            std::optional<std::uint64_t> trials;
            std::optional<std::string> channel_csv;
            bool allow_oversize_rx = false;
        };

        void add_override_options(CLI::App *cmd, Overrides &o)
        {
            cmd->add_option("-c,--config", o.config_path, "Config file (JSON)");
            cmd->add_option("--lambda", o.lambda, "Wavelength in the config unit");
            cmd->add_option("--unit", o.unit, "Length unit: wavelength, mm, m");
            cmd->add_option("--seed", o.seed, "Random seed");
            cmd->add_option("--baseline", o.baseline, "fractal, normal, or two-layer");
            cmd->add_option("--rt,--transmit-radius", o.transmit_radius, "Transmit UCA radius");
            cmd->add_option("--rr,--receive-radius", o.receive_radius, "Receive UCA radius");
            cmd->add_option("--nr,--receive-count", o.receive_count, "Receive element count");
            cmd->add_option("--z,--distance", o.distance, "Transceiver plane distance");
            cmd->add_option("--grid-m", o.grid_m, "Receive lattice row index");
            cmd->add_option("--grid-n", o.grid_n, "Receive lattice column index");
            cmd->add_option("--channel", o.channel_variant, "Channel variant: exact or approx");
            cmd->add_option("--snr", o.snr, "SNR list in dB: 'a:step:b' or comma separated");
            cmd->add_option("--trials", o.trials, "Monte Carlo trials per SNR point");
            cmd->add_option("--channel-csv", o.channel_csv, "Ingest an external channel (nr,nt,re,im)");
            cmd->add_flag("--allow-oversize-rx", o.allow_oversize_rx,
                          "Accept a receive radius beyond the single-replica bound");
        }

        ExperimentConfig resolve_config(const Overrides &o)
        {
            ExperimentConfig config =
                o.config_path.empty() ? ExperimentConfig{} : load_config(o.config_path);
            if (o.unit)
            {
                if (*o.unit == "wavelength" || *o.unit == "lambda")
                {
                    config.unit = LengthUnit::wavelength;
                    config.lambda = 1.0;
                }
                else if (*o.unit == "mm" || *o.unit == "millimeter")
                    config.unit = LengthUnit::millimeter;
                else if (*o.unit == "m" || *o.unit == "meter")
                    config.unit = LengthUnit::meter;
                else
                    throw ConfigError("unit: must be one of wavelength, mm, m");
            }
            if (o.lambda)
                config.lambda = *o.lambda;
            if (o.seed)
                config.seed = *o.seed;
            if (o.baseline)
            {
                if (*o.baseline == "fractal")
                    config.baseline = Baseline::fractal;
                else if (*o.baseline == "normal")
                    config.baseline = Baseline::normal;
                else if (*o.baseline == "two-layer" || *o.baseline == "two_layer")
                    config.baseline = Baseline::two_layer;
                else
                    throw ConfigError("baseline: must be fractal, normal, or two-layer");
            }
            if (o.transmit_radius)
                config.transmit_radius = *o.transmit_radius;
            if (o.receive_radius)
                config.receive.radius = *o.receive_radius;
            if (o.receive_count)
                config.receive.element_count = *o.receive_count;
            if (o.distance)
                config.distance = *o.distance;
            if (o.grid_m || o.grid_n)
            {
                config.receive.use_grid_index = true;
                if (o.grid_m)
                    config.receive.grid_index.m = *o.grid_m;
                if (o.grid_n)
                    config.receive.grid_index.n = *o.grid_n;
            }
            if (o.channel_variant)
            {
                if (*o.channel_variant == "exact")
                    config.channel = ChannelVariant::exact;
                else if (*o.channel_variant == "approx")
                    config.channel = ChannelVariant::approx;
                else
                    throw ConfigError("channel: must be exact or approx");
            }
            if (o.snr)
                config.snr_db = parse_value_list(*o.snr);
            if (o.trials)
                config.trials = *o.trials;
            if (o.channel_csv)
                config.channel_csv = *o.channel_csv;
            if (o.allow_oversize_rx)
                config.allow_oversize_rx = true;
            return config;
        }

        void print_warnings(const std::vector<std::string> &warnings, std::ostream &err)
        {
            for (const auto &warning : warnings)
                err << "warning: " << warning << "\n";
        }

        void write_table(const CurveTable &table, const std::string &out_path, std::ostream &out)
        {
            if (out_path.empty())
                write_curve_csv(table, out);
            else
                write_curve_csv(table, out_path);
        }

        int run_grid(const Overrides &o, int max_m, int max_n, const std::string &out_path,
                     std::ostream &out, std::ostream &err)
        {
            // only the transmit geometry matters here; the receive ring is not used
            const ExperimentConfig config = resolve_config(o);
            if (!(config.lambda > 0.0))
                throw ConfigError("lambda: must be > 0");
            std::string warning;
            const auto grid = make_grid(1.0, to_wavelengths(config.transmit_radius, config),
                                        to_wavelengths(config.distance, config), &warning);
            if (!warning.empty())
                err << "warning: " << warning << "\n";
            if (config.transmit_count != 6)
                err << "warning: transmit.element_count != 6: only triangles, squares, and "
                       "hexagons tessellate; the lattice applies to 6 elements\n";

            std::ostringstream body;
            body << "# tool: " << kToolVersion << "\n"
                 << "# config_hash: " << config_hash(config) << "\n"
                 << "# seed: " << config.seed << "\n"
                 << "# unit: " << unit_name(config.unit) << "\n";
            body << "cell_radius," << format_double(from_wavelengths(grid.cell_radius, config)) << "\n";
            body << "rr_bound," << format_double(from_wavelengths(grid.rr_bound, config)) << "\n";
            body << "m,n,x,y,z\n";
            for (const auto &[idx, c] : enumerate_centers(grid, max_m, max_n))
                body << idx.m << "," << idx.n << ","
                     << format_double(from_wavelengths(c.x(), config)) << ","
                     << format_double(from_wavelengths(c.y(), config)) << ","
                     << format_double(from_wavelengths(c.z(), config)) << "\n";

            if (out_path.empty())
            {
                out << body.str();
            }
            else
            {
                std::ofstream file(out_path);
                if (!file)
                    throw std::runtime_error("cannot open for writing: " + out_path);
                file << body.str();
            }
            return 0;
        }

        int run_fieldmap_cmd(const Overrides &o, const std::string &out_prefix,
                             std::optional<int> mode, std::optional<std::string> evaluation,
                             std::ostream &err)
        {
            ExperimentConfig config = resolve_config(o);
            if (mode)
                config.fieldmap.mode = *mode;
            if (evaluation)
            {
                if (*evaluation == "exact")
                    config.fieldmap.use_approx = false;
                else if (*evaluation == "approx")
                    config.fieldmap.use_approx = true;
                else
                    throw ConfigError("fieldmap.evaluation: must be exact or approx");
            }
            print_warnings(validate_config(config), err);

            const FieldMap<double> map = run_field_map(config);
            FileMetadata meta{config_hash(config), config.seed, unit_name(config.unit)};
            export_field_map(map, meta, out_prefix + ".csv", out_prefix + ".pgm", config.lambda);
            return 0;
        }

        int run_link_cmd(const Overrides &o, const std::string &out_path, std::ostream &out,
                         std::ostream &err)
        {
            const ExperimentConfig config = resolve_config(o);
            SweepSpec spec;
            spec.param = SweepSpec::Param::snr;
            spec.values = config.snr_db;
            const CurveTable table = run_sweep(config, spec);
            print_warnings(table.warnings, err);
            write_table(table, out_path, out);
            return 0;
        }

        int run_sweep_cmd(const Overrides &o, const std::string &param, const std::string &values,
                          std::optional<double> tie_rr, const std::string &out_path,
                          std::ostream &out, std::ostream &err)
        {
            const ExperimentConfig config = resolve_config(o);
            SweepSpec spec;
            spec.param = parse_param(param);
            if (spec.param == SweepSpec::Param::grid_index)
                spec.grid_values = parse_grid_index_list(values);
            else
                spec.values = parse_value_list(values);
            spec.tie_rr_factor = tie_rr;
            const CurveTable table = run_sweep(config, spec);
            print_warnings(table.warnings, err);
            write_table(table, out_path, out);
            return 0;
        }

        int run_ingest(const std::string &in_path, const std::string &out_path, std::ostream &out)
        {
            const ChannelMatrix<double> channel = import_channel_csv(in_path);

            // content hash of the canonical serialization
            std::string canonical;
            for (Eigen::Index nr = 0; nr < channel.entries.rows(); ++nr)
                for (Eigen::Index nt = 0; nt < channel.entries.cols(); ++nt)
                    canonical += format_double(channel.entries(nr, nt).real()) + ',' +
                                 format_double(channel.entries(nr, nt).imag()) + ';';
            std::uint64_t hash = 0xcbf29ce484222325ULL;
            for (unsigned char c : canonical)
            {
                hash ^= c;
                hash *= 0x100000001b3ULL;
            }
            char digest[17];
            std::snprintf(digest, sizeof(digest), "%016llx", static_cast<unsigned long long>(hash));

            FileMetadata meta{digest, 0, ""};
            export_channel_csv(channel, meta, out_path);
            out << "ingested " << channel.entries.rows() << "x" << channel.entries.cols()
                << " channel (hash " << digest << ") -> " << out_path << "\n";
            return 0;
        }
    }

    int cli_main(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
    {
        CLI::App app{"fractal OAM link simulator"};
        app.require_subcommand(1);

        Overrides grid_o;
        int grid_max_m = 2, grid_max_n = 2;
        std::string grid_out;
        CLI::App *grid_cmd = app.add_subcommand("grid", "Print lattice radii and centers");
        add_override_options(grid_cmd, grid_o);
        grid_cmd->add_option("--max-m", grid_max_m, "Row index bound");
        grid_cmd->add_option("--max-n", grid_max_n, "Column index bound");
        grid_cmd->add_option("-o,--out", grid_out, "Output file (default stdout)");

        Overrides map_o;
        std::string map_prefix = "fieldmap";
        std::optional<int> map_mode;
        std::optional<std::string> map_evaluation;
        CLI::App *map_cmd = app.add_subcommand("fieldmap", "Render a field raster (CSV + PGM)");
        add_override_options(map_cmd, map_o);
        map_cmd->add_option("--mode", map_mode, "OAM mode index");
        map_cmd->add_option("--evaluation", map_evaluation, "exact or approx");
        map_cmd->add_option("-o,--out", map_prefix, "Output prefix (.csv/.pgm appended)");

        Overrides link_o;
        std::string link_out;
        CLI::App *link_cmd = app.add_subcommand("link", "Evaluate the link over the SNR list");
        add_override_options(link_cmd, link_o);
        link_cmd->add_option("-o,--out", link_out, "Output CSV (default stdout)");

        Overrides sweep_o;
        std::string sweep_param, sweep_values, sweep_out;
        std::optional<double> sweep_tie_rr;
        CLI::App *sweep_cmd = app.add_subcommand("sweep", "Sweep one parameter");
        add_override_options(sweep_cmd, sweep_o);
        sweep_cmd->add_option("--param", sweep_param,
                              "snr, receive_radius, transmit_radius, distance, grid_index")
            ->required();
        sweep_cmd->add_option("--values", sweep_values,
                              "'a:step:b', comma list, or 'm,n;m,n' for grid_index")
            ->required();
        sweep_cmd->add_option("--tie-rr", sweep_tie_rr,
                              "Derive the receive radius as factor*lambda*z/R_t at every point");
        sweep_cmd->add_option("-o,--out", sweep_out, "Output CSV (default stdout)");

        std::string ingest_in, ingest_out = "channel.csv";
        CLI::App *ingest_cmd =
            app.add_subcommand("ingest-channel", "Validate and canonicalize a channel CSV");
        ingest_cmd->add_option("-i,--in", ingest_in, "Input CSV with header nr,nt,re,im")->required();
        ingest_cmd->add_option("-o,--out", ingest_out, "Canonical output CSV");

        try
        {
            app.parse(argc, argv);
        }
        catch (const CLI::ParseError &e)
        {
            return app.exit(e, out, err);
        }

        try
        {
            if (grid_cmd->parsed())
                return run_grid(grid_o, grid_max_m, grid_max_n, grid_out, out, err);
            if (map_cmd->parsed())
                return run_fieldmap_cmd(map_o, map_prefix, map_mode, map_evaluation, err);
            if (link_cmd->parsed())
                return run_link_cmd(link_o, link_out, out, err);
            if (sweep_cmd->parsed())
                return run_sweep_cmd(sweep_o, sweep_param, sweep_values, sweep_tie_rr, sweep_out, out, err);
            if (ingest_cmd->parsed())
                return run_ingest(ingest_in, ingest_out, out);
        }
        catch (const std::exception &e)
        {
            err << "error: " << e.what() << "\n";
            return 1;
        }
        err << "error: no subcommand\n";
        return 1;
    }

    int cli_main(int argc, const char *const *argv)
    {
        return cli_main(argc, argv, std::cout, std::cerr);
    }
}
