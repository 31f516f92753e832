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

#include "fractal_oam/harness/config.hpp"

#include "fractal_oam/harness/io.hpp"

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

namespace fractal_oam
{
    namespace
    {
        using nlohmann::json;

        [[noreturn]] void fail(const std::string &path, const std::string &message)
        {
            throw ConfigError(path + ": " + message);
        }

        void reject_unknown_keys(const json &node, const std::string &path,
                                 const std::set<std::string> &known)
        {
            for (const auto &item : node.items())
                if (known.find(item.key()) == known.end())
                    fail(path.empty() ? item.key() : path + "." + item.key(), "unknown key");
        }

        double get_number(const json &node, const std::string &path)
        {
            if (!node.is_number())
                fail(path, "must be a number");
            return node.get<double>();
        }

        int get_int(const json &node, const std::string &path)
        {
            if (!node.is_number_integer())
                fail(path, "must be an integer");
            return node.get<int>();
        }

        LengthUnit parse_unit(const std::string &name, const std::string &path)
        {
            if (name == "wavelength" || name == "lambda")
                return LengthUnit::wavelength;
            if (name == "mm" || name == "millimeter")
                return LengthUnit::millimeter;
            if (name == "m" || name == "meter")
                return LengthUnit::meter;
            fail(path, "must be one of wavelength, mm, m");
        }

        Baseline parse_baseline(const std::string &name, const std::string &path)
        {
            if (name == "fractal")
                return Baseline::fractal;
            if (name == "normal")
                return Baseline::normal;
            if (name == "two-layer" || name == "two_layer")
                return Baseline::two_layer;
            fail(path, "must be one of fractal, normal, two-layer");
        }

        ChannelVariant parse_channel_variant(const std::string &name, const std::string &path)
        {
            if (name == "exact")
                return ChannelVariant::exact;
            if (name == "approx" || name == "paraxial")
                return ChannelVariant::approx;
            fail(path, "must be exact or approx");
        }

        std::vector<double> parse_snr_list(const json &node, const std::string &path)
        {
            if (node.is_array())
            {
                std::vector<double> values;
                for (std::size_t i = 0; i < node.size(); ++i)
                    values.push_back(get_number(node[i], path + "[" + std::to_string(i) + "]"));
                return values;
            }
            if (node.is_object())
            {
                reject_unknown_keys(node, path, {"start", "step", "stop"});
                const double start = get_number(node.at("start"), path + ".start");
                const double step = get_number(node.at("step"), path + ".step");
                const double stop = get_number(node.at("stop"), path + ".stop");
                if (step <= 0.0)
                    fail(path + ".step", "must be > 0");
                std::vector<double> values;
                for (double v = start; v <= stop + 1e-9 * step; v += step)
                    values.push_back(v);
                return values;
            }
            fail(path, "must be an array or {start, step, stop}");
        }
    }

    const char *unit_name(LengthUnit unit)
    {
        switch (unit)
        {
        case LengthUnit::wavelength:
            return "wavelength";
        case LengthUnit::millimeter:
            return "mm";
        case LengthUnit::meter:
            return "m";
        }
        return "?";
    }

    const char *baseline_name(Baseline baseline)
    {
        switch (baseline)
        {
        case Baseline::fractal:
            return "fractal";
        case Baseline::normal:
            return "normal";
        case Baseline::two_layer:
            return "two-layer";
        }
        return "?";
    }

    ExperimentConfig parse_config(const std::string &text)
    {
        json root;
        try
        {
            root = json::parse(text);
        }
        catch (const json::parse_error &e)
        {
            throw ConfigError(std::string("config: ") + e.what());
        }
        if (!root.is_object())
            throw ConfigError("config: document must be an object");

        reject_unknown_keys(root, "", {"lambda", "unit", "seed", "baseline", "transmit", "receive",
                                       "distance", "channel", "power", "constellation", "snr_db",
                                       "monte_carlo", "allow_oversize_rx", "two_layer", "channel_csv",
                                       "fieldmap"});

        ExperimentConfig config;

        if (root.contains("unit"))
            config.unit = parse_unit(root["unit"].get<std::string>(), "unit");
        if (config.unit == LengthUnit::wavelength)
            config.lambda = 1.0;
        if (root.contains("lambda"))
            config.lambda = get_number(root["lambda"], "lambda");
        if (root.contains("seed"))
        {
            if (!root["seed"].is_number_unsigned() && !root["seed"].is_number_integer())
                fail("seed", "must be a non-negative integer");
            config.seed = root["seed"].get<std::uint64_t>();
        }
        if (root.contains("baseline"))
            config.baseline = parse_baseline(root["baseline"].get<std::string>(), "baseline");

        if (root.contains("transmit"))
        {
            const json &tx = root["transmit"];
            reject_unknown_keys(tx, "transmit", {"radius", "element_count"});
            if (tx.contains("radius"))
                config.transmit_radius = get_number(tx["radius"], "transmit.radius");
            if (tx.contains("element_count"))
                config.transmit_count = get_int(tx["element_count"], "transmit.element_count");
        }

        if (root.contains("receive"))
        {
            const json &rx = root["receive"];
            reject_unknown_keys(rx, "receive",
                                {"radius", "element_count", "grid_index", "center", "angular_offset"});
            if (rx.contains("radius"))
                config.receive.radius = get_number(rx["radius"], "receive.radius");
            if (rx.contains("element_count"))
                config.receive.element_count = get_int(rx["element_count"], "receive.element_count");
            if (rx.contains("grid_index") && rx.contains("center"))
                fail("receive", "grid_index and center are mutually exclusive");
            if (rx.contains("grid_index"))
            {
                const json &idx = rx["grid_index"];
                reject_unknown_keys(idx, "receive.grid_index", {"m", "n"});
                config.receive.use_grid_index = true;
                config.receive.grid_index.m = get_int(idx.at("m"), "receive.grid_index.m");
                config.receive.grid_index.n = get_int(idx.at("n"), "receive.grid_index.n");
            }
            if (rx.contains("center"))
            {
                const json &center = rx["center"];
                if (!center.is_array() || center.size() != 2)
                    fail("receive.center", "must be [x, y]");
                config.receive.use_grid_index = false;
                config.receive.center_x = get_number(center[0], "receive.center[0]");
                config.receive.center_y = get_number(center[1], "receive.center[1]");
            }
            if (rx.contains("angular_offset"))
                config.receive.angular_offset = get_number(rx["angular_offset"], "receive.angular_offset");
        }

        if (root.contains("distance"))
            config.distance = get_number(root["distance"], "distance");
        if (root.contains("channel"))
            config.channel = parse_channel_variant(root["channel"].get<std::string>(), "channel");

        if (root.contains("power"))
        {
            const json &power = root["power"];
            reject_unknown_keys(power, "power", {"per_mode", "uniform"});
            if (power.contains("per_mode") && power.contains("uniform"))
                fail("power", "per_mode and uniform are mutually exclusive");
            if (power.contains("per_mode"))
            {
                const json &list = power["per_mode"];
                if (!list.is_array())
                    fail("power.per_mode", "must be an array");
                config.mode_powers.clear();
                for (std::size_t i = 0; i < list.size(); ++i)
                    config.mode_powers.push_back(
                        get_number(list[i], "power.per_mode[" + std::to_string(i) + "]"));
            }
            else if (power.contains("uniform"))
            {
                config.mode_powers.assign(6, get_number(power["uniform"], "power.uniform"));
            }
        }

        if (root.contains("constellation"))
        {
            const std::string name = root["constellation"].get<std::string>();
            if (name == "bpsk")
                config.constellation = Constellation::bpsk;
            else if (name == "gaussian")
                config.constellation = Constellation::gaussian;
            else
                fail("constellation", "must be bpsk or gaussian");
        }

        if (root.contains("snr_db"))
            config.snr_db = parse_snr_list(root["snr_db"], "snr_db");

        if (root.contains("monte_carlo"))
        {
            const json &mc = root["monte_carlo"];
            reject_unknown_keys(mc, "monte_carlo", {"trials"});
            if (mc.contains("trials"))
            {
                if (!mc["trials"].is_number_unsigned() && !mc["trials"].is_number_integer())
                    fail("monte_carlo.trials", "must be a non-negative integer");
                config.trials = mc["trials"].get<std::uint64_t>();
            }
        }

        if (root.contains("allow_oversize_rx"))
        {
            if (!root["allow_oversize_rx"].is_boolean())
                fail("allow_oversize_rx", "must be a boolean");
            config.allow_oversize_rx = root["allow_oversize_rx"].get<bool>();
        }

        if (root.contains("two_layer"))
        {
            const json &two = root["two_layer"];
            reject_unknown_keys(two, "two_layer", {"inner_radius"});
            if (two.contains("inner_radius"))
                config.two_layer_inner_radius = get_number(two["inner_radius"], "two_layer.inner_radius");
        }

        if (root.contains("channel_csv"))
            config.channel_csv = root["channel_csv"].get<std::string>();

        if (root.contains("fieldmap"))
        {
            const json &fm = root["fieldmap"];
            reject_unknown_keys(fm, "fieldmap",
                                {"x_min", "x_max", "y_min", "y_max", "nx", "ny", "evaluation", "mode", "power"});
            FieldMapRegion &region = config.fieldmap;
            const bool has_region = fm.contains("x_min") || fm.contains("x_max") ||
                                    fm.contains("y_min") || fm.contains("y_max");
            if (has_region)
            {
                region.explicit_region = true;
                region.x_min = get_number(fm.at("x_min"), "fieldmap.x_min");
                region.x_max = get_number(fm.at("x_max"), "fieldmap.x_max");
                region.y_min = get_number(fm.at("y_min"), "fieldmap.y_min");
                region.y_max = get_number(fm.at("y_max"), "fieldmap.y_max");
            }
            if (fm.contains("nx"))
                region.nx = get_int(fm["nx"], "fieldmap.nx");
            if (fm.contains("ny"))
                region.ny = get_int(fm["ny"], "fieldmap.ny");
            if (fm.contains("evaluation"))
            {
                const std::string name = fm["evaluation"].get<std::string>();
                if (name != "exact" && name != "approx")
                    fail("fieldmap.evaluation", "must be exact or approx");
                region.use_approx = name == "approx";
            }
            if (fm.contains("mode"))
                region.mode = get_int(fm["mode"], "fieldmap.mode");
            if (fm.contains("power"))
                region.power = get_number(fm["power"], "fieldmap.power");
        }

        return config;
    }

    ExperimentConfig load_config(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw ConfigError("config: cannot open " + path);
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return parse_config(buffer.str());
    }

    std::vector<std::string> validate_config(const ExperimentConfig &config)
    {
        std::vector<std::string> warnings;

        if (!(config.lambda > 0.0))
            throw ConfigError("lambda: must be > 0");
        if (config.unit == LengthUnit::wavelength && config.lambda != 1.0)
            throw ConfigError("lambda: must be 1 when unit is wavelength");
        if (!(config.transmit_radius > 0.0))
            throw ConfigError("transmit.radius: must be > 0");
        if (config.transmit_count < 1)
            throw ConfigError("transmit.element_count: must be >= 1");
        if (!(config.receive.radius > 0.0))
            throw ConfigError("receive.radius: must be > 0");
        if (config.receive.element_count < 1)
            throw ConfigError("receive.element_count: must be >= 1");
        if (!(config.distance > 0.0))
            throw ConfigError("distance: must be > 0");
        if (config.mode_powers.size() != 6)
            throw ConfigError("power.per_mode: must list exactly 6 modes");
        for (std::size_t l = 0; l < config.mode_powers.size(); ++l)
            if (config.mode_powers[l] < 0.0)
                throw ConfigError("power.per_mode[" + std::to_string(l) + "]: must be >= 0");
        if (config.snr_db.empty())
            throw ConfigError("snr_db: must not be empty");
        if (config.trials > 0 && config.constellation != Constellation::bpsk)
            throw ConfigError("monte_carlo.trials: bit-error simulation needs the bpsk "
                              "constellation (gaussian inputs are analysis-only)");
        if (!(config.two_layer_inner_radius > 0.0))
            throw ConfigError("two_layer.inner_radius: must be > 0");

        if (config.transmit_count != 6)
            warnings.push_back("transmit.element_count != 6: only triangles, squares, and hexagons "
                               "tessellate; lattice-based receive placement is unreliable");

        const double rt = to_wavelengths(config.transmit_radius, config);
        const double z = to_wavelengths(config.distance, config);
        const double rr = to_wavelengths(config.receive.radius, config);
        if (rt <= 0.5)
            throw ConfigError("transmit.radius: must exceed half a wavelength");
        if (config.baseline == Baseline::fractal && rt < 3.0)
            warnings.push_back("transmit.radius below 3 wavelengths: replica shapes degrade");

        const double rr_bound = 2.0 * std::sqrt(3.0) / 9.0 * z / rt;
        if (rr > rr_bound * (1.0 + 1e-12) && !config.allow_oversize_rx)
            throw ConfigError("receive.radius: exceeds the single-replica bound " +
                              format_double(from_wavelengths(rr_bound, config)) + " " +
                              unit_name(config.unit) + " (pass --allow-oversize-rx to override)");

        if (config.fieldmap.explicit_region)
        {
            if (!(config.fieldmap.x_min < config.fieldmap.x_max) ||
                !(config.fieldmap.y_min < config.fieldmap.y_max))
                throw ConfigError("fieldmap: ranges must be strictly ordered");
        }
        if (config.fieldmap.nx < 0 || config.fieldmap.ny < 0)
            throw ConfigError("fieldmap.nx/ny: must be >= 1");
        if (config.fieldmap.mode < 0 || config.fieldmap.mode >= config.transmit_count)
            throw ConfigError("fieldmap.mode: must lie in [0, transmit.element_count)");

        return warnings;
    }

    std::string config_hash(const ExperimentConfig &config)
    {
        // canonical serialization of the effective config (defaults resolved)
        nlohmann::json canon;
        canon["lambda"] = config.lambda;
        canon["unit"] = unit_name(config.unit);
        canon["seed"] = config.seed;
        canon["baseline"] = baseline_name(config.baseline);
        canon["transmit"] = {{"radius", config.transmit_radius},
                             {"element_count", config.transmit_count}};
        nlohmann::json rx = {{"radius", config.receive.radius},
                             {"element_count", config.receive.element_count},
                             {"angular_offset", config.receive.angular_offset}};
        if (config.receive.use_grid_index)
            rx["grid_index"] = {{"m", config.receive.grid_index.m}, {"n", config.receive.grid_index.n}};
        else
            rx["center"] = {config.receive.center_x, config.receive.center_y};
        canon["receive"] = rx;
        canon["distance"] = config.distance;
        canon["channel"] = config.channel == ChannelVariant::exact ? "exact" : "approx";
        canon["power"] = config.mode_powers;
        canon["constellation"] = config.constellation == Constellation::bpsk ? "bpsk" : "gaussian";
        canon["snr_db"] = config.snr_db;
        canon["monte_carlo"] = config.trials;
        canon["allow_oversize_rx"] = config.allow_oversize_rx;
        canon["two_layer_inner_radius"] = config.two_layer_inner_radius;
        canon["channel_csv"] = config.channel_csv;
        canon["fieldmap"] = {{"explicit", config.fieldmap.explicit_region},
                             {"x_min", config.fieldmap.x_min},
                             {"x_max", config.fieldmap.x_max},
                             {"y_min", config.fieldmap.y_min},
                             {"y_max", config.fieldmap.y_max},
                             {"nx", config.fieldmap.nx},
                             {"ny", config.fieldmap.ny},
                             {"approx", config.fieldmap.use_approx},
                             {"mode", config.fieldmap.mode},
                             {"power", config.fieldmap.power}};

        const std::string dump = canon.dump();
        std::uint64_t hash = 0xcbf29ce484222325ULL; // FNV-1a 64
        for (unsigned char c : dump)
        {
            hash ^= c;
            hash *= 0x100000001b3ULL;
        }
        char buffer[17];
        std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(hash));
        return buffer;
    }

    const char *param_name(SweepSpec::Param param)
    {
        switch (param)
        {
        case SweepSpec::Param::snr:
            return "snr_db";
        case SweepSpec::Param::receive_radius:
            return "receive_radius";
        case SweepSpec::Param::transmit_radius:
            return "transmit_radius";
        case SweepSpec::Param::distance:
            return "distance";
        case SweepSpec::Param::grid_index:
            return "grid_index";
        }
        return "?";
    }

    SweepSpec::Param parse_param(const std::string &name)
    {
        if (name == "snr" || name == "snr_db")
            return SweepSpec::Param::snr;
        if (name == "receive_radius" || name == "rr")
            return SweepSpec::Param::receive_radius;
        if (name == "transmit_radius" || name == "rt")
            return SweepSpec::Param::transmit_radius;
        if (name == "distance" || name == "z")
            return SweepSpec::Param::distance;
        if (name == "grid_index")
            return SweepSpec::Param::grid_index;
        throw ConfigError("sweep.param: unknown parameter '" + name + "'");
    }

    std::vector<double> parse_value_list(const std::string &text)
    {
        std::vector<double> values;
        const auto parse_one = [](const std::string &token) {
            std::size_t used = 0;
            double value = 0.0;
            try
            {
                value = std::stod(token, &used);
            }
            catch (const std::exception &)
            {
                throw ConfigError("sweep.values: '" + token + "' is not a number");
            }
            if (used != token.size())
                throw ConfigError("sweep.values: '" + token + "' is not a number");
            return value;
        };

        if (text.find(':') != std::string::npos)
        {
            std::istringstream in(text);
            std::string start_s, step_s, stop_s;
            if (!std::getline(in, start_s, ':') || !std::getline(in, step_s, ':') ||
                !std::getline(in, stop_s))
                throw ConfigError("sweep.values: range must be start:step:stop");
            const double start = parse_one(start_s);
            const double step = parse_one(step_s);
            const double stop = parse_one(stop_s);
            if (step <= 0.0)
                throw ConfigError("sweep.values: range step must be > 0");
            for (double v = start; v <= stop + 1e-9 * step; v += step)
                values.push_back(v);
            return values;
        }

        std::istringstream in(text);
        std::string token;
        while (std::getline(in, token, ','))
            values.push_back(parse_one(token));
        if (values.empty())
            throw ConfigError("sweep.values: must not be empty");
        return values;
    }

    std::vector<GridIndex> parse_grid_index_list(const std::string &text)
    {
        std::vector<GridIndex> values;
        std::istringstream in(text);
        std::string pair;
        while (std::getline(in, pair, ';'))
        {
            const auto comma = pair.find(',');
            if (comma == std::string::npos)
                throw ConfigError("sweep.values: grid_index entries are 'm,n' separated by ';'");
            try
            {
                values.push_back(GridIndex{std::stoi(pair.substr(0, comma)),
                                           std::stoi(pair.substr(comma + 1))});
            }
            catch (const std::exception &)
            {
                throw ConfigError("sweep.values: '" + pair + "' is not an integer pair");
            }
        }
        if (values.empty())
            throw ConfigError("sweep.values: must not be empty");
        return values;
    }

    int worker_count()
    {
        if (const char *env = std::getenv("FRACTAL_OAM_WORKERS"))
        {
            const int requested = std::atoi(env);
            if (requested >= 1)
                return requested;
        }
        const unsigned hw = std::thread::hardware_concurrency();
        return hw > 0 ? int(hw) : 1;
    }
}
