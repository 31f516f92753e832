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

#include "fractal_oam/harness/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace fractal_oam
{
    namespace
    {
        void write_metadata(std::ostream &out, const FileMetadata &meta)
        {
            out << "# tool: " << kToolVersion << "\n";
            out << "# config_hash: " << meta.config_hash << "\n";
            out << "# seed: " << meta.seed << "\n";
            if (!meta.unit.empty())
                out << "# unit: " << meta.unit << "\n";
        }

        std::ofstream open_for_write(const std::string &path)
        {
            std::ofstream out(path);
            if (!out)
                throw std::runtime_error("cannot open for writing: " + path);
            return out;
        }

        [[noreturn]] void malformed(const std::string &path, std::size_t line, const std::string &message)
        {
            throw MalformedInput(path + ":" + std::to_string(line) + ": " + message);
        }

        // non-comment, non-empty lines with their 1-based line numbers
        std::vector<std::pair<std::size_t, std::string>> read_data_lines(const std::string &path)
        {
            std::ifstream in(path);
            if (!in)
                throw MalformedInput("cannot open: " + path);
            std::vector<std::pair<std::size_t, std::string>> lines;
            std::string line;
            std::size_t number = 0;
            while (std::getline(in, line))
            {
                ++number;
                if (!line.empty() && line.back() == '\r')
                    line.pop_back();
                if (line.empty() || line[0] == '#')
                    continue;
                lines.emplace_back(number, line);
            }
            return lines;
        }

        std::vector<std::string> split_csv(const std::string &line)
        {
            std::vector<std::string> fields;
            std::string field;
            std::istringstream in(line);
            while (std::getline(in, field, ','))
                fields.push_back(field);
            return fields;
        }

        double parse_field_double(const std::string &token, const std::string &path, std::size_t line)
        {
            if (token == "-inf")
                return -std::numeric_limits<double>::infinity();
            std::size_t used = 0;
            double value = 0.0;
            try
            {
                value = std::stod(token, &used);
            }
            catch (const std::exception &)
            {
                malformed(path, line, "'" + token + "' is not a number");
            }
            if (used != token.size())
                malformed(path, line, "'" + token + "' is not a number");
            return value;
        }

        long parse_field_index(const std::string &token, const std::string &path, std::size_t line)
        {
            std::size_t used = 0;
            long value = 0;
            try
            {
                value = std::stol(token, &used);
            }
            catch (const std::exception &)
            {
                malformed(path, line, "'" + token + "' is not an integer");
            }
            if (used != token.size() || value < 0)
                malformed(path, line, "'" + token + "' is not a non-negative integer");
            return value;
        }
    }

    std::string format_double(double value)
    {
        if (std::isinf(value))
            return value > 0 ? "inf" : "-inf";
        char buffer[32];
        std::snprintf(buffer, sizeof(buffer), "%.17g", value);
        return buffer;
    }

    void write_curve_csv(const CurveTable &table, std::ostream &out)
    {
        write_metadata(out, table.meta);
        for (std::size_t c = 0; c < table.columns.size(); ++c)
            out << (c ? "," : "") << table.columns[c];
        out << "\n";
        for (const auto &row : table.rows)
        {
            for (std::size_t c = 0; c < row.size(); ++c)
                out << (c ? "," : "") << format_double(row[c]);
            out << "\n";
        }
    }

    void write_curve_csv(const CurveTable &table, const std::string &path)
    {
        auto out = open_for_write(path);
        write_curve_csv(table, out);
    }

    void export_field_map_csv(const FieldMap<double> &map, const FileMetadata &meta,
                              const std::string &path, double unit_scale)
    {
        auto out = open_for_write(path);
        write_metadata(out, meta);
        out << "x,y,power_db,phase_rad\n";
        for (int iy = 0; iy < map.ny; ++iy)
            for (int ix = 0; ix < map.nx; ++ix)
            {
                const auto value = map.at(ix, iy);
                const double magnitude = std::abs(value);
                const double power_db =
                    magnitude > 0.0 ? 20.0 * std::log10(magnitude) : -std::numeric_limits<double>::infinity();
                out << format_double(map.pixel_x(ix) * unit_scale) << ","
                    << format_double(map.pixel_y(iy) * unit_scale) << ","
                    << format_double(power_db) << ","
                    << format_double(std::arg(value)) << "\n";
            }
    }

    void export_field_map_pgm(const FieldMap<double> &map, const FileMetadata &meta,
                              const std::string &path)
    {
        double peak = 0.0;
        for (Eigen::Index i = 0; i < map.samples.size(); ++i)
            peak = std::max(peak, std::norm(map.samples[i]));

        auto out = open_for_write(path);
        out << "P2\n";
        write_metadata(out, meta);
        out << map.nx << " " << map.ny << "\n255\n";
        for (int iy = map.ny - 1; iy >= 0; --iy) // +y at the top of the image
        {
            for (int ix = 0; ix < map.nx; ++ix)
            {
                const int level =
                    peak > 0.0 ? int(std::lround(255.0 * std::norm(map.at(ix, iy)) / peak)) : 0;
                out << (ix ? " " : "") << level;
            }
            out << "\n";
        }
    }

    void export_field_map(const FieldMap<double> &map, const FileMetadata &meta,
                          const std::string &csv_path, const std::string &pgm_path,
                          double unit_scale)
    {
        export_field_map_csv(map, meta, csv_path, unit_scale);
        export_field_map_pgm(map, meta, pgm_path);
    }

    std::vector<FieldMapRow> import_field_map_csv(const std::string &path)
    {
        const auto lines = read_data_lines(path);
        if (lines.empty())
            throw MalformedInput(path + ": empty file");
        if (lines.front().second != "x,y,power_db,phase_rad")
            malformed(path, lines.front().first, "expected header 'x,y,power_db,phase_rad'");

        std::vector<FieldMapRow> rows;
        for (std::size_t i = 1; i < lines.size(); ++i)
        {
            const auto &[number, line] = lines[i];
            const auto fields = split_csv(line);
            if (fields.size() != 4)
                malformed(path, number, "expected 4 fields");
            rows.push_back(FieldMapRow{parse_field_double(fields[0], path, number),
                                       parse_field_double(fields[1], path, number),
                                       parse_field_double(fields[2], path, number),
                                       parse_field_double(fields[3], path, number)});
        }
        return rows;
    }

    void export_channel_csv(const ChannelMatrix<double> &channel, const FileMetadata &meta,
                            const std::string &path)
    {
        auto out = open_for_write(path);
        write_metadata(out, meta);
        out << "nr,nt,re,im\n";
        for (Eigen::Index nr = 0; nr < channel.entries.rows(); ++nr)
            for (Eigen::Index nt = 0; nt < channel.entries.cols(); ++nt)
                out << nr << "," << nt << ","
                    << format_double(channel.entries(nr, nt).real()) << ","
                    << format_double(channel.entries(nr, nt).imag()) << "\n";
    }

    ChannelMatrix<double> import_channel_csv(const std::string &path)
    {
        const auto lines = read_data_lines(path);
        if (lines.empty())
            throw MalformedInput(path + ": empty file");
        if (lines.front().second != "nr,nt,re,im")
            malformed(path, lines.front().first, "expected header 'nr,nt,re,im'");

        std::map<std::pair<long, long>, Complex<double>> entries;
        long max_nr = -1, max_nt = -1;
        for (std::size_t i = 1; i < lines.size(); ++i)
        {
            const auto &[number, line] = lines[i];
            const auto fields = split_csv(line);
            if (fields.size() != 4)
                malformed(path, number, "expected 4 fields");
            const long nr = parse_field_index(fields[0], path, number);
            const long nt = parse_field_index(fields[1], path, number);
            const double re = parse_field_double(fields[2], path, number);
            const double im = parse_field_double(fields[3], path, number);
            if (!std::isfinite(re) || !std::isfinite(im))
                malformed(path, number, "entries must be finite");
            if (!entries.emplace(std::make_pair(nr, nt), Complex<double>(re, im)).second)
                malformed(path, number, "duplicate entry for (nr=" + std::to_string(nr) + ", nt=" +
                                            std::to_string(nt) + ")");
            max_nr = std::max(max_nr, nr);
            max_nt = std::max(max_nt, nt);
        }
        if (entries.empty())
            throw MalformedInput(path + ": no channel entries");

        ComplexMatrix<double> matrix(max_nr + 1, max_nt + 1);
        for (long nr = 0; nr <= max_nr; ++nr)
            for (long nt = 0; nt <= max_nt; ++nt)
            {
                const auto it = entries.find(std::make_pair(nr, nt));
                if (it == entries.end())
                    throw MalformedInput(path + ": missing entry for (nr=" + std::to_string(nr) +
                                         ", nt=" + std::to_string(nt) + ")");
                matrix(nr, nt) = it->second;
            }
        return ingest_channel(matrix);
    }
}
