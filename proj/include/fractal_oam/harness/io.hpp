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
//
// File formats. All writers are deterministic: reals print with 17 significant
// digits (lossless double round trip) and every file carries the config hash
// and seed in '#' comment lines, never timestamps.

#ifndef FRACTAL_OAM_HARNESS_IO_HPP
#define FRACTAL_OAM_HARNESS_IO_HPP

#include "fractal_oam/channel.hpp"
#include "fractal_oam/field.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace fractal_oam
{
    inline constexpr const char *kToolVersion = "fractal-oam 0.1.0";

    struct FileMetadata
    {
        std::string config_hash;
        std::uint64_t seed = 0;
        std::string unit; // unit of the length columns, informational
    };

    // Rectangular numeric table with named columns, written as CSV.
    struct CurveTable
    {
        std::vector<std::string> columns;
        std::vector<std::vector<double>> rows;
        FileMetadata meta;
        std::vector<std::string> warnings; // diagnostics from the runs, not serialized
    };

    std::string format_double(double value); // %.17g

    void write_curve_csv(const CurveTable &table, std::ostream &out);
    void write_curve_csv(const CurveTable &table, const std::string &path);

    // Field-map CSV: one row per pixel, row-major, header "x,y,power_db,phase_rad".
    // power_db is absolute (10*log10 |E|^2; "-inf" for exact zeros), phase in
    // radians. Coordinates are pixel centers in the units recorded in meta.
    void export_field_map_csv(const FieldMap<double> &map, const FileMetadata &meta,
                              const std::string &path, double unit_scale = 1.0);

    // Plain-text graymap (P2, 8-bit). Pixel value = round(255 * |E|^2 / max
    // |E|^2); rows run from y_max down to y_min so +y is the top of the image.
    void export_field_map_pgm(const FieldMap<double> &map, const FileMetadata &meta,
                              const std::string &path);

    void export_field_map(const FieldMap<double> &map, const FileMetadata &meta,
                          const std::string &csv_path, const std::string &pgm_path,
                          double unit_scale = 1.0);

    struct FieldMapRow
    {
        double x = 0.0, y = 0.0;
        double power_db = 0.0, phase_rad = 0.0;
    };

    // Reads back an exported field-map CSV (round-trip checks, replotting).
    std::vector<FieldMapRow> import_field_map_csv(const std::string &path);

    // Channel matrix CSV, header "nr,nt,re,im", zero-based indices, one line
    // per entry. Import requires a dense index set and rejects duplicates,
    // reporting the offending line number.
    void export_channel_csv(const ChannelMatrix<double> &channel, const FileMetadata &meta,
                            const std::string &path);
    ChannelMatrix<double> import_channel_csv(const std::string &path);
}

#endif
