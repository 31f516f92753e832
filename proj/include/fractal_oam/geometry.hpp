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

#ifndef FRACTAL_OAM_GEOMETRY_HPP
#define FRACTAL_OAM_GEOMETRY_HPP

#include "fractal_oam/types.hpp"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace fractal_oam
{
    // Uniform circular array: element_count elements equally spaced on a circle
    // of the given radius around center, in the plane z = center.z. Element k
    // sits at angle 2*pi*k/element_count + element_angular_offset from the +x axis.
    template <typename Scalar>
    struct UcaLayout
    {
        Scalar radius = Scalar(0);
        int element_count = 0;
        Vec3<Scalar> center = Vec3<Scalar>::Zero();
        Scalar element_angular_offset = Scalar(0);
    };

    // Row/column index of a cell center in the hexagonal beam lattice.
    struct GridIndex
    {
        int m = 0; // row
        int n = 0; // column
    };

    // Hexagonal lattice of beam replica centers on the receive plane for a
    // (lambda, transmit_radius, distance) triple. cell_radius is the hexagon
    // side length of one replica; rr_bound is the largest receive UCA radius
    // that stays inside a single replica.
    template <typename Scalar>
    struct FractalGrid
    {
        Scalar lambda = Scalar(0);
        Scalar transmit_radius = Scalar(0);
        Scalar distance = Scalar(0);
        Scalar cell_radius = Scalar(0);
        Scalar rr_bound = Scalar(0);
    };

    // Validating factory for UcaLayout. Throws NonPositiveInput.
    template <typename Scalar>
    UcaLayout<Scalar> make_uca(Scalar radius, int element_count,
                               const Vec3<Scalar> &center = Vec3<Scalar>::Zero(),
                               Scalar element_angular_offset = Scalar(0))
    {
        if (!(radius > Scalar(0)))
            throw NonPositiveInput("UCA radius must be > 0");
        if (element_count < 1)
            throw NonPositiveInput("UCA element count must be >= 1");
        return UcaLayout<Scalar>{radius, element_count, center, element_angular_offset};
    }

    // Angle of element k from the +x axis.
    template <typename Scalar>
    Scalar element_angle(const UcaLayout<Scalar> &uca, int k)
    {
        const Scalar two_pi = Scalar(2) * Scalar(EIGEN_PI);
        return two_pi * Scalar(k) / Scalar(uca.element_count) + uca.element_angular_offset;
    }

    // Cartesian position of element k.
    template <typename Scalar>
    Vec3<Scalar> element_position(const UcaLayout<Scalar> &uca, int k)
    {
        const Scalar a = element_angle(uca, k);
        return Vec3<Scalar>(uca.center.x() + uca.radius * std::cos(a),
                            uca.center.y() + uca.radius * std::sin(a),
                            uca.center.z());
    }

    // All element positions as columns of a 3 x N matrix.
    template <typename Scalar>
    PositionMatrix<Scalar> element_positions(const UcaLayout<Scalar> &uca)
    {
        PositionMatrix<Scalar> pos(3, uca.element_count);
        for (int k = 0; k < uca.element_count; ++k)
            pos.col(k) = element_position(uca, k);
        return pos;
    }

    // Builds the fractal grid for a (lambda, transmit_radius, distance) triple:
    //   cell_radius = (2/3) * lambda * distance / transmit_radius
    //   rr_bound    = (sqrt(3)/3) * cell_radius
    // Throws NonPositiveInput for non-positive inputs and std::invalid_argument
    // for transmit_radius <= lambda/2 (no replicas form below half-wavelength
    // element spacing). Writes a diagnostic to *warning for transmit_radius
    // < 3*lambda, where replica shapes are still poorly formed.
    template <typename Scalar>
    FractalGrid<Scalar> make_grid(Scalar lambda, Scalar transmit_radius, Scalar distance,
                                  std::string *warning = nullptr)
    {
        if (!(lambda > Scalar(0)))
            throw NonPositiveInput("make_grid: lambda must be > 0");
        if (!(transmit_radius > Scalar(0)))
            throw NonPositiveInput("make_grid: transmit_radius must be > 0");
        if (!(distance > Scalar(0)))
            throw NonPositiveInput("make_grid: distance must be > 0");
        if (transmit_radius <= lambda / Scalar(2))
            throw std::invalid_argument("make_grid: transmit_radius must exceed lambda/2");
        if (warning != nullptr && transmit_radius < Scalar(3) * lambda)
            *warning = "transmit_radius below 3*lambda; replica shapes degrade";

        FractalGrid<Scalar> grid;
        grid.lambda = lambda;
        grid.transmit_radius = transmit_radius;
        grid.distance = distance;
        grid.cell_radius = Scalar(2) / Scalar(3) * lambda * distance / transmit_radius;
        grid.rr_bound = std::sqrt(Scalar(3)) / Scalar(3) * grid.cell_radius;
        return grid;
    }

    // Center of lattice cell (m, n) on the receive plane:
    //   x = m * 2*lambda*z/R_t            (n even)
    //   x = (1/2 + m) * 2*lambda*z/R_t    (n odd)
    //   y = n * (sqrt(3)/3) * lambda*z/R_t
    template <typename Scalar>
    Vec3<Scalar> grid_center(const GridIndex &idx, const FractalGrid<Scalar> &grid)
    {
        const Scalar unit = grid.lambda * grid.distance / grid.transmit_radius;
        const bool odd = (idx.n % 2) != 0;
        const Scalar x = odd ? (Scalar(0.5) + Scalar(idx.m)) * Scalar(2) * unit
                             : Scalar(idx.m) * Scalar(2) * unit;
        const Scalar y = Scalar(idx.n) * std::sqrt(Scalar(3)) / Scalar(3) * unit;
        return Vec3<Scalar>(x, y, grid.distance);
    }

    // All centers with |m| <= max_abs_m and |n| <= max_abs_n, row-major
    // (m outer, n inner, both ascending).
    template <typename Scalar>
    std::vector<std::pair<GridIndex, Vec3<Scalar>>>
    enumerate_centers(const FractalGrid<Scalar> &grid, int max_abs_m, int max_abs_n)
    {
        if (max_abs_m < 0 || max_abs_n < 0)
            throw NonPositiveInput("enumerate_centers: bounds must be >= 0");
        std::vector<std::pair<GridIndex, Vec3<Scalar>>> centers;
        centers.reserve(std::size_t(2 * max_abs_m + 1) * std::size_t(2 * max_abs_n + 1));
        for (int m = -max_abs_m; m <= max_abs_m; ++m)
            for (int n = -max_abs_n; n <= max_abs_n; ++n)
            {
                const GridIndex idx{m, n};
                centers.emplace_back(idx, grid_center(idx, grid));
            }
        return centers;
    }

    // Transmit radius that produces the desired cell radius at the given
    // distance: R_t = (2/3) * lambda * distance / cell_radius. Exact inverse
    // of make_grid's cell_radius.
    template <typename Scalar>
    Scalar required_transmit_radius(Scalar lambda, Scalar distance, Scalar desired_cell_radius)
    {
        if (!(lambda > Scalar(0)) || !(distance > Scalar(0)) || !(desired_cell_radius > Scalar(0)))
            throw NonPositiveInput("required_transmit_radius: inputs must be > 0");
        return Scalar(2) / Scalar(3) * lambda * distance / desired_cell_radius;
    }

    // Element coordinates of a receive UCA, Cartesian and cylindrical
    // (rho, phi, z). phi uses the full-quadrant arctangent.
    template <typename Scalar>
    std::pair<std::vector<Vec3<Scalar>>, std::vector<Vec3<Scalar>>>
    receive_element_coordinates(const UcaLayout<Scalar> &uca)
    {
        std::vector<Vec3<Scalar>> cartesian(uca.element_count);
        std::vector<Vec3<Scalar>> cylindrical(uca.element_count);
        for (int k = 0; k < uca.element_count; ++k)
        {
            const Vec3<Scalar> p = element_position(uca, k);
            cartesian[k] = p;
            cylindrical[k] = Vec3<Scalar>(std::hypot(p.x(), p.y()),
                                          std::atan2(p.y(), p.x()),
                                          p.z());
        }
        return {std::move(cartesian), std::move(cylindrical)};
    }
}

#endif
