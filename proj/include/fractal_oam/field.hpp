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
// Complex field evaluation on receive planes: exact spherical-wave summation
// over array elements, the paraxial (binomial-expansion) approximation, and
// rectangular raster maps. Lengths are in wavelengths unless a wavelength
// argument says otherwise; field amplitudes follow the lambda/(4*pi*d)
// point-source convention and are relative, not calibrated to watts.

#ifndef FRACTAL_OAM_FIELD_HPP
#define FRACTAL_OAM_FIELD_HPP

#include "fractal_oam/geometry.hpp"
#include "fractal_oam/types.hpp"

#include <cmath>
#include <thread>
#include <vector>

namespace fractal_oam
{
    // Cylindrical receive point (rho >= 0, z > 0).
    template <typename Scalar>
    struct FieldPoint
    {
        Scalar rho = Scalar(0);
        Scalar phi = Scalar(0);
        Scalar z = Scalar(0);
    };

    // Per-element complex amplitudes feeding an array.
    template <typename Scalar>
    using Excitation = ComplexVector<Scalar>;

    // Arbitrary radiator set, one element per column. Generalizes UcaLayout for
    // sources that are not a single circle (e.g. the two-layer baseline array).
    template <typename Scalar>
    struct ElementArray
    {
        PositionMatrix<Scalar> positions;
    };

    // Two-layer baseline transmitter: six sub-UCAs of inner_count elements,
    // sub-UCA centers on a circle of outer_radius at pi/3 steps. Elements of
    // sub-array i occupy columns [i*inner_count, (i+1)*inner_count).
    template <typename Scalar>
    struct CompositeTwoLayer
    {
        Scalar outer_radius = Scalar(0);
        Scalar inner_radius = Scalar(0);
        int inner_count = 0;
        ElementArray<Scalar> elements;
    };

    template <typename Scalar>
    Vec3<Scalar> to_cartesian(const FieldPoint<Scalar> &p)
    {
        return Vec3<Scalar>(p.rho * std::cos(p.phi), p.rho * std::sin(p.phi), p.z);
    }

    // True Euclidean distance from an element to a receive point.
    template <typename Scalar>
    Scalar path_length_exact(const Vec3<Scalar> &element_position, const FieldPoint<Scalar> &point)
    {
        return (to_cartesian(point) - element_position).norm();
    }

    // Second-order binomial expansion of the path length for an element at
    // (transmit_radius, element_angle, 0):
    //   z + (rho^2 + R_t^2 - 2*rho*R_t*cos(phi - element_angle)) / (2z)
    template <typename Scalar>
    Scalar path_length_approx(Scalar element_angle, Scalar transmit_radius,
                              const FieldPoint<Scalar> &point)
    {
        const Scalar cross = Scalar(2) * point.rho * transmit_radius * std::cos(point.phi - element_angle);
        return point.z + (point.rho * point.rho + transmit_radius * transmit_radius - cross) / (Scalar(2) * point.z);
    }

    // Spherical point-source response at distance d. Shared by the field and
    // channel modules so both produce identical physics.
    template <typename Scalar>
    Complex<Scalar> point_source_response(Scalar d, Scalar lambda)
    {
        const Scalar amplitude = lambda / (Scalar(4) * Scalar(EIGEN_PI) * d);
        const Scalar phase = -Scalar(2) * Scalar(EIGEN_PI) * d / lambda;
        return std::polar(amplitude, phase);
    }

    // Exact field: sum_k s_k * (lambda/(4*pi*d_k)) * exp(-j*2*pi*d_k/lambda).
    template <typename Scalar>
    Complex<Scalar> field_exact(const ElementArray<Scalar> &array, const Excitation<Scalar> &excitation,
                                const FieldPoint<Scalar> &point, Scalar lambda = Scalar(1))
    {
        if (array.positions.cols() != excitation.size())
            throw DimensionMismatch("field_exact: excitation length must match element count");
        const Vec3<Scalar> p = to_cartesian(point);
        Complex<Scalar> sum(0, 0);
        for (Eigen::Index k = 0; k < excitation.size(); ++k)
        {
            const Scalar d = (p - array.positions.col(k)).norm();
            sum += excitation[k] * point_source_response(d, lambda);
        }
        return sum;
    }

    template <typename Scalar>
    Complex<Scalar> field_exact(const UcaLayout<Scalar> &uca, const Excitation<Scalar> &excitation,
                                const FieldPoint<Scalar> &point, Scalar lambda = Scalar(1))
    {
        if (uca.element_count != excitation.size())
            throw DimensionMismatch("field_exact: excitation length must match element count");
        const Vec3<Scalar> p = to_cartesian(point);
        Complex<Scalar> sum(0, 0);
        for (int k = 0; k < uca.element_count; ++k)
        {
            const Scalar d = (p - element_position(uca, k)).norm();
            sum += excitation[k] * point_source_response(d, lambda);
        }
        return sum;
    }

    // Paraxial field: constant amplitude lambda/(4*pi*z), phases from
    // path_length_approx. The point is taken relative to the array center, so
    // this reduces to the standard centered form when uca.center is the origin.
    template <typename Scalar>
    Complex<Scalar> field_approx(const UcaLayout<Scalar> &uca, const Excitation<Scalar> &excitation,
                                 const FieldPoint<Scalar> &point, Scalar lambda = Scalar(1))
    {
        if (uca.element_count != excitation.size())
            throw DimensionMismatch("field_approx: excitation length must match element count");
        const Vec3<Scalar> p = to_cartesian(point);
        const Scalar dx = p.x() - uca.center.x();
        const Scalar dy = p.y() - uca.center.y();
        const FieldPoint<Scalar> rel{std::hypot(dx, dy), std::atan2(dy, dx), p.z() - uca.center.z()};

        const Scalar amplitude = lambda / (Scalar(4) * Scalar(EIGEN_PI) * rel.z);
        const Scalar wavenumber = Scalar(2) * Scalar(EIGEN_PI) / lambda;
        Complex<Scalar> sum(0, 0);
        for (int k = 0; k < uca.element_count; ++k)
        {
            const Scalar d = path_length_approx(element_angle(uca, k), uca.radius, rel);
            sum += excitation[k] * std::polar(Scalar(1), -wavenumber * d);
        }
        return amplitude * sum;
    }

    // Rectangular raster over [x_min, x_max] x [y_min, y_max] at plane z,
    // sampled at pixel centers.
    template <typename Scalar>
    struct MapSpec
    {
        Scalar z = Scalar(0);
        Scalar x_min = Scalar(0), x_max = Scalar(0);
        Scalar y_min = Scalar(0), y_max = Scalar(0);
        int nx = 0, ny = 0;
        bool use_approx = false;
    };

    // Raster of complex field samples, row-major: samples[iy * nx + ix] holds
    // the pixel centered at (x_min + (ix+0.5)*dx, y_min + (iy+0.5)*dy).
    template <typename Scalar>
    struct FieldMap
    {
        Scalar z = Scalar(0);
        Scalar x_min = Scalar(0), x_max = Scalar(0);
        Scalar y_min = Scalar(0), y_max = Scalar(0);
        int nx = 0, ny = 0;
        ComplexVector<Scalar> samples;

        Scalar pixel_x(int ix) const { return x_min + (Scalar(ix) + Scalar(0.5)) * (x_max - x_min) / Scalar(nx); }
        Scalar pixel_y(int iy) const { return y_min + (Scalar(iy) + Scalar(0.5)) * (y_max - y_min) / Scalar(ny); }
        const Complex<Scalar> &at(int ix, int iy) const { return samples[Eigen::Index(iy) * nx + ix]; }
    };

    template <typename Scalar>
    void validate_map_spec(const MapSpec<Scalar> &spec)
    {
        if (spec.nx < 1 || spec.ny < 1)
            throw std::invalid_argument("map spec: nx and ny must be >= 1");
        if (!(spec.x_min < spec.x_max) || !(spec.y_min < spec.y_max))
            throw std::invalid_argument("map spec: ranges must be strictly ordered");
        if (!(spec.z > Scalar(0)))
            throw NonPositiveDistance("map spec: z must be > 0");
    }

    namespace detail
    {
        // Evaluates pixels [begin, end) of a row-major raster. Pixels are
        // independent, so any partition of the index range yields bit-identical
        // samples.
        template <typename Scalar, typename EvalFn>
        void render_range(FieldMap<Scalar> &map, const EvalFn &eval, Eigen::Index begin, Eigen::Index end)
        {
            for (Eigen::Index i = begin; i < end; ++i)
            {
                const int ix = int(i % map.nx);
                const int iy = int(i / map.nx);
                const Scalar x = map.pixel_x(ix);
                const Scalar y = map.pixel_y(iy);
                const FieldPoint<Scalar> point{std::hypot(x, y), std::atan2(y, x), map.z};
                map.samples[i] = eval(point);
            }
        }

        template <typename Scalar, typename EvalFn>
        FieldMap<Scalar> render(const MapSpec<Scalar> &spec, const EvalFn &eval, int workers)
        {
            validate_map_spec(spec);
            FieldMap<Scalar> map{spec.z, spec.x_min, spec.x_max, spec.y_min, spec.y_max,
                                 spec.nx, spec.ny, {}};
            const Eigen::Index total = Eigen::Index(spec.nx) * spec.ny;
            map.samples.resize(total);
            if (workers <= 1 || total < 2)
            {
                render_range(map, eval, 0, total);
                return map;
            }
            const int n_threads = int(std::min<Eigen::Index>(workers, total));
            std::vector<std::thread> pool;
            pool.reserve(n_threads);
            const Eigen::Index chunk = (total + n_threads - 1) / n_threads;
            for (int t = 0; t < n_threads; ++t)
            {
                const Eigen::Index begin = t * chunk;
                const Eigen::Index end = std::min(total, begin + chunk);
                pool.emplace_back([&map, &eval, begin, end] { render_range(map, eval, begin, end); });
            }
            for (auto &th : pool)
                th.join();
            return map;
        }
    }

    template <typename Scalar>
    FieldMap<Scalar> render_field_map(const UcaLayout<Scalar> &uca, const Excitation<Scalar> &excitation,
                                      const MapSpec<Scalar> &spec, Scalar lambda = Scalar(1), int workers = 1)
    {
        if (spec.use_approx)
            return detail::render(spec, [&](const FieldPoint<Scalar> &p) { return field_approx(uca, excitation, p, lambda); }, workers);
        return detail::render(spec, [&](const FieldPoint<Scalar> &p) { return field_exact(uca, excitation, p, lambda); }, workers);
    }

    // General-array raster; exact evaluation only (the paraxial form is tied to
    // a single circle).
    template <typename Scalar>
    FieldMap<Scalar> render_field_map(const ElementArray<Scalar> &array, const Excitation<Scalar> &excitation,
                                      const MapSpec<Scalar> &spec, Scalar lambda = Scalar(1), int workers = 1)
    {
        if (spec.use_approx)
            throw std::invalid_argument("render_field_map: approximate evaluation needs a single UCA");
        return detail::render(spec, [&](const FieldPoint<Scalar> &p) { return field_exact(array, excitation, p, lambda); }, workers);
    }

    // Two-layer baseline array: six inner UCAs of inner_count elements, inner
    // centers on the outer circle at pi/3 steps, all in the z = 0 plane.
    template <typename Scalar>
    CompositeTwoLayer<Scalar> composite_two_layer_layout(Scalar outer_radius, Scalar inner_radius,
                                                         int inner_count)
    {
        if (!(outer_radius > Scalar(0)) || !(inner_radius > Scalar(0)))
            throw NonPositiveInput("composite_two_layer_layout: radii must be > 0");
        if (inner_count < 1)
            throw NonPositiveInput("composite_two_layer_layout: inner_count must be >= 1");

        CompositeTwoLayer<Scalar> composite{outer_radius, inner_radius, inner_count, {}};
        composite.elements.positions.resize(3, 6 * inner_count);
        for (int i = 0; i < 6; ++i)
        {
            const Scalar a = Scalar(EIGEN_PI) / Scalar(3) * Scalar(i);
            const Vec3<Scalar> sub_center(outer_radius * std::cos(a), outer_radius * std::sin(a), Scalar(0));
            const UcaLayout<Scalar> sub = make_uca(inner_radius, inner_count, sub_center);
            for (int k = 0; k < inner_count; ++k)
                composite.elements.positions.col(i * inner_count + k) = element_position(sub, k);
        }
        return composite;
    }

    // Mode-l excitation of the two-layer array: every sub-UCA carries the mode
    // phase ramp exp(j*2*pi*k*l/inner_count); each element radiates 1/6 of the
    // power a single-layer element would, so total power equals `power`.
    template <typename Scalar>
    Excitation<Scalar> composite_mode_excitation(const CompositeTwoLayer<Scalar> &composite, int mode,
                                                 Scalar power = Scalar(1))
    {
        const int n = composite.inner_count;
        const Scalar amplitude = std::sqrt(power / Scalar(6 * n));
        Excitation<Scalar> excitation(6 * n);
        for (int i = 0; i < 6; ++i)
            for (int k = 0; k < n; ++k)
            {
                const Scalar phase = Scalar(2) * Scalar(EIGEN_PI) * Scalar(k) * Scalar(mode) / Scalar(n);
                excitation[i * n + k] = std::polar(amplitude, phase);
            }
        return excitation;
    }

    // Columns are unit-power mode excitations of the two-layer array; an
    // isometry (W^H W = I) when inner_count is 6, mirroring the single-layer
    // unit IDFT so the modem treats both transmitters alike.
    template <typename Scalar>
    ComplexMatrix<Scalar> composite_modulation_matrix(const CompositeTwoLayer<Scalar> &composite)
    {
        ComplexMatrix<Scalar> w(6 * composite.inner_count, 6);
        for (int l = 0; l < 6; ++l)
            w.col(l) = composite_mode_excitation(composite, l, Scalar(1));
        return w;
    }
}

#endif
