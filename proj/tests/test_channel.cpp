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

#include "fractal_oam/channel.hpp"
#include "fractal_oam/modem.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>

using namespace fractal_oam;

namespace
{
    Excitation<double> one_hot(int n, int k)
    {
        Excitation<double> e = Excitation<double>::Zero(n);
        e[k] = Complex<double>(1.0, 0.0);
        return e;
    }
}

TEST_SUITE("channel")
{
    TEST_CASE("single element pair matches the point-source closed form")
    {
        const double lambda = 10.0, rt = 30.0, z = 75.0;
        const auto tx = make_uca(rt, 1);
        const auto rx = make_uca(1e-9, 1, Vec3<double>(0.0, 0.0, z));
        // receive element essentially on axis
        const auto h = build_free_space(tx, rx, lambda, ChannelVariant::exact);
        const double d = std::sqrt(rt * rt + z * z);
        const auto expected = std::polar(lambda / (4.0 * M_PI * d), -2.0 * M_PI * d / lambda);
        CHECK(std::abs(h.entries(0, 0) - expected) <= 1e-9 * std::abs(expected));
        CHECK(h.provenance == ChannelProvenance::analytic_exact);
    }

    TEST_CASE("exact entries equal one-hot field evaluations")
    {
        const double lambda = 10.0;
        const auto grid = make_grid(lambda, 30.0, 75.0);
        const auto tx = make_uca(30.0, 6);
        const auto rx = make_uca(grid.rr_bound, 6, grid_center({0, 2}, grid));
        const auto h = build_free_space(tx, rx, lambda, ChannelVariant::exact);
        const auto positions = element_positions(rx);
        for (int nr = 0; nr < 6; ++nr)
        {
            const Vec3<double> p = positions.col(nr);
            const FieldPoint<double> point{std::hypot(p.x(), p.y()), std::atan2(p.y(), p.x()), p.z()};
            for (int nt = 0; nt < 6; ++nt)
            {
                const auto field = field_exact(tx, one_hot(6, nt), point, lambda);
                CHECK(std::abs(h.entries(nr, nt) - field) <= 1e-12 * std::abs(field));
            }
        }
    }

    TEST_CASE("aligned paraxial channel is circulant")
    {
        const double lambda = 10.0;
        const auto grid = make_grid(lambda, 30.0, 75.0);
        const auto tx = make_uca(30.0, 6);
        const auto rx = make_uca(grid.rr_bound, 6, Vec3<double>(0.0, 0.0, 75.0));
        const auto h = build_free_space(tx, rx, lambda, ChannelVariant::approx);
        CHECK(h.provenance == ChannelProvenance::analytic_approx);
        for (int nr = 0; nr < 6; ++nr)
            for (int nt = 0; nt < 6; ++nt)
            {
                const auto rotated = h.entries((nr + 1) % 6, (nt + 1) % 6);
                CHECK(std::abs(h.entries(nr, nt) - rotated) <= 1e-12 * std::abs(rotated));
            }
    }

    TEST_CASE("paraxial magnitudes are constant and scale as 1/z")
    {
        const double lambda = 10.0;
        const auto tx = make_uca(30.0, 6);
        const auto rx1 = make_uca(9.0, 6, Vec3<double>(0.0, 28.867513459481287, 75.0));
        const auto h1 = build_free_space(tx, rx1, lambda, ChannelVariant::approx);
        const double expected = lambda / (4.0 * M_PI * 75.0);
        for (int nr = 0; nr < 6; ++nr)
            for (int nt = 0; nt < 6; ++nt)
                CHECK(std::abs(h1.entries(nr, nt)) == doctest::Approx(expected).epsilon(1e-14));

        const auto rx2 = make_uca(9.0, 6, Vec3<double>(0.0, 28.867513459481287, 150.0));
        const auto h2 = build_free_space(tx, rx2, lambda, ChannelVariant::approx);
        for (int nr = 0; nr < 6; ++nr)
            for (int nt = 0; nt < 6; ++nt)
                CHECK(std::abs(h2.entries(nr, nt)) == doctest::Approx(0.5 * expected).epsilon(1e-15));
    }

    TEST_CASE("to_oam_domain fundamentals")
    {
        const auto pair = make_dft_pair<double>(6, 6);

        // identity channel: the 6-point DFT inverts the 6-point IDFT
        ChannelMatrix<double> identity{ComplexMatrix<double>::Identity(6, 6), ChannelProvenance::ingested};
        const auto oam = to_oam_domain(identity, pair.idft, pair.dft);
        CHECK((oam.entries - ComplexMatrix<double>::Identity(6, 6)).cwiseAbs().maxCoeff() <= 1e-12);
        REQUIRE(oam.diag.size() == 6);
        for (int l = 0; l < 6; ++l)
            CHECK(std::abs(oam.diag[l] - Complex<double>(1.0, 0.0)) <= 1e-12);

        // DFT pair diagonalizes the aligned circulant channel
        const double lambda = 10.0;
        const auto grid = make_grid(lambda, 30.0, 75.0);
        const auto tx = make_uca(30.0, 6);
        const auto rx = make_uca(grid.rr_bound, 6, Vec3<double>(0.0, 0.0, 75.0));
        const auto h = build_free_space(tx, rx, lambda, ChannelVariant::approx);
        const auto aligned = to_oam_domain(h, pair.idft, pair.dft);
        double off_diag = 0.0, diag = 0.0;
        for (int l = 0; l < 6; ++l)
            for (int k = 0; k < 6; ++k)
            {
                if (l == k)
                    diag = std::max(diag, std::abs(aligned.entries(l, k)));
                else
                    off_diag = std::max(off_diag, std::abs(aligned.entries(l, k)));
            }
        CHECK(off_diag <= 1e-10 * diag);

        // dimension checks
        CHECK_THROWS_AS(to_oam_domain(identity, unit_idft<double>(5), pair.dft), DimensionMismatch);
        CHECK_THROWS_AS(to_oam_domain(identity, pair.idft, unit_dft<double>(5)), DimensionMismatch);
    }

    TEST_CASE("unaligned channel regression fixture")
    {
        // lambda = 10 mm, R_t = 30 mm, z = 75 mm, receiver on lattice cell (0, 2)
        // with R_r at the bound. Signal-to-interference ratios frozen from the
        // validated pipeline.
        const double lambda = 10.0;
        const auto grid = make_grid(lambda, 30.0, 75.0);
        const auto tx = make_uca(30.0, 6);
        const auto rx = make_uca(grid.rr_bound, 6, grid_center({0, 2}, grid));
        const auto h = build_free_space(tx, rx, lambda, ChannelVariant::exact);
        const auto pair = make_dft_pair<double>(6, 6);
        const auto oam = to_oam_domain(h, pair.idft, pair.dft);

        const double expected_sir[6] = {
            0.34450536209579585, 0.15140682203456851, 0.070421631104566174,
            0.30569184388297366, 0.070421631104566632, 0.15140682203456846};
        for (int l = 0; l < 6; ++l)
        {
            double interference = 0.0;
            for (int k = 0; k < 6; ++k)
                if (k != l)
                    interference += std::norm(oam.entries(l, k));
            CHECK(interference > 0.0);
            const double sir = std::norm(oam.diag[l]) / interference;
            CHECK(sir == doctest::Approx(expected_sir[l]).epsilon(1e-9));
        }
    }

    TEST_CASE("tall channels keep the top-left mode block")
    {
        const double lambda = 10.0;
        const auto tx = make_uca(30.0, 6);
        const auto rx = make_uca(9.0, 12, Vec3<double>(0.0, 0.0, 75.0));
        const auto h = build_free_space(tx, rx, lambda, ChannelVariant::exact);
        REQUIRE(h.entries.rows() == 12);
        REQUIRE(h.entries.cols() == 6);
        const auto oam = to_oam_domain(h, unit_idft<double>(6), unit_dft<double>(12));
        CHECK(oam.entries.rows() == 12);
        CHECK(oam.entries.cols() == 6);
        CHECK(oam.diag.size() == 6);
        for (int l = 0; l < 6; ++l)
            CHECK(oam.diag[l] == oam.entries(l, l));
    }

    TEST_CASE("unitary transforms preserve the Frobenius norm")
    {
        const double lambda = 10.0;
        const auto grid = make_grid(lambda, 30.0, 75.0);
        const auto tx = make_uca(30.0, 6);
        const auto rx = make_uca(grid.rr_bound, 6, grid_center({1, 1}, grid));
        const auto pair = make_dft_pair<double>(6, 6);
        for (auto variant : {ChannelVariant::exact, ChannelVariant::approx})
        {
            const auto h = build_free_space(tx, rx, lambda, variant);
            const auto oam = to_oam_domain(h, pair.idft, pair.dft);
            CHECK(oam.entries.norm() == doctest::Approx(h.entries.norm()).epsilon(1e-12));
        }
    }

    TEST_CASE("ingest_channel")
    {
        ComplexMatrix<double> m(2, 3);
        m << Complex<double>(1.5, -0.5), Complex<double>(0.0, 0.25), Complex<double>(3.0, 0.0),
            Complex<double>(-1.0, 2.0), Complex<double>(0.125, 0.375), Complex<double>(7.0, -9.0);
        const auto ingested = ingest_channel(m);
        CHECK(ingested.provenance == ChannelProvenance::ingested);
        CHECK(ingested.entries == m);

        // degenerate all-zero channel is valid
        const auto zeros = ingest_channel<double>(ComplexMatrix<double>::Zero(6, 6));
        CHECK(zeros.entries.cwiseAbs().maxCoeff() == 0.0);

        // N_r != N_t accepted
        const auto tall = ingest_channel<double>(ComplexMatrix<double>::Ones(12, 6));
        CHECK(tall.entries.rows() == 12);

        ComplexMatrix<double> nan_matrix = ComplexMatrix<double>::Zero(2, 2);
        nan_matrix(1, 1) = Complex<double>(std::nan(""), 0.0);
        CHECK_THROWS_AS(ingest_channel(nan_matrix), MalformedInput);
        CHECK_THROWS_AS(ingest_channel<double>(ComplexMatrix<double>(0, 0)), MalformedInput);
    }

    TEST_CASE("geometry errors")
    {
        const auto tx = make_uca(30.0, 6);
        const auto behind = make_uca(9.0, 6, Vec3<double>(0.0, 0.0, -5.0));
        CHECK_THROWS_AS(build_free_space(tx, behind, 10.0, ChannelVariant::exact), NonPositiveDistance);

        const auto off_axis_tx = make_uca(30.0, 6, Vec3<double>(4.0, 0.0, 0.0));
        const auto rx = make_uca(9.0, 6, Vec3<double>(0.0, 0.0, 75.0));
        CHECK_THROWS_AS(build_free_space(off_axis_tx, rx, 10.0, ChannelVariant::approx), std::invalid_argument);
        CHECK_NOTHROW(build_free_space(off_axis_tx, rx, 10.0, ChannelVariant::exact));
    }
}
