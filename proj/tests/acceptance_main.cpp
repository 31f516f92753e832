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
// Acceptance suite: ten end-to-end checks of the published link behavior, one
// pass/fail line each. Exit code is the number of failed checks.

#include "fractal_oam/harness/config.hpp"
#include "fractal_oam/harness/run.hpp"
#include "fractal_oam/metrics.hpp"
#include "fractal_oam/modem.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace fractal_oam;

namespace
{
    struct Outcome
    {
        bool pass = true;
        std::string detail;
    };

    struct Check
    {
        std::string name;
        double budget_seconds;
        std::function<Outcome()> run;
    };

    std::string fmt(double value, const char *format = "%.4g")
    {
        char buffer[64];
        std::snprintf(buffer, sizeof(buffer), format, value);
        return buffer;
    }

    ExperimentConfig paper_setup()
    {
        // lambda = 10 mm, R_t = 150 lambda, z = 1000 lambda, R_r = 1.67 lambda
        ExperimentConfig config;
        config.unit = LengthUnit::millimeter;
        config.lambda = 10.0;
        config.transmit_radius = 1500.0;
        config.distance = 10000.0;
        config.receive.radius = 16.7;
        config.snr_db = {20.0};
        return config;
    }

    std::vector<double> capacity_column(const CurveTable &table)
    {
        std::vector<double> capacities;
        std::size_t column = 0;
        for (std::size_t c = 0; c < table.columns.size(); ++c)
            if (table.columns[c] == "capacity")
                column = c;
        for (const auto &row : table.rows)
            capacities.push_back(row[column]);
        return capacities;
    }

    // ---- 1. grid geometry reproduction --------------------------------------

    Outcome check_grid_geometry()
    {
        const auto grid = make_grid(10.0, 30.0, 75.0);
        Outcome outcome;

        if (std::abs(grid.rr_bound - 9.62) > 0.01)
        {
            outcome.pass = false;
            outcome.detail += "rr_bound " + fmt(grid.rr_bound) + " mm not within 0.01 of 9.62; ";
        }

        const double expected[][2] = {{25.0, 14.43},  {-25.0, 14.43}, {25.0, -14.43},
                                      {-25.0, -14.43}, {0.0, 28.87},   {0.0, -28.87}};
        const auto centers = enumerate_centers(grid, 1, 2);
        int found = 0;
        for (const auto &[x, y] : expected)
            for (const auto &[idx, c] : centers)
                if (std::abs(c.x() - x) <= 0.01 && std::abs(c.y() - y) <= 0.01 &&
                    std::abs(c.z() - 75.0) <= 0.01)
                {
                    ++found;
                    break;
                }
        if (found != 6)
        {
            outcome.pass = false;
            outcome.detail += "only " + std::to_string(found) + "/6 published centers found; ";
        }
        if (outcome.pass)
            outcome.detail = "rr_bound " + fmt(grid.rr_bound, "%.4f") +
                             " mm and all 6 published centers within 0.01 mm";
        return outcome;
    }

    // ---- 2. receive-radius bound --------------------------------------------

    Outcome check_rr_bound()
    {
        const auto grid = make_grid(1.0, 150.0, 1000.0);
        Outcome outcome;
        outcome.pass = std::abs(grid.rr_bound - 2.566) <= 1e-3 && grid.rr_bound <= 2.57;
        outcome.detail = "rr_bound " + fmt(grid.rr_bound, "%.6f") +
                         " lambda (target 2.566, sweep cap 2.57)";
        return outcome;
    }

    // ---- 3. null at every lattice center ------------------------------------

    Outcome check_null_at_centers()
    {
        const double lambda = 1.0;
        const auto grid = make_grid(lambda, 150.0, 1000.0);
        const auto tx = make_uca(150.0, 6);
        const auto centers = enumerate_centers(grid, 1, 2);
        const double amplitude_floor = 1e-12 * lambda / (4.0 * M_PI * grid.distance);

        Outcome outcome;
        double worst_approx = 0.0;
        double worst_exact = 0.0;
        int worst_mode = 0;
        GridIndex worst_idx{0, 0};

        for (int mode = 1; mode <= 5; ++mode)
        {
            const auto excitation = mode_excitation<double>(6, mode);
            for (const auto &[idx, c] : centers)
            {
                const FieldPoint<double> center{std::hypot(c.x(), c.y()), std::atan2(c.y(), c.x()),
                                                c.z()};
                worst_approx =
                    std::max(worst_approx, std::abs(field_approx(tx, excitation, center, lambda)));

                const double center_mag = std::abs(field_exact(tx, excitation, center, lambda));
                double ring_peak = 0.0;
                for (int i = 0; i < 360; ++i)
                {
                    const double a = 2.0 * M_PI * i / 360.0;
                    const double x = c.x() + 0.5 * grid.cell_radius * std::cos(a);
                    const double y = c.y() + 0.5 * grid.cell_radius * std::sin(a);
                    const FieldPoint<double> p{std::hypot(x, y), std::atan2(y, x), c.z()};
                    ring_peak = std::max(ring_peak, std::abs(field_exact(tx, excitation, p, lambda)));
                }
                const double ratio = center_mag / ring_peak;
                if (ratio > worst_exact)
                {
                    worst_exact = ratio;
                    worst_mode = mode;
                    worst_idx = idx;
                }
            }
        }

        const bool approx_ok = worst_approx <= amplitude_floor;
        const bool exact_ok = worst_exact <= 0.05;
        outcome.pass = approx_ok && exact_ok;
        outcome.detail = "approximate-field |E| at centers <= " + fmt(worst_approx, "%.2e") +
                         (approx_ok ? " (within 1e-12 * lambda/(4 pi z))" : " EXCEEDS the floor");
        outcome.detail += "; exact-field worst residual " + fmt(100.0 * worst_exact, "%.1f") +
                          "% of ring peak at (m=" + std::to_string(worst_idx.m) +
                          ",n=" + std::to_string(worst_idx.n) + "), mode " + std::to_string(worst_mode);
        if (!exact_ok)
            outcome.detail += " exceeds the 5% bound: the higher-order path terms dropped by the "
                              "binomial expansion shift off-axis nulls at this configuration "
                              "(z/R_t ~ 6.7); on-axis residual is ~0";
        return outcome;
    }

    // ---- 4. phase winding ----------------------------------------------------

    Outcome check_phase_winding()
    {
        const double lambda = 1.0;
        const auto grid = make_grid(lambda, 150.0, 1000.0);
        const auto tx = make_uca(150.0, 6);
        const int samples = 720;

        Outcome outcome;
        double worst = 0.0;
        for (int mode : {1, 2})
        {
            const auto excitation = mode_excitation<double>(6, mode);
            for (const GridIndex idx : {GridIndex{0, 2}, GridIndex{1, 1}})
            {
                const auto c = grid_center(idx, grid);
                const double radius = 0.3 * grid.cell_radius;
                double winding = 0.0, previous = 0.0;
                for (int i = 0; i <= samples; ++i)
                {
                    const double a = 2.0 * M_PI * i / samples;
                    const double x = c.x() + radius * std::cos(a);
                    const double y = c.y() + radius * std::sin(a);
                    const FieldPoint<double> p{std::hypot(x, y), std::atan2(y, x), c.z()};
                    const double phase = std::arg(field_approx(tx, excitation, p, lambda));
                    if (i > 0)
                    {
                        double delta = phase - previous;
                        while (delta > M_PI)
                            delta -= 2.0 * M_PI;
                        while (delta < -M_PI)
                            delta += 2.0 * M_PI;
                        winding += delta;
                    }
                    previous = phase;
                }
                worst = std::max(worst, std::abs(winding - 2.0 * M_PI * mode));
            }
        }
        Outcome result;
        result.pass = worst <= 1e-2;
        result.detail = "worst |winding - 2 pi l| = " + fmt(worst, "%.2e") +
                        " rad over modes {1,2} at non-central centers (bound 1e-2)";
        return result;
    }

    // ---- 5. modem exactness ----------------------------------------------------

    Outcome check_modem_exactness()
    {
        const auto pair = make_dft_pair<double>(6, 6);
        const ComplexMatrix<double> identity = ComplexMatrix<double>::Identity(6, 6);
        const double idft_err = (pair.idft.adjoint() * pair.idft - identity).cwiseAbs().maxCoeff();
        const double dft_err = (pair.dft.adjoint() * pair.dft - identity).cwiseAbs().maxCoeff();

        // aligned paraxial channel diagonalizes, so recovery must be exact
        const auto grid = make_grid(10.0, 30.0, 75.0);
        const auto tx = make_uca(30.0, 6);
        const auto rx = make_uca(grid.rr_bound, 6, Vec3<double>(0.0, 0.0, 75.0));
        const auto h = build_free_space(tx, rx, 10.0, ChannelVariant::approx);
        const auto oam = to_oam_domain(h, pair.idft, pair.dft);
        const auto power = PowerAllocation<double>::uniform(6);

        int exact_recoveries = 0;
        for (unsigned bits = 0; bits < 64; ++bits)
        {
            SymbolVector<double> x;
            x.symbols.resize(6);
            for (int l = 0; l < 6; ++l)
                x.symbols[l] = Complex<double>((bits >> l) & 1u ? 1.0 : -1.0, 0.0);
            const auto r = propagate(transmit(x, power, pair), h, NoiseSpec<double>{0.0, 0});
            const auto decided = detect(demodulate(r, pair), oam, power);
            bool equal = true;
            for (int l = 0; l < 6; ++l)
                equal = equal && decided.symbols[l] == x.symbols[l];
            exact_recoveries += equal ? 1 : 0;
        }

        Outcome outcome;
        outcome.pass = idft_err <= 1e-12 && dft_err <= 1e-12 && exact_recoveries == 64;
        outcome.detail = "unitarity error " + fmt(std::max(idft_err, dft_err), "%.2e") +
                         " (bound 1e-12); " + std::to_string(exact_recoveries) +
                         "/64 BPSK words recovered exactly";
        return outcome;
    }

    // ---- 6. Monte Carlo against the analytic BER -----------------------------

    Outcome check_ber_oracle()
    {
        const auto pair = make_dft_pair<double>(6, 6);
        const ComplexVector<double> gains = ComplexVector<double>::Ones(6);
        const ComplexMatrix<double> entries =
            pair.dft.adjoint() * gains.asDiagonal() * pair.idft.adjoint();
        const ChannelMatrix<double> h{entries, ChannelProvenance::ingested};
        const auto oam = to_oam_domain(h, pair.idft, pair.dft);
        const auto power = PowerAllocation<double>::uniform(6);

        Outcome outcome;
        for (double gamma : {1.0, 2.0, 4.0})
        {
            const auto mc = ber_monte_carlo(h, pair, oam, power, 1.0 / gamma, 1000000, 2026,
                                            worker_count());
            const double analytic = 0.5 * fractal_oam::erfc(std::sqrt(gamma));
            const double sigmas = std::abs(mc.ber - analytic) / mc.standard_error;
            outcome.detail += "gamma=" + fmt(gamma, "%.0f") + ": mc " + fmt(mc.ber, "%.5g") +
                              " vs analytic " + fmt(analytic, "%.5g") + " (" + fmt(sigmas, "%.2f") +
                              " sigma); ";
            if (sigmas > 3.0)
                outcome.pass = false;
        }
        outcome.detail += "1e6 bits/mode";
        return outcome;
    }

    // ---- 7. capacity orderings across SNR -------------------------------------

    Outcome check_trends()
    {
        SweepSpec snr;
        snr.param = SweepSpec::Param::snr;
        snr.values = parse_value_list("0:2:30");

        const auto capacities = [&](Baseline baseline, GridIndex idx) {
            ExperimentConfig config = paper_setup();
            config.baseline = baseline;
            config.receive.grid_index = idx;
            return capacity_column(run_sweep(config, snr));
        };

        const auto fractal_aligned = capacities(Baseline::fractal, {0, 0});
        const auto normal_aligned = capacities(Baseline::normal, {0, 0});
        const auto fractal_22 = capacities(Baseline::fractal, {2, 2});
        const auto normal_22 = capacities(Baseline::normal, {2, 2});
        const auto fractal_25 = capacities(Baseline::fractal, {2, 5});
        const auto fractal_52 = capacities(Baseline::fractal, {5, 2});
        const auto normal_25 = capacities(Baseline::normal, {2, 5});
        const auto normal_52 = capacities(Baseline::normal, {5, 2});

        int aligned_ok = 0, unaligned_ok = 0, ordering_ok = 0;
        for (std::size_t i = 0; i < snr.values.size(); ++i)
        {
            aligned_ok += fractal_aligned[i] > normal_aligned[i] ? 1 : 0;
            unaligned_ok += fractal_22[i] > normal_22[i] ? 1 : 0;
            ordering_ok += (fractal_25[i] > fractal_52[i] && normal_25[i] > normal_52[i]) ? 1 : 0;
        }

        Outcome outcome;
        const int points = int(snr.values.size());
        outcome.pass = aligned_ok == points && unaligned_ok == points && ordering_ok == points;
        outcome.detail = "fractal>normal aligned at " + std::to_string(aligned_ok) + "/" +
                         std::to_string(points) + " SNRs, at (2,2) " + std::to_string(unaligned_ok) +
                         "/" + std::to_string(points) + ", (2,5)>(5,2) both schemes " +
                         std::to_string(ordering_ok) + "/" + std::to_string(points) +
                         " (e.g. 20 dB: " + fmt(fractal_aligned[10], "%.1f") + " vs " +
                         fmt(normal_aligned[10], "%.1f") + " b/s/Hz)";
        return outcome;
    }

    // ---- 8. interior maxima in R_r and R_t -------------------------------------

    Outcome check_interior_maxima()
    {
        Outcome outcome;

        // capacity vs receive radius on (0, 2.566] lambda
        {
            ExperimentConfig config = paper_setup();
            SweepSpec sweep;
            sweep.param = SweepSpec::Param::receive_radius;
            const double cap = 2.566 * config.lambda; // config units (mm)
            for (int k = 1; k <= 50; ++k)
                sweep.values.push_back(cap * double(k) / 50.0);
            const auto capacities = capacity_column(run_sweep(config, sweep));
            std::size_t argmax = 0;
            for (std::size_t i = 1; i < capacities.size(); ++i)
                if (capacities[i] > capacities[argmax])
                    argmax = i;
            const bool interior = argmax != 0 && argmax + 1 != capacities.size();
            outcome.pass = outcome.pass && interior;
            outcome.detail += "R_r sweep max at " + fmt(sweep.values[argmax] / config.lambda, "%.3f") +
                              " lambda (point " + std::to_string(argmax + 1) + "/50" +
                              (interior ? ", interior)" : ", AT AN ENDPOINT)");
        }

        // capacity vs transmit radius on [0.5, 300] lambda with R_r = 1.283 lambda;
        // the left edge starts at 0.51 lambda, just above the half-wavelength
        // validity limit of the lattice construction
        {
            ExperimentConfig config = paper_setup();
            config.receive.radius = 1.283 * config.lambda;
            SweepSpec sweep;
            sweep.param = SweepSpec::Param::transmit_radius;
            for (double rt : {0.51, 1.0, 2.0, 5.0, 10.0, 20.0, 40.0, 80.0, 120.0, 160.0, 200.0,
                              240.0, 280.0, 300.0})
                sweep.values.push_back(rt * config.lambda);
            const auto capacities = capacity_column(run_sweep(config, sweep));
            std::size_t argmax = 0;
            for (std::size_t i = 1; i < capacities.size(); ++i)
                if (capacities[i] > capacities[argmax])
                    argmax = i;
            const bool interior = argmax != 0 && argmax + 1 != capacities.size();
            outcome.pass = outcome.pass && interior;
            outcome.detail += "; R_t sweep max at " + fmt(sweep.values[argmax] / config.lambda, "%.0f") +
                              " lambda (point " + std::to_string(argmax + 1) + "/" +
                              std::to_string(sweep.values.size()) +
                              (interior ? ", interior)" : ", AT AN ENDPOINT)");
        }
        return outcome;
    }

    // ---- 9. distance study with the tied receive radius ------------------------

    Outcome check_distance_study()
    {
        SweepSpec sweep;
        sweep.param = SweepSpec::Param::distance;
        sweep.tie_rr_factor = 0.25;

        ExperimentConfig fractal = paper_setup();
        fractal.receive.grid_index = {2, 2};
        ExperimentConfig normal = fractal;
        normal.baseline = Baseline::normal;

        for (double z = 600.0; z <= 1500.0 + 1e-9; z += 100.0)
            sweep.values.push_back(z * fractal.lambda); // config units (mm)

        const auto fractal_caps = capacity_column(run_sweep(fractal, sweep));
        const auto normal_caps = capacity_column(run_sweep(normal, sweep));

        Outcome outcome;
        int checked = 0, ok = 0;
        for (std::size_t i = 0; i < sweep.values.size(); ++i)
        {
            if (sweep.values[i] / fractal.lambda < 900.0)
                continue;
            ++checked;
            ok += fractal_caps[i] > normal_caps[i] ? 1 : 0;
        }
        outcome.pass = checked > 0 && ok == checked;
        outcome.detail = "fractal (2,2) > normal (2,2) at " + std::to_string(ok) + "/" +
                         std::to_string(checked) + " grid points with z >= 900 lambda, R_r tied to z/4R_t";
        return outcome;
    }

    // ---- 10. paraxial channel validity ------------------------------------------

    Outcome check_paraxial_validity()
    {
        const CounterRng rng(4242, 0);
        Outcome outcome;
        double worst_magnitude = 0.0, worst_phase = 0.0;
        for (int trial = 0; trial < 100; ++trial)
        {
            const std::uint64_t base = std::uint64_t(trial) * 16;
            const double rt = 0.6 + 49.4 * rng.uniform(base);
            const double rr = 0.05 + 9.95 * rng.uniform(base + 1);
            const double offset = 40.0 * rng.uniform(base + 2);
            const double bearing = 2.0 * M_PI * rng.uniform(base + 3);
            const double rotation = 2.0 * M_PI * rng.uniform(base + 4);
            const double rho_max = offset + rr;
            const double z = 1000.0 * std::max(rho_max, rt) * (1.0 + 2.0 * rng.uniform(base + 5));

            const auto tx = make_uca(rt, 6);
            const auto rx = make_uca(rr, 6,
                                     Vec3<double>(offset * std::cos(bearing),
                                                  offset * std::sin(bearing), z),
                                     rotation);
            const auto exact = build_free_space(tx, rx, 1.0, ChannelVariant::exact);
            const auto approx = build_free_space(tx, rx, 1.0, ChannelVariant::approx);

            const Complex<double> common =
                approx.entries(0, 0) / exact.entries(0, 0); // shared phase reference
            for (int nr = 0; nr < 6; ++nr)
                for (int nt = 0; nt < 6; ++nt)
                {
                    const double magnitude_err =
                        std::abs(std::abs(approx.entries(nr, nt)) - std::abs(exact.entries(nr, nt))) /
                        std::abs(exact.entries(nr, nt));
                    const Complex<double> ratio =
                        approx.entries(nr, nt) / exact.entries(nr, nt) / common;
                    worst_magnitude = std::max(worst_magnitude, magnitude_err);
                    worst_phase = std::max(worst_phase, std::abs(std::arg(ratio)));
                }
        }
        outcome.pass = worst_magnitude <= 0.01 && worst_phase <= 1e-2;
        outcome.detail = "100 random geometries at z >= 1000 max(rho, R_t): worst magnitude error " +
                         fmt(100.0 * worst_magnitude, "%.4f") + "% (bound 1%), worst phase error " +
                         fmt(worst_phase, "%.2e") + " rad (bound 1e-2)";
        return outcome;
    }
}

int main()
{
    const std::vector<Check> checks = {
        {"grid geometry reproduction", 1.0, check_grid_geometry},
        {"receive-radius bound", 1.0, check_rr_bound},
        {"null at lattice centers", 30.0, check_null_at_centers},
        {"phase winding", 10.0, check_phase_winding},
        {"modem exactness", 1.0, check_modem_exactness},
        {"BER oracle agreement", 120.0, check_ber_oracle},
        {"capacity trend reproduction", 60.0, check_trends},
        {"interior capacity maxima", 120.0, check_interior_maxima},
        {"distance study", 120.0, check_distance_study},
        {"paraxial channel validity", 30.0, check_paraxial_validity},
    };

    int failures = 0;
    for (std::size_t i = 0; i < checks.size(); ++i)
    {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try
        {
            outcome = checks[i].run();
        }
        catch (const std::exception &e)
        {
            outcome.pass = false;
            outcome.detail = std::string("exception: ") + e.what();
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (seconds > checks[i].budget_seconds)
        {
            outcome.pass = false;
            outcome.detail += " [over the " + fmt(checks[i].budget_seconds, "%.0f") + " s budget]";
        }
        failures += outcome.pass ? 0 : 1;
        std::printf("[%s] %zu. %s (%.2f s): %s\n", outcome.pass ? "PASS" : "FAIL", i + 1,
                    checks[i].name.c_str(), seconds, outcome.detail.c_str());
        std::fflush(stdout);
    }

    std::printf("%d/%zu acceptance checks passed\n", int(checks.size()) - failures, checks.size());
    return failures;
}
