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

#ifndef FRACTAL_OAM_METRICS_HPP
#define FRACTAL_OAM_METRICS_HPP

#include "fractal_oam/channel.hpp"
#include "fractal_oam/modem.hpp"
#include "fractal_oam/types.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <thread>
#include <vector>

namespace fractal_oam
{
    // Monte Carlo BER estimate with its binomial standard error.
    template <typename Scalar>
    struct McResult
    {
        Scalar ber = Scalar(0);
        Scalar standard_error = Scalar(0);
        std::uint64_t bit_errors = 0;
        std::uint64_t bits = 0;
    };

    // Per-mode SINR, sum capacity, and BER for one link evaluation.
    template <typename Scalar>
    struct LinkResult
    {
        Scalar snr_db = Scalar(0);
        RealVector<Scalar> sinr;
        Scalar capacity = Scalar(0);
        Scalar ber_analytic = Scalar(0);
        std::optional<McResult<Scalar>> ber_monte_carlo;
    };

    // gamma_l = P_l |h'_l|^2 / (sigma^2 + sum_{k != l} P_k |H'(l,k)|^2).
    // A vanishing denominator yields 0 for zero signal power and +inf otherwise
    // (noise-free perfect channel).
    template <typename Scalar>
    RealVector<Scalar> sinr(const OamChannel<Scalar> &oam, const PowerAllocation<Scalar> &p,
                            Scalar noise_variance)
    {
        const Eigen::Index modes = oam.diag.size();
        if (p.amplitudes.size() != modes)
            throw DimensionMismatch("sinr: power allocation must cover every mode");
        if (noise_variance < Scalar(0))
            throw NonPositiveInput("sinr: noise variance must be >= 0");

        RealVector<Scalar> gamma(modes);
        for (Eigen::Index l = 0; l < modes; ++l)
        {
            const Scalar p_l = p.amplitudes[l] * p.amplitudes[l];
            const Scalar signal = p_l * std::norm(oam.diag[l]);
            Scalar interference = Scalar(0);
            for (Eigen::Index k = 0; k < modes; ++k)
            {
                if (k == l)
                    continue;
                const Scalar p_k = p.amplitudes[k] * p.amplitudes[k];
                interference += p_k * std::norm(oam.entries(l, k));
            }
            const Scalar denominator = noise_variance + interference;
            if (denominator > Scalar(0))
                gamma[l] = signal / denominator;
            else
                gamma[l] = signal > Scalar(0) ? std::numeric_limits<Scalar>::infinity() : Scalar(0);
        }
        return gamma;
    }

    // Sum capacity in bits/s/Hz: sum_l log2(1 + gamma_l).
    template <typename Derived>
    typename Derived::Scalar capacity(const Eigen::MatrixBase<Derived> &gamma)
    {
        using Scalar = typename Derived::Scalar;
        Scalar c = Scalar(0);
        for (Eigen::Index l = 0; l < gamma.size(); ++l)
        {
            if (gamma[l] < Scalar(0))
                throw NonPositiveInput("capacity: SINR must be >= 0");
            c += std::log2(Scalar(1) + gamma[l]);
        }
        return c;
    }

    // Complementary error function (2/sqrt(pi)) * integral_x^inf exp(-t^2) dt.
    // Backed by std::erfc; the test suite pins it against a quadrature oracle
    // of the defining integral to 1e-12 absolute on [-6, 6].
    inline double erfc(double x)
    {
        return std::erfc(x);
    }

    // Mode-averaged BPSK BER: (1/12) * sum_{l=0}^{5} erfc(sqrt(gamma_l)).
    // The 1/6 mode average is part of the formula, so exactly 6 modes are
    // required. Inter-mode interference is treated as Gaussian here; Monte
    // Carlo is the reference for interfered channels.
    template <typename Derived>
    typename Derived::Scalar ber_analytic(const Eigen::MatrixBase<Derived> &gamma)
    {
        using Scalar = typename Derived::Scalar;
        if (gamma.size() != 6)
            throw ModeCountMismatch("ber_analytic: expected exactly 6 modes, got " +
                                    std::to_string(gamma.size()));
        Scalar sum = Scalar(0);
        for (Eigen::Index l = 0; l < 6; ++l)
        {
            if (gamma[l] < Scalar(0))
                throw NonPositiveInput("ber_analytic: SINR must be >= 0");
            sum += Scalar(erfc(std::sqrt(double(gamma[l]))));
        }
        return sum / Scalar(12);
    }

    namespace detail
    {
        // One BPSK trial through transmit -> propagate -> demodulate -> detect.
        // Trial t draws from counter stream (seed, t): mode bits at counters
        // 0..modes-1, element noise from pair index 16 upward. Returns the
        // number of erroneous active-mode bits.
        template <typename Scalar>
        std::uint64_t run_bpsk_trial(std::uint64_t trial, std::uint64_t seed,
                                     const ChannelMatrix<Scalar> &h, const UnitDftPair<Scalar> &pair,
                                     const OamChannel<Scalar> &oam, const PowerAllocation<Scalar> &p,
                                     Scalar noise_variance)
        {
            const CounterRng rng(seed, trial);
            const Eigen::Index modes = oam.diag.size();
            SymbolVector<Scalar> x;
            x.constellation = Constellation::bpsk;
            x.symbols.resize(modes);
            for (Eigen::Index l = 0; l < modes; ++l)
                x.symbols[l] = Complex<Scalar>(rng.uniform(std::uint64_t(l)) < 0.5 ? -1 : 1, 0);

            const Excitation<Scalar> s = transmit(x, p, pair);
            const ComplexVector<Scalar> r = propagate(s, h, noise_variance, rng, 16);
            const ComplexVector<Scalar> y = demodulate(r, pair);
            const SymbolVector<Scalar> decided = detect(y, oam, p);

            std::uint64_t errors = 0;
            for (Eigen::Index l = 0; l < modes; ++l)
                if (p.amplitudes[l] > Scalar(0) &&
                    decided.symbols[l].real() != x.symbols[l].real())
                    ++errors;
            return errors;
        }
    }

    // End-to-end simulated BPSK error rate. Trials are independent counter
    // streams keyed by (seed, trial), so the bit-error count is identical for
    // any worker count.
    template <typename Scalar>
    McResult<Scalar> ber_monte_carlo(const ChannelMatrix<Scalar> &h, const UnitDftPair<Scalar> &pair,
                                     const OamChannel<Scalar> &oam, const PowerAllocation<Scalar> &p,
                                     Scalar noise_variance, std::uint64_t trials, std::uint64_t seed,
                                     int workers = 1)
    {
        if (trials < 1)
            throw NonPositiveInput("ber_monte_carlo: trials must be >= 1");

        std::uint64_t active_modes = 0;
        for (Eigen::Index l = 0; l < p.amplitudes.size(); ++l)
            if (p.amplitudes[l] > Scalar(0))
                ++active_modes;

        const auto count_range = [&](std::uint64_t begin, std::uint64_t end) {
            std::uint64_t errors = 0;
            for (std::uint64_t t = begin; t < end; ++t)
                errors += detail::run_bpsk_trial(t, seed, h, pair, oam, p, noise_variance);
            return errors;
        };

        std::uint64_t errors = 0;
        if (workers <= 1 || trials < 2)
        {
            errors = count_range(0, trials);
        }
        else
        {
            const std::uint64_t n_threads = std::min<std::uint64_t>(std::uint64_t(workers), trials);
            const std::uint64_t chunk = (trials + n_threads - 1) / n_threads;
            std::vector<std::uint64_t> partial(n_threads, 0);
            std::vector<std::thread> pool;
            pool.reserve(std::size_t(n_threads));
            for (std::uint64_t w = 0; w < n_threads; ++w)
                pool.emplace_back([&, w] {
                    const std::uint64_t begin = w * chunk;
                    const std::uint64_t end = std::min(trials, begin + chunk);
                    partial[std::size_t(w)] = begin < end ? count_range(begin, end) : 0;
                });
            for (auto &th : pool)
                th.join();
            for (std::uint64_t part : partial)
                errors += part;
        }

        McResult<Scalar> result;
        result.bit_errors = errors;
        result.bits = trials * active_modes;
        result.ber = result.bits > 0 ? Scalar(double(errors) / double(result.bits)) : Scalar(0);
        result.standard_error =
            result.bits > 0
                ? Scalar(std::sqrt(double(result.ber) * (1.0 - double(result.ber)) / double(result.bits)))
                : Scalar(0);
        return result;
    }
}

#endif
