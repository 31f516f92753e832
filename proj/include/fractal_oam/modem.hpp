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
// IDFT/DFT mode modem: modulation of per-mode symbols onto array excitations,
// AWGN propagation, DFT demodulation, and per-mode equalize-and-decide
// detection. All transforms are stateless; noise is drawn from counter-based
// streams so every result is reproducible regardless of scheduling.

#ifndef FRACTAL_OAM_MODEM_HPP
#define FRACTAL_OAM_MODEM_HPP

#include "fractal_oam/channel.hpp"
#include "fractal_oam/rng.hpp"
#include "fractal_oam/types.hpp"

#include <cmath>
#include <cstdint>

namespace fractal_oam
{
    // Transmit-side unit IDFT W (entry (n1,n2) = exp(+j*2*pi*n1*n2/N_t)/sqrt(N_t))
    // and receive-side unit DFT W' (entry (m1,m2) = exp(-j*2*pi*m1*m2/N_r)/sqrt(N_r)).
    // For the two-layer baseline, idft may instead hold the 6-mode composite
    // modulation isometry; W^H W = I holds in either case.
    template <typename Scalar>
    struct UnitDftPair
    {
        ComplexMatrix<Scalar> idft;
        ComplexMatrix<Scalar> dft;
    };

    template <typename Scalar>
    ComplexMatrix<Scalar> unit_idft(int n)
    {
        if (n < 1)
            throw NonPositiveInput("unit_idft: size must be >= 1");
        ComplexMatrix<Scalar> w(n, n);
        const Scalar scale = Scalar(1) / std::sqrt(Scalar(n));
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                w(r, c) = std::polar(scale, Scalar(2) * Scalar(EIGEN_PI) * Scalar(r) * Scalar(c) / Scalar(n));
        return w;
    }

    template <typename Scalar>
    ComplexMatrix<Scalar> unit_dft(int n)
    {
        if (n < 1)
            throw NonPositiveInput("unit_dft: size must be >= 1");
        ComplexMatrix<Scalar> w(n, n);
        const Scalar scale = Scalar(1) / std::sqrt(Scalar(n));
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                w(r, c) = std::polar(scale, -Scalar(2) * Scalar(EIGEN_PI) * Scalar(r) * Scalar(c) / Scalar(n));
        return w;
    }

    template <typename Scalar>
    UnitDftPair<Scalar> make_dft_pair(int n_tx, int n_rx)
    {
        return UnitDftPair<Scalar>{unit_idft<Scalar>(n_tx), unit_dft<Scalar>(n_rx)};
    }

    // Per-mode transmit powers, stored as amplitudes sqrt(P_l).
    template <typename Scalar>
    struct PowerAllocation
    {
        RealVector<Scalar> amplitudes;

        static PowerAllocation from_powers(const RealVector<Scalar> &powers)
        {
            if ((powers.array() < Scalar(0)).any())
                throw NonPositiveInput("PowerAllocation: powers must be >= 0");
            return PowerAllocation{powers.array().sqrt().matrix()};
        }

        static PowerAllocation uniform(int modes, Scalar power_per_mode = Scalar(1))
        {
            return from_powers(RealVector<Scalar>::Constant(modes, power_per_mode));
        }

        RealVector<Scalar> powers() const { return amplitudes.array().square().matrix(); }
    };

    enum class Constellation
    {
        bpsk,     // entries in {+1, -1}
        gaussian, // analysis-only; never routed through detect
    };

    template <typename Scalar>
    struct SymbolVector
    {
        ComplexVector<Scalar> symbols;
        Constellation constellation = Constellation::bpsk;
    };

    // Complex circular AWGN of the given per-element variance, drawn from the
    // counter stream (seed, 0).
    template <typename Scalar>
    struct NoiseSpec
    {
        Scalar variance = Scalar(0);
        std::uint64_t seed = 0;
    };

    // s = W * diag(sqrt(P)) * x
    template <typename Scalar>
    Excitation<Scalar> transmit(const SymbolVector<Scalar> &x, const PowerAllocation<Scalar> &p,
                                const UnitDftPair<Scalar> &pair)
    {
        if (x.symbols.size() != pair.idft.cols() || p.amplitudes.size() != x.symbols.size())
            throw DimensionMismatch("transmit: symbol, power, and IDFT sizes must match");
        return pair.idft * (p.amplitudes.template cast<Complex<Scalar>>().asDiagonal() * x.symbols);
    }

    // r = H*s + n with n drawn from rng at counters [counter_base, ...).
    template <typename Scalar>
    ComplexVector<Scalar> propagate(const Excitation<Scalar> &s, const ChannelMatrix<Scalar> &h,
                                    Scalar noise_variance, const CounterRng &rng,
                                    std::uint64_t counter_base = 0)
    {
        if (s.size() != h.entries.cols())
            throw DimensionMismatch("propagate: excitation length must match channel columns");
        ComplexVector<Scalar> r = h.entries * s;
        if (noise_variance > Scalar(0))
            for (Eigen::Index i = 0; i < r.size(); ++i)
                r[i] += Complex<Scalar>(rng.complex_gaussian(counter_base + std::uint64_t(i), double(noise_variance)));
        return r;
    }

    template <typename Scalar>
    ComplexVector<Scalar> propagate(const Excitation<Scalar> &s, const ChannelMatrix<Scalar> &h,
                                    const NoiseSpec<Scalar> &noise)
    {
        if (noise.variance < Scalar(0))
            throw NonPositiveInput("propagate: noise variance must be >= 0");
        return propagate(s, h, noise.variance, CounterRng(noise.seed, 0));
    }

    // y = W' * r
    template <typename Scalar, typename Derived>
    ComplexVector<Scalar> demodulate(const Eigen::MatrixBase<Derived> &r, const UnitDftPair<Scalar> &pair)
    {
        if (r.size() != pair.dft.cols())
            throw DimensionMismatch("demodulate: received length must match DFT size");
        return pair.dft * r;
    }

    // Per-mode equalize-and-decide: y_l / h'_l, then the nearest constellation
    // point scaled by sqrt(P_l). For BPSK that is sign(Re{y_l / h'_l}); the
    // joint argmin decomposes per mode because the equalizer is diagonal.
    // Throws ZeroGain when an active mode (P_l > 0) has |h'_l| below 1e-300.
    template <typename Scalar, typename Derived>
    SymbolVector<Scalar> detect(const Eigen::MatrixBase<Derived> &y, const OamChannel<Scalar> &oam,
                                const PowerAllocation<Scalar> &p,
                                Constellation constellation = Constellation::bpsk)
    {
        if (constellation != Constellation::bpsk)
            throw std::invalid_argument("detect: only finite constellations (BPSK) are detectable");
        const Eigen::Index modes = oam.diag.size();
        if (y.size() < modes || p.amplitudes.size() != modes)
            throw DimensionMismatch("detect: mode-domain vector shorter than the mode count");

        SymbolVector<Scalar> decided;
        decided.constellation = Constellation::bpsk;
        decided.symbols.resize(modes);
        for (Eigen::Index l = 0; l < modes; ++l)
        {
            if (p.amplitudes[l] <= Scalar(0))
            {
                decided.symbols[l] = Complex<Scalar>(1, 0); // inactive mode, by convention
                continue;
            }
            if (std::abs(oam.diag[l]) < Scalar(1e-300))
                throw ZeroGain("detect: zero mode gain for active mode " + std::to_string(l));
            const Complex<Scalar> equalized = y[l] / oam.diag[l];
            decided.symbols[l] = Complex<Scalar>(equalized.real() >= Scalar(0) ? 1 : -1, 0);
        }
        return decided;
    }

    // Mode-l excitation: column l of the unit IDFT scaled by sqrt(power). The
    // same definition drives both field maps and the modem.
    template <typename Scalar>
    Excitation<Scalar> mode_excitation(int element_count, int mode, Scalar power = Scalar(1))
    {
        if (mode < 0 || mode >= element_count)
            throw std::invalid_argument("mode_excitation: mode must lie in [0, element_count)");
        return unit_idft<Scalar>(element_count).col(mode) * std::sqrt(power);
    }
}

#endif
