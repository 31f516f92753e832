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

#ifndef FRACTAL_OAM_CHANNEL_HPP
#define FRACTAL_OAM_CHANNEL_HPP

#include "fractal_oam/field.hpp"
#include "fractal_oam/geometry.hpp"
#include "fractal_oam/types.hpp"

#include <cmath>

namespace fractal_oam
{
    enum class ChannelVariant
    {
        exact,  // true spherical-wave distances
        approx, // paraxial: constant amplitude lambda/(4*pi*z), binomial phase
    };

    enum class ChannelProvenance
    {
        analytic_exact,
        analytic_approx,
        ingested,
    };

    // Complex N_r x N_t element-to-element channel. entries(n_r, n_t) is the
    // gain from transmit element n_t to receive element n_r.
    template <typename Scalar>
    struct ChannelMatrix
    {
        ComplexMatrix<Scalar> entries;
        ChannelProvenance provenance = ChannelProvenance::ingested;
    };

    // Mode-domain channel H' = W' H W. diag holds the per-mode gains h': the
    // first w_tx.cols() diagonal entries (the top-left block when N_r > N_t).
    template <typename Scalar>
    struct OamChannel
    {
        ComplexMatrix<Scalar> entries;
        ComplexVector<Scalar> diag;
    };

    // Free-space channel between two UCAs. The exact variant evaluates the same
    // point-source response as the field module at the true element-to-element
    // distance; the approx variant is the paraxial closed form and requires the
    // transmit UCA centered on the z-axis.
    template <typename Scalar>
    ChannelMatrix<Scalar> build_free_space(const UcaLayout<Scalar> &tx, const UcaLayout<Scalar> &rx,
                                           Scalar lambda, ChannelVariant variant = ChannelVariant::exact)
    {
        const Scalar z = rx.center.z() - tx.center.z();
        if (!(z > Scalar(0)))
            throw NonPositiveDistance("build_free_space: receive plane must sit at positive distance");

        ChannelMatrix<Scalar> h;
        h.entries.resize(rx.element_count, tx.element_count);

        if (variant == ChannelVariant::exact)
        {
            h.provenance = ChannelProvenance::analytic_exact;
            for (int nr = 0; nr < rx.element_count; ++nr)
            {
                const Vec3<Scalar> pr = element_position(rx, nr);
                for (int nt = 0; nt < tx.element_count; ++nt)
                {
                    const Scalar d = (pr - element_position(tx, nt)).norm();
                    h.entries(nr, nt) = point_source_response(d, lambda);
                }
            }
            return h;
        }

        if (std::abs(tx.center.x()) > Scalar(0) || std::abs(tx.center.y()) > Scalar(0))
            throw std::invalid_argument("build_free_space: approx variant needs the transmit UCA on the z-axis");

        h.provenance = ChannelProvenance::analytic_approx;
        const Scalar amplitude = lambda / (Scalar(4) * Scalar(EIGEN_PI) * z);
        const Scalar wavenumber = Scalar(2) * Scalar(EIGEN_PI) / lambda;
        for (int nr = 0; nr < rx.element_count; ++nr)
        {
            const Vec3<Scalar> pr = element_position(rx, nr);
            const FieldPoint<Scalar> point{std::hypot(pr.x(), pr.y()), std::atan2(pr.y(), pr.x()), z};
            for (int nt = 0; nt < tx.element_count; ++nt)
            {
                const Scalar d = path_length_approx(element_angle(tx, nt), tx.radius, point);
                h.entries(nr, nt) = std::polar(amplitude, -wavenumber * d);
            }
        }
        return h;
    }

    // Exact channel from an arbitrary element set (e.g. the two-layer array).
    template <typename Scalar>
    ChannelMatrix<Scalar> build_free_space(const ElementArray<Scalar> &tx, const UcaLayout<Scalar> &rx,
                                           Scalar lambda)
    {
        if (tx.positions.cols() < 1)
            throw DimensionMismatch("build_free_space: transmit array is empty");
        const Scalar z = rx.center.z() - tx.positions.row(2).maxCoeff();
        if (!(z > Scalar(0)))
            throw NonPositiveDistance("build_free_space: receive plane must sit at positive distance");

        ChannelMatrix<Scalar> h;
        h.provenance = ChannelProvenance::analytic_exact;
        h.entries.resize(rx.element_count, tx.positions.cols());
        for (int nr = 0; nr < rx.element_count; ++nr)
        {
            const Vec3<Scalar> pr = element_position(rx, nr);
            for (Eigen::Index nt = 0; nt < tx.positions.cols(); ++nt)
            {
                const Scalar d = (pr - tx.positions.col(nt)).norm();
                h.entries(nr, nt) = point_source_response(d, lambda);
            }
        }
        return h;
    }

    // H' = W' H W with W the transmit-side modulation (unit IDFT, or any
    // column-isometry with one column per mode) and W' the receive-side unit
    // DFT. diag is the per-mode gain vector h'.
    template <typename Scalar>
    OamChannel<Scalar> to_oam_domain(const ChannelMatrix<Scalar> &h, const ComplexMatrix<Scalar> &w_tx,
                                     const ComplexMatrix<Scalar> &w_rx)
    {
        if (w_rx.rows() != w_rx.cols() || w_rx.cols() != h.entries.rows())
            throw DimensionMismatch("to_oam_domain: w_rx must be N_r x N_r");
        if (w_tx.rows() != h.entries.cols())
            throw DimensionMismatch("to_oam_domain: w_tx rows must match N_t");

        OamChannel<Scalar> oam;
        oam.entries = w_rx * h.entries * w_tx;
        const Eigen::Index modes = std::min(oam.entries.rows(), w_tx.cols());
        oam.diag = oam.entries.diagonal().head(modes);
        return oam;
    }

    // Wraps externally produced channel entries (e.g. a transmission block cut
    // from measured or full-wave S-parameters). Downstream treatment is
    // identical to analytic channels.
    template <typename Scalar>
    ChannelMatrix<Scalar> ingest_channel(const ComplexMatrix<Scalar> &entries)
    {
        if (entries.rows() < 1 || entries.cols() < 1)
            throw MalformedInput("ingest_channel: matrix must be non-empty");
        if (!entries.allFinite())
            throw MalformedInput("ingest_channel: entries must be finite");
        return ChannelMatrix<Scalar>{entries, ChannelProvenance::ingested};
    }
}

#endif
