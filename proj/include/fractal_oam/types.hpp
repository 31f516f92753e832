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

#ifndef FRACTAL_OAM_TYPES_HPP
#define FRACTAL_OAM_TYPES_HPP

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace fractal_oam
{
    // Dense aliases used throughout the library. All lengths are plain scalars;
    // the canonical internal unit is the wavelength (lambda = 1) unless an
    // operation takes an explicit wavelength argument.
    template <typename Scalar>
    using Complex = std::complex<Scalar>;

    template <typename Scalar>
    using Vec3 = Eigen::Matrix<Scalar, 3, 1>;

    template <typename Scalar>
    using RealVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    template <typename Scalar>
    using ComplexVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

    template <typename Scalar>
    using ComplexMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

    // Element positions as columns of a 3 x N matrix.
    template <typename Scalar>
    using PositionMatrix = Eigen::Matrix<Scalar, 3, Eigen::Dynamic>;

    // Error types named after the condition they report.
    struct NonPositiveInput : std::invalid_argument
    {
        explicit NonPositiveInput(const std::string &what) : std::invalid_argument(what) {}
    };

    struct NonPositiveDistance : std::invalid_argument
    {
        explicit NonPositiveDistance(const std::string &what) : std::invalid_argument(what) {}
    };

    struct DimensionMismatch : std::invalid_argument
    {
        explicit DimensionMismatch(const std::string &what) : std::invalid_argument(what) {}
    };

    struct ModeCountMismatch : std::invalid_argument
    {
        explicit ModeCountMismatch(const std::string &what) : std::invalid_argument(what) {}
    };

    struct MalformedInput : std::runtime_error
    {
        explicit MalformedInput(const std::string &what) : std::runtime_error(what) {}
    };

    struct ZeroGain : std::runtime_error
    {
        explicit ZeroGain(const std::string &what) : std::runtime_error(what) {}
    };
}

#endif
