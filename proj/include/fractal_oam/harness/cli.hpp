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

#ifndef FRACTAL_OAM_HARNESS_CLI_HPP
#define FRACTAL_OAM_HARNESS_CLI_HPP

#include <iosfwd>

namespace fractal_oam
{
    // Subcommands: grid, fieldmap, link, sweep, ingest-channel. Returns 0 on
    // success, nonzero with a diagnostic on stderr otherwise.
    int cli_main(int argc, const char *const *argv, std::ostream &out, std::ostream &err);
    int cli_main(int argc, const char *const *argv);
}

#endif
