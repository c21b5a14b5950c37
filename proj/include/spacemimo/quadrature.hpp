// SPDX-License-Identifier: Apache-2.0
//
// spacemimo: capacity analysis for long-range free-space MIMO links
// Copyright (C) 2026 The spacemimo authors
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

#pragma once

#include <vector>

namespace spacemimo
{
    struct QuadratureRule
    {
        std::vector<double> nodes;
        std::vector<double> weights;
    };

    // n-point Gauss-Legendre rule on [a, b], nodes ascending. Newton iteration on the three-term
    // recurrence; nodes are accurate to a few ulps for n up to several thousand.
    QuadratureRule gauss_legendre(int n, double a = -1.0, double b = 1.0);

    // Composite rule: [a, b] split into `panels` equal panels, each with an n-point Gauss-Legendre rule.
    QuadratureRule composite_gauss_legendre(int n, int panels, double a, double b);
} // namespace spacemimo
