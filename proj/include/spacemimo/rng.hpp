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

#include <cstdint>
#include <random>
#include <string_view>

namespace spacemimo::rng
{
    // SplitMix64 finalizer; a bijective 64-bit mix.
    constexpr std::uint64_t mix64(std::uint64_t z) noexcept
    {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Counter-based child seed: derive(master, a, b) is a pure function, so per-trial streams do not
    // depend on the order in which trials are executed.
    constexpr std::uint64_t derive(std::uint64_t master, std::uint64_t stream, std::uint64_t counter = 0) noexcept
    {
        return mix64(mix64(master ^ mix64(stream)) + counter);
    }

    // FNV-1a over bytes; used for scenario fingerprints and string-keyed streams.
    constexpr std::uint64_t fnv1a(std::string_view s) noexcept
    {
        std::uint64_t h = 0xCBF29CE484222325ULL;
        for (unsigned char ch : s)
        {
            h ^= ch;
            h *= 0x100000001B3ULL;
        }
        return h;
    }

    // mt19937_64 is fully specified by the standard; doubles are built from the top 53 bits so the
    // stream is identical across standard libraries (std::uniform_real_distribution is not).
    class Stream
    {
    public:
        explicit Stream(std::uint64_t seed) : engine_(seed) {}

        double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
        double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    private:
        std::mt19937_64 engine_;
    };
} // namespace spacemimo::rng
