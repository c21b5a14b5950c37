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

#include <stdexcept>
#include <string>

namespace spacemimo
{
    // Input or state violates a documented invariant (exit code 3 in the CLI).
    class InvariantError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // A numerical routine failed to converge or could not meet its tolerance (exit code 4).
    class NumericalError : public std::runtime_error
    {
    public:
        NumericalError(const std::string &operation, const std::string &what)
            : std::runtime_error(operation + ": " + what), operation_(operation) {}
        const std::string &operation() const noexcept { return operation_; }

    private:
        std::string operation_;
    };

    // Malformed configuration (exit code 2). Line is 0 when the problem is not tied to a line.
    class ConfigError : public std::runtime_error
    {
    public:
        ConfigError(const std::string &key, int line, const std::string &what)
            : std::runtime_error(what), key_(key), line_(line) {}
        const std::string &key() const noexcept { return key_; }
        int line() const noexcept { return line_; }

    private:
        std::string key_;
        int line_;
    };
} // namespace spacemimo
