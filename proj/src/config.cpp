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

#include "spacemimo/config.hpp"
#include "spacemimo/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace spacemimo
{
    namespace
    {
        std::string_view trim(std::string_view s)
        {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string_view::npos)
                return {};
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        }

        std::vector<std::string_view> split(std::string_view s, char sep)
        {
            std::vector<std::string_view> out;
            std::size_t start = 0;
            while (true)
            {
                const auto pos = s.find(sep, start);
                out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
                if (pos == std::string_view::npos)
                    return out;
                start = pos + 1;
            }
        }

        template <typename T>
        bool parse_number(std::string_view s, T &out)
        {
            const auto *first = s.data(), *last = s.data() + s.size();
            if (first != last && *first == '+')
                ++first;
            const auto r = std::from_chars(first, last, out);
            return r.ec == std::errc() && r.ptr == last && first != last;
        }
    } // namespace

    const std::vector<std::string> &known_config_keys()
    {
        static const std::vector<std::string> keys = {
            "wavelength_m", "range_m", "tx_aperture_m2", "rx_aperture_m2", "loss_factor", "power_W", "bandwidth_Hz",
            "noise_psd_W_per_Hz", "M", "disc_radius_m", "area_over_lambda_d", "trials", "seed", "execution", "gamma_g",
            "M_list", "S_over_ld_list", "gamma_g_list", "c_list", "cell_counts", "independent_partitions",
            "partition_seed", "quadrature_order", "max_azimuthal_order", "radial_modes_per_order", "f_trials"};
        return keys;
    }

    ScenarioConfig ScenarioConfig::parse(std::string_view text)
    {
        ScenarioConfig cfg;
        const auto &keys = known_config_keys();
        int line_no = 0;
        for (auto raw : split(text, '\n'))
        {
            ++line_no;
            if (const auto hash = raw.find('#'); hash != std::string_view::npos)
                raw = raw.substr(0, hash);
            const auto line = trim(raw);
            if (line.empty())
                continue;
            const auto eq = line.find('=');
            if (eq == std::string_view::npos)
                throw ConfigError("", line_no, "line " + std::to_string(line_no) + ": expected key=value");
            const std::string key(trim(line.substr(0, eq)));
            const std::string value(trim(line.substr(eq + 1)));
            if (key.empty())
                throw ConfigError("", line_no, "line " + std::to_string(line_no) + ": empty key");
            if (std::find(keys.begin(), keys.end(), key) == keys.end())
                throw ConfigError(key, line_no, "line " + std::to_string(line_no) + ": unknown key '" + key + "'");
            if (value.empty())
                throw ConfigError(key, line_no, "line " + std::to_string(line_no) + ": empty value for '" + key + "'");
            if (cfg.entries_.count(key))
                throw ConfigError(key, line_no, "line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
            cfg.entries_[key] = {value, line_no};
        }
        if (cfg.has("disc_radius_m") && cfg.has("area_over_lambda_d"))
            throw ConfigError("area_over_lambda_d", cfg.entries_.at("area_over_lambda_d").line,
                              "give exactly one of disc_radius_m and area_over_lambda_d");
        return cfg;
    }

    ScenarioConfig ScenarioConfig::load(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw ConfigError("", 0, "cannot read config file '" + path.string() + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        return parse(ss.str());
    }

    void ScenarioConfig::set(const std::string &key, const std::string &value)
    {
        const auto &keys = known_config_keys();
        if (std::find(keys.begin(), keys.end(), key) == keys.end())
            throw ConfigError(key, 0, "unknown key '" + key + "'");
        entries_[key] = {value, 0};
    }

    const ScenarioConfig::Entry &ScenarioConfig::require(const std::string &key) const
    {
        const auto it = entries_.find(key);
        if (it == entries_.end())
            throw ConfigError(key, 0, "missing required key '" + key + "'");
        return it->second;
    }

    double ScenarioConfig::get_double(const std::string &key) const
    {
        const auto &e = require(key);
        double v = 0.0;
        if (!parse_number(e.value, v) || !std::isfinite(v))
            throw ConfigError(key, e.line,
                              "line " + std::to_string(e.line) + ": '" + key + "' is not a finite number: " + e.value);
        return v;
    }

    double ScenarioConfig::get_double(const std::string &key, double fallback) const
    {
        return has(key) ? get_double(key) : fallback;
    }

    long long ScenarioConfig::get_int(const std::string &key) const
    {
        const auto &e = require(key);
        long long v = 0;
        if (!parse_number(e.value, v))
            throw ConfigError(key, e.line,
                              "line " + std::to_string(e.line) + ": '" + key + "' is not an integer: " + e.value);
        return v;
    }

    long long ScenarioConfig::get_int(const std::string &key, long long fallback) const
    {
        return has(key) ? get_int(key) : fallback;
    }

    std::uint64_t ScenarioConfig::get_u64(const std::string &key, std::uint64_t fallback) const
    {
        if (!has(key))
            return fallback;
        const auto &e = require(key);
        std::uint64_t v = 0;
        if (!parse_number(e.value, v))
            throw ConfigError(key, e.line,
                              "line " + std::to_string(e.line) + ": '" + key + "' is not an unsigned 64-bit integer");
        return v;
    }

    bool ScenarioConfig::get_bool(const std::string &key, bool fallback) const
    {
        if (!has(key))
            return fallback;
        const auto &e = require(key);
        if (e.value == "true" || e.value == "1")
            return true;
        if (e.value == "false" || e.value == "0")
            return false;
        throw ConfigError(key, e.line, "line " + std::to_string(e.line) + ": '" + key + "' must be true or false");
    }

    std::string ScenarioConfig::get_string(const std::string &key, const std::string &fallback) const
    {
        return has(key) ? require(key).value : fallback;
    }

    std::vector<double> ScenarioConfig::get_double_list(const std::string &key) const
    {
        const auto &e = require(key);
        std::vector<double> out;
        for (auto item : split(e.value, ','))
        {
            double v = 0.0;
            if (!parse_number(item, v) || !std::isfinite(v))
                throw ConfigError(key, e.line,
                                  "line " + std::to_string(e.line) + ": bad list element '" + std::string(item) + "'");
            out.push_back(v);
        }
        return out;
    }

    std::vector<int> ScenarioConfig::get_int_list(const std::string &key) const
    {
        const auto &e = require(key);
        std::vector<int> out;
        for (auto item : split(e.value, ','))
        {
            int v = 0;
            if (!parse_number(item, v) || v < 1)
                throw ConfigError(key, e.line,
                                  "line " + std::to_string(e.line) + ": bad positive integer '" + std::string(item) + "'");
            out.push_back(v);
        }
        return out;
    }

    LinkBudget ScenarioConfig::link_budget() const
    {
        LinkBudget::Params p;
        p.wavelength_m = get_double("wavelength_m");
        p.range_m = get_double("range_m");
        p.tx_aperture_m2 = get_double("tx_aperture_m2");
        p.rx_aperture_m2 = get_double("rx_aperture_m2");
        p.loss_factor = get_double("loss_factor", 1.0);
        p.power_W = get_double("power_W");
        p.bandwidth_Hz = get_double("bandwidth_Hz");
        p.noise_psd_W_per_Hz = get_double("noise_psd_W_per_Hz");
        return LinkBudget(p);
    }

    int ScenarioConfig::M() const
    {
        const auto m = get_int("M");
        if (m < 1 || m > 1 << 16)
            throw ConfigError("M", require("M").line, "line " + std::to_string(require("M").line) + ": M must be >= 1");
        return static_cast<int>(m);
    }

    double ScenarioConfig::disc_radius_m(const LinkBudget &budget) const
    {
        if (has("disc_radius_m") == has("area_over_lambda_d"))
            throw ConfigError("disc_radius_m", 0, "give exactly one of disc_radius_m and area_over_lambda_d");
        if (has("disc_radius_m"))
        {
            const double r = get_double("disc_radius_m");
            if (!(r > 0.0))
                throw ConfigError("disc_radius_m", require("disc_radius_m").line, "disc_radius_m must be > 0");
            return r;
        }
        const double a = get_double("area_over_lambda_d");
        if (!(a > 0.0))
            throw ConfigError("area_over_lambda_d", require("area_over_lambda_d").line, "area_over_lambda_d must be > 0");
        return std::sqrt(a * budget.lambda_d() / std::numbers::pi);
    }

    std::size_t ScenarioConfig::trials(std::size_t fallback) const
    {
        const auto t = get_int("trials", static_cast<long long>(fallback));
        if (t < 1)
            throw ConfigError("trials", has("trials") ? require("trials").line : 0, "trials must be >= 1");
        return static_cast<std::size_t>(t);
    }

    std::uint64_t ScenarioConfig::seed() const { return get_u64("seed", 1); }

    Execution ScenarioConfig::execution() const
    {
        const auto s = get_string("execution", "parallel");
        if (s == "parallel")
            return Execution::Parallel;
        if (s == "serial")
            return Execution::Serial;
        throw ConfigError("execution", require("execution").line, "execution must be serial or parallel");
    }

    std::string ScenarioConfig::canonical() const
    {
        std::string out;
        for (const auto &[k, e] : entries_)
            out += k + "=" + e.value + "\n";
        return out;
    }
} // namespace spacemimo
