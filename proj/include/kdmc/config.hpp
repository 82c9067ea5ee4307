// Copyright 2026 the kdmc authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "kdmc/background.hpp"
#include "kdmc/mlmc.hpp"

namespace kdmc {

inline constexpr const char* kVersion = "0.1.0";

/// Thrown on an invalid run configuration; the CLI maps it to exit code 1.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Configuration shared by the experiment commands. Every field maps to a
/// config-file key of the same name; command-line flags override the file.
struct RunConfig {
    std::string background = "B1";  ///< "B1" | "B2"
    double a = 0.0;
    double b = 1.0;
    double T = 1.0;
    int max_level = 10;
    std::uint64_t seed = 0;
    std::int64_t n_warmup = 100;

    /// Tolerance schedule: explicit list, or eps^(r) = eps0 / sqrt(2^r) for
    /// r = r_min..r_max when the list is empty.
    std::vector<double> eps_list;
    double eps0 = 1.0;
    int r_min = 0;
    int r_max = 0;

    std::string mode = "both";           ///< "kdmc" | "ml-kdmc" | "both"
    std::string selection = "heuristic"; ///< "exact" | "heuristic"
    std::string cost_model = "steps";    ///< "steps" | "seconds"
    int workers = 1;
    std::string out_dir = ".";

    // check-rn / variance-decay specifics
    std::vector<int> levels;        ///< levels to scan (empty: command default)
    std::vector<int> factors = {2}; ///< coarsening factors M
    std::int64_t n_samples = 1000;  ///< draws per goodness-of-fit test
    std::int64_t b_reps = 10000;    ///< null replicates per test
    int reps = 5;                   ///< repetitions for speedup error bars

    BackgroundFamily family() const {
        if (background == "B1") return BackgroundFamily::B1;
        if (background == "B2") return BackgroundFamily::B2;
        throw ConfigError("background must be B1 or B2");
    }

    Background make() const { return make_background(family(), a, b); }

    EstimatorMode estimator_mode() const {
        if (mode == "kdmc") return EstimatorMode::kdmc;
        if (mode == "ml-kdmc") return EstimatorMode::ml_kdmc;
        throw ConfigError("mode must be kdmc, ml-kdmc or both");
    }

    SelectionMode selection_mode() const {
        if (selection == "exact") return SelectionMode::exact;
        if (selection == "heuristic") return SelectionMode::heuristic;
        throw ConfigError("selection must be exact or heuristic");
    }

    CostModel cost() const {
        if (cost_model == "steps") return CostModel::steps;
        if (cost_model == "seconds") return CostModel::seconds;
        throw ConfigError("cost_model must be steps or seconds");
    }

    std::vector<double> tolerances() const {
        std::vector<double> eps = eps_list;
        if (eps.empty()) {
            for (int r = r_min; r <= r_max; ++r) {
                eps.push_back(eps0 / std::sqrt(std::pow(2.0, r)));
            }
        }
        if (eps.empty()) throw ConfigError("no tolerances configured");
        for (std::size_t i = 0; i < eps.size(); ++i) {
            if (!(eps[i] > 0.0)) throw ConfigError("tolerances must be positive");
            if (i > 0 && !(eps[i] < eps[i - 1])) {
                throw ConfigError("tolerances must be strictly decreasing");
            }
        }
        return eps;
    }

    EstimatorOptions estimator_options() const {
        EstimatorOptions opt;
        opt.seed = seed;
        opt.workers = workers;
        opt.cost_model = cost();
        return opt;
    }

    /// Sets one field from its config-file key. Unknown keys and malformed
    /// values raise ConfigError.
    void set(const std::string& key, const std::string& value);

    void validate() const {
        (void)family();
        if (!(b > 0.0)) throw ConfigError("b must be positive");
        if (!(a >= 0.0)) throw ConfigError("a must be nonnegative");
        if (!(T > 0.0)) throw ConfigError("T must be positive");
        if (max_level < 0) throw ConfigError("max_level must be nonnegative");
        if (n_warmup < 2) throw ConfigError("n_warmup must be at least 2");
        if (workers < 1) throw ConfigError("workers must be at least 1");
        if (n_samples < 1) throw ConfigError("n_samples must be positive");
        if (b_reps < 1000) throw ConfigError("b_reps must be at least 1000");
        if (reps < 2) throw ConfigError("reps must be at least 2");
        if (mode != "both") (void)estimator_mode();
        (void)selection_mode();
        (void)cost();
        (void)tolerances();
        for (const int l : levels) {
            if (l < 0 || l > 62) throw ConfigError("levels must lie in [0, 62]");
        }
        for (const int m : factors) {
            if (m < 2 || (m & (m - 1)) != 0) {
                throw ConfigError("factors must be powers of two, at least 2");
            }
        }
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline double parse_double(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw ConfigError(key + ": expected a number, got '" + value + "'");
    }
    if (pos != value.size()) throw ConfigError(key + ": trailing characters in '" + value + "'");
    return v;
}

inline std::int64_t parse_int(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(value, &pos);
    } catch (const std::exception&) {
        throw ConfigError(key + ": expected an integer, got '" + value + "'");
    }
    if (pos != value.size()) throw ConfigError(key + ": trailing characters in '" + value + "'");
    return v;
}

template <typename T, typename Parse>
std::vector<T> parse_list(const std::string& key, const std::string& value, Parse&& parse) {
    std::vector<T> out;
    std::string item;
    for (const char c : value + ",") {
        if (c == ',' || c == ';') {
            const std::string token = trim(item);
            if (!token.empty()) out.push_back(parse(key, token));
            item.clear();
        } else {
            item += c;
        }
    }
    return out;
}

}  // namespace detail

inline void RunConfig::set(const std::string& key, const std::string& value) {
    using detail::parse_double;
    using detail::parse_int;
    if (key == "background") background = value;
    else if (key == "a") a = parse_double(key, value);
    else if (key == "b") b = parse_double(key, value);
    else if (key == "T") T = parse_double(key, value);
    else if (key == "max_level") max_level = static_cast<int>(parse_int(key, value));
    else if (key == "seed") seed = static_cast<std::uint64_t>(parse_int(key, value));
    else if (key == "n_warmup") n_warmup = parse_int(key, value);
    else if (key == "eps0") eps0 = parse_double(key, value);
    else if (key == "r_min") r_min = static_cast<int>(parse_int(key, value));
    else if (key == "r_max") r_max = static_cast<int>(parse_int(key, value));
    else if (key == "eps_list") eps_list = detail::parse_list<double>(key, value, parse_double);
    else if (key == "mode") mode = value;
    else if (key == "selection") selection = value;
    else if (key == "cost_model") cost_model = value;
    else if (key == "workers") workers = static_cast<int>(parse_int(key, value));
    else if (key == "out") out_dir = value;
    else if (key == "levels") {
        levels = detail::parse_list<int>(key, value, [](const std::string& k, const std::string& v) {
            return static_cast<int>(detail::parse_int(k, v));
        });
    } else if (key == "factors") {
        factors = detail::parse_list<int>(key, value, [](const std::string& k, const std::string& v) {
            return static_cast<int>(detail::parse_int(k, v));
        });
    } else if (key == "n_samples") n_samples = parse_int(key, value);
    else if (key == "b_reps") b_reps = parse_int(key, value);
    else if (key == "reps") reps = static_cast<int>(parse_int(key, value));
    else throw ConfigError("unknown configuration key '" + key + "'");
}

/// Reads a flat key=value configuration stream ('#' starts a comment) and
/// applies every entry whose key `overridden` does not claim, so values given
/// on the command line win over the file.
inline void load_config(RunConfig& cfg, std::istream& is,
                        const std::function<bool(const std::string&)>& overridden =
                            [](const std::string&) { return false; }) {
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": expected key=value, got '" + line + "'");
        }
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
        }
        if (!overridden(key)) cfg.set(key, value);
    }
}

}  // namespace kdmc
