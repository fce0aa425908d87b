#include "core/model_config.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <string>

#include "core/csv.hpp"
#include "core/errors.hpp"

namespace ranklab {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

double parse_value(std::string_view v, std::size_t line_no) {
    return csv::parse_number(trim(v), line_no);
}

std::vector<double> parse_list(std::string_view v, std::size_t line_no) {
    std::vector<double> out;
    std::size_t start = 0;
    while (true) {
        std::size_t end = v.find(',', start);
        std::string_view item =
            end == std::string_view::npos ? v.substr(start) : v.substr(start, end - start);
        out.push_back(parse_value(item, line_no));
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    return out;
}

std::uint64_t parse_seed(std::string_view v, std::size_t line_no) {
    v = trim(v);
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), value);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
        throw ParseError("line " + std::to_string(line_no) + ": malformed seed '" +
                         std::string(v) + "'");
    }
    return value;
}

}  // namespace

ModelConfig parse_model_config(std::string_view text) {
    struct Entry {
        std::string value;
        std::size_t line_no;
    };
    std::map<std::string, Entry, std::less<>> entries;

    auto lines = csv::split_lines(text);
    for (std::size_t li = 0; li < lines.size(); ++li) {
        std::string_view line = lines[li];
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t line_no = li + 1;
        auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError("line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        std::string key(trim(line.substr(0, eq)));
        std::string value(trim(line.substr(eq + 1)));
        if (key.empty() || value.empty()) {
            throw ParseError("line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        if (!entries.emplace(key, Entry{value, line_no}).second) {
            throw DuplicateError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
        }
    }

    static const char* known[] = {"n", "g", "s", "dt", "horizon", "obs_interval", "seed", "burn_in"};
    for (const auto& [key, entry] : entries) {
        bool ok = false;
        for (const char* k : known) {
            if (key == k) {
                ok = true;
                break;
            }
        }
        if (!ok) {
            throw ParseError("line " + std::to_string(entry.line_no) + ": unknown key '" + key + "'");
        }
    }

    auto require = [&](const char* key) -> const Entry& {
        auto it = entries.find(key);
        if (it == entries.end()) throw ParseError(std::string("missing required key '") + key + "'");
        return it->second;
    };

    ModelConfig config;
    {
        const Entry& e = require("n");
        double v = parse_value(e.value, e.line_no);
        if (v < 2 || v != std::floor(v)) {
            throw ParseError("line " + std::to_string(e.line_no) + ": n must be an integer >= 2");
        }
        config.spec.n = static_cast<int>(v);
    }
    const std::size_t n = static_cast<std::size_t>(config.spec.n);

    auto vector_key = [&](const char* key) {
        const Entry& e = require(key);
        std::vector<double> values = parse_list(e.value, e.line_no);
        if (values.size() == 1) values.assign(n, values[0]);
        if (values.size() != n) {
            throw ParseError("line " + std::to_string(e.line_no) + ": '" + key + "' needs 1 or " +
                             std::to_string(n) + " values, got " + std::to_string(values.size()));
        }
        return values;
    };
    config.spec.g = vector_key("g");
    config.spec.s = vector_key("s");

    {
        const Entry& e = require("horizon");
        config.spec.horizon = parse_value(e.value, e.line_no);
    }
    if (auto it = entries.find("dt"); it != entries.end()) {
        config.spec.dt = parse_value(it->second.value, it->second.line_no);
    }
    if (auto it = entries.find("obs_interval"); it != entries.end()) {
        config.spec.obs_interval = parse_value(it->second.value, it->second.line_no);
    }
    if (auto it = entries.find("seed"); it != entries.end()) {
        config.seed = parse_seed(it->second.value, it->second.line_no);
    }
    if (auto it = entries.find("burn_in"); it != entries.end()) {
        config.burn_in = parse_value(it->second.value, it->second.line_no);
        if (config.burn_in < 0.0 || config.burn_in >= 1.0) {
            throw ParseError("line " + std::to_string(it->second.line_no) +
                             ": burn_in must be in [0, 1)");
        }
    }

    config.spec.validate();
    return config;
}

}  // namespace ranklab
