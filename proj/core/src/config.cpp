#include <cctype>
#include <cmath>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "wpa/errors.hpp"
#include "wpa/format.hpp"
#include "wpa/trainer.hpp"

namespace wpa {

void TrainConfig::validate() const {
    if (!(d > 0.0) || !std::isfinite(d)) {
        throw ConfigError("d must be a positive real");
    }
    if (record_every < 1) {
        throw ConfigError("record_every must be >= 1");
    }
    if (replicas < 1) {
        throw ConfigError("replicas must be >= 1");
    }
    if (!(stop_cost >= 0.0)) {
        throw ConfigError("stop_cost must be non-negative");
    }
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

template <class T>
T parse_number(std::string_view key, std::string_view value, std::size_t line) {
    T out{};
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw ConfigError("line " + std::to_string(line) + ": bad value '" + std::string(value) + "' for " +
                          std::string(key));
    }
    return out;
}

}

TrainConfig parse_config(std::istream& in, TrainConfig cfg) {
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string_view s(raw);
        if (auto hash = s.find('#'); hash != std::string_view::npos) {
            s = s.substr(0, hash);
        }
        s = trim(s);
        if (s.empty()) {
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line) + ": expected key = value");
        }
        const auto key = trim(s.substr(0, eq));
        const auto value = trim(s.substr(eq + 1));
        if (key == "d") {
            cfg.d = parse_number<double>(key, value, line);
        } else if (key == "max_steps") {
            cfg.max_steps = parse_number<std::uint64_t>(key, value, line);
        } else if (key == "seed") {
            cfg.seed = parse_number<std::uint64_t>(key, value, line);
        } else if (key == "record_every") {
            cfg.record_every = parse_number<std::uint64_t>(key, value, line);
        } else if (key == "stop_cost") {
            cfg.stop_cost = parse_number<double>(key, value, line);
        } else if (key == "replicas") {
            cfg.replicas = parse_number<std::size_t>(key, value, line);
        } else {
            throw ConfigError("line " + std::to_string(line) + ": unknown key '" + std::string(key) + "'");
        }
    }
    cfg.validate();
    return cfg;
}

TrainConfig load_config(const std::string& path, TrainConfig defaults) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file " + path);
    }
    return parse_config(in, defaults);
}

void write_config(std::ostream& out, const TrainConfig& cfg) {
    out << "d = " << format_real(cfg.d) << '\n'
        << "max_steps = " << cfg.max_steps << '\n'
        << "seed = " << cfg.seed << '\n'
        << "record_every = " << cfg.record_every << '\n'
        << "stop_cost = " << format_real(cfg.stop_cost) << '\n'
        << "replicas = " << cfg.replicas << '\n';
}

}
