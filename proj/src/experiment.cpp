#include "papuf/experiment.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

#include "papuf/errors.hpp"

namespace papuf {
namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

} // namespace

KeyValues parse_key_values(std::istream& in) {
    KeyValues kv;
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw FormatError("expected key=value, got '" + t + "'");
        kv[trim(std::string_view(t).substr(0, eq))] = trim(std::string_view(t).substr(eq + 1));
    }
    return kv;
}

std::string format_key_values(const KeyValues& kv) {
    std::string s;
    for (const auto& [k, v] : kv) s += k + "=" + v + "\n";
    return s;
}

std::string stable_hash_hex(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string format_fixed(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    return buf;
}

double parse_double(std::string_view text, std::string_view what) {
    const std::string s(text);
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw FormatError("bad number for " + std::string(what) + ": '" + s + "'");
}

std::int64_t parse_int(std::string_view text, std::string_view what) {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw FormatError("bad integer for " + std::string(what) + ": '" + std::string(text) + "'");
    }
    return v;
}

std::uint64_t parse_uint(std::string_view text, std::string_view what) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw FormatError("bad unsigned integer for " + std::string(what) + ": '" + std::string(text) + "'");
    }
    return v;
}

Netlist ExperimentConfig::netlist() const {
    const Design d = parse_design(design);
    if (d != Design::FfPaPuf) {
        if (!taps.empty() && taps != "none") throw NetlistError("taps given for a design without feed-forward arbiters");
        return Netlist(d, stages);
    }
    if (taps.empty()) return Netlist::ff_pa_puf(stages, spaced_taps(stages, 2));
    if (taps == "none") return Netlist::ff_pa_puf(stages, {});
    return Netlist::ff_pa_puf(stages, parse_taps(taps));
}

KeyValues ExperimentConfig::to_key_values() const {
    return {
        {"challenges", std::to_string(challenges)},
        {"design", design},
        {"mean_delay", format_fixed(params.mean_delay)},
        {"metastability_window", format_fixed(params.metastability_window)},
        {"output_dir", output_dir},
        {"population", std::to_string(population)},
        {"repetitions", std::to_string(repetitions)},
        {"response_size", std::to_string(response_size)},
        {"seed", std::to_string(seed)},
        {"sigma_noise", format_fixed(params.sigma_noise)},
        {"sigma_process", format_fixed(params.sigma_process)},
        {"stages", std::to_string(stages)},
        {"taps", taps},
    };
}

void ExperimentConfig::apply(const KeyValues& kv) {
    for (const auto& [k, v] : kv) {
        if (k == "design") {
            design = v;
        } else if (k == "stages") {
            stages = static_cast<int>(parse_int(v, k));
        } else if (k == "taps") {
            taps = v;
        } else if (k == "mean_delay") {
            params.mean_delay = parse_double(v, k);
        } else if (k == "sigma_process") {
            params.sigma_process = parse_double(v, k);
        } else if (k == "sigma_noise") {
            params.sigma_noise = parse_double(v, k);
        } else if (k == "metastability_window") {
            params.metastability_window = parse_double(v, k);
        } else if (k == "population") {
            population = static_cast<int>(parse_int(v, k));
        } else if (k == "challenges") {
            challenges = static_cast<int>(parse_int(v, k));
        } else if (k == "repetitions") {
            repetitions = static_cast<int>(parse_int(v, k));
        } else if (k == "response_size") {
            response_size = static_cast<int>(parse_int(v, k));
        } else if (k == "seed") {
            seed = parse_uint(v, k);
        } else if (k == "output_dir") {
            output_dir = v;
        } else {
            throw ParameterError("unknown config key '" + k + "'");
        }
    }
}

std::string ExperimentConfig::hash() const {
    KeyValues kv = to_key_values();
    kv.erase("output_dir");
    return stable_hash_hex(format_key_values(kv));
}

} // namespace papuf
