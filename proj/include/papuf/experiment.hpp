#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <string_view>

#include "papuf/device_model.hpp"
#include "papuf/netlist.hpp"

namespace papuf {

using KeyValues = std::map<std::string, std::string>;

/// `key=value` lines; blank lines and lines starting with '#' are ignored.
KeyValues parse_key_values(std::istream& in);
std::string format_key_values(const KeyValues& kv);

/// FNV-1a 64-bit, printed as 16 hex digits.
std::string stable_hash_hex(std::string_view text);

struct ExperimentConfig {
    std::string design = "pa-puf";
    int stages = 64;
    std::string taps; // "tap:target,..." for ff-pa-puf; empty means spaced default
    DelayParams params;
    int population = 3;
    int challenges = 100;
    int repetitions = 11;
    int response_size = 128;
    std::uint64_t seed = 1;
    std::string output_dir = ".";

    Netlist netlist() const;

    /// Every field, sorted by key.
    KeyValues to_key_values() const;
    /// Overrides fields present in kv; unknown keys throw ParameterError.
    void apply(const KeyValues& kv);

    /// Hash of the canonical serialization excluding output_dir.
    std::string hash() const;
};

/// Fixed six-decimal formatting used by every text file.
std::string format_fixed(double value, int decimals = 6);
double parse_double(std::string_view text, std::string_view what);
std::int64_t parse_int(std::string_view text, std::string_view what);
std::uint64_t parse_uint(std::string_view text, std::string_view what);

} // namespace papuf
