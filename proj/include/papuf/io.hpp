#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "papuf/attack.hpp"
#include "papuf/device_model.hpp"
#include "papuf/experiment.hpp"
#include "papuf/fuzzy_extractor.hpp"
#include "papuf/metrics.hpp"
#include "papuf/response.hpp"

namespace papuf {

// Device file: `# papuf-device v1`, key=value header lines, then a `delays`
// line followed by one row per (stage, bit): "stage bit d_line0 d_line1 [d_line2]".
void write_device(std::ostream& out, const DeviceInstance& device, const std::string& config_hash);
DeviceInstance read_device(std::istream& in, std::string* config_hash = nullptr);

/// Shortest decimal text that parses back to the same double.
std::string format_exact(double value);

// CRP file: `# key=value` header lines (netlist, lfsr, bit_order, ...), a
// column header, then `device_id,challenge_hex,repetition,response_hex,response_bits_len`.
void write_crps(std::ostream& out, const CrpSet& crps);
CrpSet read_crps(std::istream& in);

// Helper-data file: n, k, t, generator polynomial in hex and the offset in
// hex, plus caller-supplied extra keys (challenge, response size, ...).
void write_helper(std::ostream& out, const HelperData& helper, const KeyValues& extra);
HelperData read_helper(std::istream& in, KeyValues* extra = nullptr);

void write_model(std::ostream& out, const AttackModel& model, const std::string& config_hash);
AttackModel read_model(std::istream& in);

void write_histogram_csv(std::ostream& out, const HdHistogram& histogram);

/// Flat key=value report, keys sorted.
KeyValues report_key_values(const MetricsReport& report);

} // namespace papuf
