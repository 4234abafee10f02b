#include "papuf/io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "papuf/errors.hpp"
#include "papuf/lfsr.hpp"

namespace papuf {
namespace {

constexpr const char* kDeviceMagic = "# papuf-device v1";
constexpr const char* kCrpMagic = "# papuf-crps v1";
constexpr const char* kHelperMagic = "# papuf-helper v1";
constexpr const char* kModelMagic = "# papuf-model v1";
constexpr const char* kCrpColumns = "device_id,challenge_hex,repetition,response_hex,response_bits_len";
constexpr const char* kBitOrder = "bit0_is_msb_of_first_hex_nibble";

void expect_magic(std::istream& in, const char* magic) {
    std::string line;
    if (!std::getline(in, line) || line != magic) {
        throw FormatError(std::string("missing '") + magic + "' header");
    }
}

/// key=value lines up to (not including) the `terminator` line.
KeyValues read_header(std::istream& in, const std::string& terminator) {
    KeyValues kv;
    std::string line;
    while (std::getline(in, line)) {
        if (line == terminator) return kv;
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw FormatError("expected key=value, got '" + line + "'");
        kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    if (terminator.empty()) return kv;
    throw FormatError("missing '" + terminator + "' section");
}

const std::string& require(const KeyValues& kv, const std::string& key) {
    const auto it = kv.find(key);
    if (it == kv.end()) throw FormatError("missing '" + key + "' field");
    return it->second;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) out.push_back(item);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

DelayParams params_from(const KeyValues& kv, const DelayParams& fallback) {
    DelayParams p = fallback;
    if (auto it = kv.find("mean_delay"); it != kv.end()) p.mean_delay = parse_double(it->second, "mean_delay");
    if (auto it = kv.find("sigma_process"); it != kv.end()) p.sigma_process = parse_double(it->second, "sigma_process");
    if (auto it = kv.find("sigma_noise"); it != kv.end()) p.sigma_noise = parse_double(it->second, "sigma_noise");
    if (auto it = kv.find("metastability_window"); it != kv.end()) {
        p.metastability_window = parse_double(it->second, "metastability_window");
    }
    p.validate();
    return p;
}

void put_params(KeyValues& kv, const DelayParams& p) {
    kv["mean_delay"] = format_exact(p.mean_delay);
    kv["sigma_process"] = format_exact(p.sigma_process);
    kv["sigma_noise"] = format_exact(p.sigma_noise);
    kv["metastability_window"] = format_exact(p.metastability_window);
}

} // namespace

std::string format_exact(double value) {
    char buf[64];
    for (int precision = 6; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof buf, "%.*g", precision, value);
        if (std::stod(buf) == value) break;
    }
    return buf;
}

void write_device(std::ostream& out, const DeviceInstance& device, const std::string& config_hash) {
    KeyValues kv;
    kv["config_hash"] = config_hash;
    kv["device_id"] = device.id();
    kv["lines"] = std::to_string(device.netlist().lines());
    kv["netlist"] = device.netlist().descriptor();
    kv["seed"] = std::to_string(device.seed());
    put_params(kv, device.params());
    out << kDeviceMagic << "\n" << format_key_values(kv) << "delays\n";
    const int lines = device.netlist().lines();
    for (int stage = 0; stage < device.netlist().stages(); ++stage) {
        for (int bit = 0; bit < 2; ++bit) {
            out << stage << " " << bit;
            for (int line = 0; line < lines; ++line) out << " " << format_fixed(device.delay(stage, bit, line), 6);
            out << "\n";
        }
    }
}

DeviceInstance read_device(std::istream& in, std::string* config_hash) {
    expect_magic(in, kDeviceMagic);
    const KeyValues kv = read_header(in, "delays");
    const Netlist netlist = Netlist::from_descriptor(require(kv, "netlist"));
    if (parse_int(require(kv, "lines"), "lines") != netlist.lines()) throw FormatError("line count disagrees with the netlist");
    const DelayParams params = params_from(kv, DelayParams{});
    const int lines = netlist.lines();
    std::vector<double> delays(static_cast<std::size_t>(netlist.stages()) * 2 * static_cast<std::size_t>(lines), 0.0);
    std::vector<bool> seen(static_cast<std::size_t>(netlist.stages()) * 2, false);
    std::string line;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string stage_text, bit_text;
        row >> stage_text >> bit_text;
        const auto stage = parse_int(stage_text, "stage");
        const auto bit = parse_int(bit_text, "bit");
        if (stage < 0 || stage >= netlist.stages() || (bit != 0 && bit != 1)) throw FormatError("bad delay row '" + line + "'");
        const auto slot = static_cast<std::size_t>(stage * 2 + bit);
        if (seen[slot]) throw FormatError("duplicate delay row '" + line + "'");
        seen[slot] = true;
        for (int l = 0; l < lines; ++l) {
            std::string value;
            if (!(row >> value)) throw FormatError("short delay row '" + line + "'");
            delays[slot * static_cast<std::size_t>(lines) + static_cast<std::size_t>(l)] = parse_double(value, "delay");
        }
        std::string extra;
        if (row >> extra) throw FormatError("long delay row '" + line + "'");
        ++rows;
    }
    if (rows != seen.size()) throw FormatError("device file has " + std::to_string(rows) + " delay rows, expected " + std::to_string(seen.size()));
    if (config_hash) *config_hash = kv.count("config_hash") ? kv.at("config_hash") : "";
    return DeviceInstance(require(kv, "device_id"), netlist, params, parse_uint(require(kv, "seed"), "seed"),
                          std::move(delays));
}

void write_crps(std::ostream& out, const CrpSet& crps) {
    const auto& m = crps.metadata();
    KeyValues kv;
    kv["bit_order"] = kBitOrder;
    kv["challenge_mode"] = m.challenge_mode;
    kv["config_hash"] = m.config_hash;
    kv["eval_seed"] = std::to_string(m.eval_seed);
    kv["lfsr"] = m.lfsr;
    kv["netlist"] = m.netlist;
    kv["population_seed"] = std::to_string(m.population_seed);
    put_params(kv, m.params);
    out << kCrpMagic << "\n";
    for (const auto& [k, v] : kv) out << "# " << k << "=" << v << "\n";
    out << kCrpColumns << "\n";
    for (const auto& r : crps.records()) {
        out << r.device_id << "," << r.challenge.bits.to_hex() << "," << r.repetition << ","
            << r.response.bits.to_hex() << "," << r.response.size() << "\n";
    }
}

CrpSet read_crps(std::istream& in) {
    // The magic line is optional so hardware dumps with only the shared
    // header keys are accepted.
    KeyValues kv;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (first && line == kCrpMagic) {
            first = false;
            continue;
        }
        first = false;
        if (line == kCrpColumns) break;
        if (line.rfind("# ", 0) != 0) throw FormatError("expected '# key=value' header or column line, got '" + line + "'");
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw FormatError("expected '# key=value', got '" + line + "'");
        kv[line.substr(2, eq - 2)] = line.substr(eq + 1);
    }
    if (line != kCrpColumns) throw FormatError("missing CRP column header");

    CrpSet::Metadata meta;
    meta.netlist = require(kv, "netlist");
    const Netlist netlist = Netlist::from_descriptor(meta.netlist);
    if (auto it = kv.find("bit_order"); it != kv.end() && it->second != kBitOrder) {
        throw FormatError("unsupported bit order '" + it->second + "'");
    }
    const LfsrTaps& taps = lfsr_taps(netlist.stages());
    meta.lfsr = taps.describe();
    if (auto it = kv.find("lfsr"); it != kv.end() && it->second != meta.lfsr) {
        throw FormatError("CRP file uses LFSR " + it->second + ", this build expands with " + meta.lfsr);
    }
    meta.params = params_from(kv, DelayParams{});
    if (auto it = kv.find("challenge_mode"); it != kv.end()) meta.challenge_mode = it->second;
    if (auto it = kv.find("config_hash"); it != kv.end()) meta.config_hash = it->second;
    if (auto it = kv.find("eval_seed"); it != kv.end()) meta.eval_seed = parse_uint(it->second, "eval_seed");
    if (auto it = kv.find("population_seed"); it != kv.end()) meta.population_seed = parse_uint(it->second, "population_seed");

    std::vector<CrpRecord> records;
    std::map<std::string, std::map<Challenge, int>> index;
    const auto width = static_cast<std::size_t>(netlist.stages());
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != 5) throw FormatError("expected 5 CSV fields, got '" + line + "'");
        const auto len = parse_int(f[4], "response_bits_len");
        if (len < 1) throw FormatError("bad response length in '" + line + "'");
        CrpRecord r;
        r.device_id = f[0];
        r.challenge = Challenge{BitVector::from_hex(f[1], width)};
        r.repetition = static_cast<int>(parse_int(f[2], "repetition"));
        r.response = Response{BitVector::from_hex(f[3], static_cast<std::size_t>(len))};
        auto& per_device = index[r.device_id];
        const auto [it, inserted] = per_device.emplace(r.challenge, static_cast<int>(per_device.size()));
        r.challenge_index = it->second;
        records.push_back(std::move(r));
    }
    return CrpSet(std::move(meta), std::move(records));
}

void write_helper(std::ostream& out, const HelperData& helper, const KeyValues& extra) {
    const BchCode code = helper.code();
    KeyValues kv = extra;
    kv["generator"] = code.generator_hex();
    kv["k"] = std::to_string(code.k());
    kv["m"] = std::to_string(helper.m);
    kv["n"] = std::to_string(code.n());
    kv["t"] = std::to_string(helper.t);
    kv["offset"] = helper.offset.to_hex();
    out << kHelperMagic << "\n" << format_key_values(kv);
}

HelperData read_helper(std::istream& in, KeyValues* extra) {
    expect_magic(in, kHelperMagic);
    KeyValues kv = read_header(in, "");
    HelperData h;
    h.m = static_cast<int>(parse_int(require(kv, "m"), "m"));
    h.t = static_cast<int>(parse_int(require(kv, "t"), "t"));
    const BchCode code = h.code();
    if (parse_int(require(kv, "n"), "n") != code.n() || parse_int(require(kv, "k"), "k") != code.k() ||
        require(kv, "generator") != code.generator_hex()) {
        throw FormatError("helper file code parameters are inconsistent");
    }
    h.offset = BitVector::from_hex(require(kv, "offset"), static_cast<std::size_t>(code.n()));
    if (extra) {
        for (const char* key : {"generator", "k", "m", "n", "t", "offset"}) kv.erase(key);
        *extra = std::move(kv);
    }
    return h;
}

void write_model(std::ostream& out, const AttackModel& model, const std::string& config_hash) {
    KeyValues kv;
    kv["config_hash"] = config_hash;
    kv["epochs"] = std::to_string(model.params.epochs);
    kv["features"] = feature_name(model.kind);
    kv["learning_rate"] = format_exact(model.params.learning_rate);
    kv["seed"] = std::to_string(model.seed);
    kv["stages"] = std::to_string(model.stages);
    kv["train_fraction"] = format_exact(model.params.train_fraction);
    out << kModelMagic << "\n" << format_key_values(kv) << "weights\n";
    for (double w : model.weights) out << format_exact(w) << "\n";
}

AttackModel read_model(std::istream& in) {
    expect_magic(in, kModelMagic);
    const KeyValues kv = read_header(in, "weights");
    AttackModel m;
    m.kind = parse_feature(require(kv, "features"));
    m.stages = static_cast<int>(parse_int(require(kv, "stages"), "stages"));
    m.seed = parse_uint(require(kv, "seed"), "seed");
    m.params.epochs = static_cast<int>(parse_int(require(kv, "epochs"), "epochs"));
    m.params.learning_rate = parse_double(require(kv, "learning_rate"), "learning_rate");
    m.params.train_fraction = parse_double(require(kv, "train_fraction"), "train_fraction");
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) m.weights.push_back(parse_double(line, "weight"));
    }
    if (m.weights.size() != static_cast<std::size_t>(feature_dimension(m.stages, m.kind)) + 1) {
        throw FormatError("model file has " + std::to_string(m.weights.size()) + " weights");
    }
    return m;
}

void write_histogram_csv(std::ostream& out, const HdHistogram& histogram) {
    out << "bin,count\n";
    for (std::size_t i = 0; i < histogram.size(); ++i) out << i << "," << histogram[i] << "\n";
}

KeyValues report_key_values(const MetricsReport& r) {
    KeyValues kv;
    kv["challenges"] = std::to_string(r.challenges);
    kv["devices"] = std::to_string(r.devices);
    kv["repetitions"] = std::to_string(r.repetitions);
    kv["response_size"] = std::to_string(r.response_size);
    kv["uniformity_min"] = format_fixed(r.uniformity.min, 4);
    kv["uniformity_max"] = format_fixed(r.uniformity.max, 4);
    kv["uniformity_avg"] = format_fixed(r.uniformity.avg, 4);
    if (r.bit_aliasing) {
        kv["bit_aliasing_min"] = format_fixed(r.bit_aliasing->min, 4);
        kv["bit_aliasing_max"] = format_fixed(r.bit_aliasing->max, 4);
        kv["bit_aliasing_avg"] = format_fixed(r.bit_aliasing->avg, 4);
    }
    if (r.uniqueness) kv["uniqueness"] = format_fixed(*r.uniqueness, 4);
    if (r.reliability) kv["reliability"] = format_fixed(*r.reliability, 4);
    if (r.robustness) {
        kv["robustness_stable0"] = format_fixed(r.robustness->stable0, 4);
        kv["robustness_stable1"] = format_fixed(r.robustness->stable1, 4);
        kv["robustness_unstable"] = format_fixed(r.robustness->unstable, 4);
    }
    if (r.intra_hd_percent) kv["intra_hd"] = format_fixed(*r.intra_hd_percent, 4);
    kv["intra_hd_source"] = r.intra_hd_source;
    return kv;
}

} // namespace papuf
