#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "papuf/attack.hpp"
#include "papuf/bch.hpp"
#include "papuf/errors.hpp"
#include "papuf/experiment.hpp"
#include "papuf/fuzzy_extractor.hpp"
#include "papuf/io.hpp"
#include "papuf/metrics.hpp"
#include "papuf/random.hpp"
#include "papuf/response.hpp"
#include "papuf/sweep.hpp"

namespace fs = std::filesystem;
using namespace papuf;

namespace {

struct IoError : Error {
    explicit IoError(const std::string& m) : Error("io", m) {}
};

constexpr const char* kOutEnv = "PAPUF_OUT";

// Domain-separation labels for seeds derived from the master seed.
constexpr std::uint64_t kEvalStream = 0xe7a1;
constexpr std::uint64_t kChallengeStream = 0xc4a1;
constexpr std::uint64_t kKeyStream = 0x6b65;
constexpr std::uint64_t kReproduceStream = 0x7270;
constexpr std::uint64_t kAttackStream = 0xa77c;

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    return in;
}

std::ofstream open_out(const fs::path& path) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    return out;
}

std::string one_line(std::string s) {
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

// Flags override the --config file, which overrides the built-in defaults.
struct ConfigFlags {
    std::string config_file;
    std::map<std::string, std::string> values;

    void attach(CLI::App* app) {
        app->add_option("--config", config_file, "key=value experiment configuration file");
        for (const auto& [key, value] : ExperimentConfig{}.to_key_values()) {
            (void)value;
            std::string flag = "--" + key;
            std::replace(flag.begin(), flag.end(), '_', '-');
            if (key == "output_dir") flag += ",--out";
            app->add_option_function<std::string>(
                flag, [this, key](const std::string& v) { values[key] = v; }, "override " + key);
        }
    }

    ExperimentConfig resolve(const KeyValues& defaults = {}) {
        ExperimentConfig cfg;
        const char* env = std::getenv(kOutEnv);
        if (env != nullptr && *env != '\0') cfg.output_dir = env;
        cfg.apply(defaults);
        if (!config_file.empty()) {
            auto in = open_in(config_file);
            cfg.apply(parse_key_values(in));
        }
        KeyValues overrides(values.begin(), values.end());
        cfg.apply(overrides);
        return cfg;
    }
};

void echo_config(const ExperimentConfig& cfg) {
    KeyValues kv = cfg.to_key_values();
    kv["config_hash"] = cfg.hash();
    auto out = open_out(fs::path(cfg.output_dir) / "effective_config.txt");
    out << format_key_values(kv);
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
    return s;
}

template <class T>
std::vector<T> parse_list(const std::string& text, const std::string& what, char sep = ',') {
    std::vector<T> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) {
        if (item.empty()) throw ParameterError("empty element in " + what);
        if constexpr (std::is_same_v<T, int>) {
            out.push_back(static_cast<int>(parse_int(item, what)));
        } else if constexpr (std::is_same_v<T, std::uint64_t>) {
            out.push_back(parse_uint(item, what));
        } else {
            out.push_back(item);
        }
    }
    if (out.empty()) throw ParameterError(what + " is empty");
    return out;
}

void emit(const KeyValues& kv, const std::string& format, std::ostream& out) {
    if (format == "csv") {
        out << "key,value\n";
        for (const auto& [k, v] : kv) out << k << ',' << v << '\n';
    } else {
        out << format_key_values(kv);
    }
}

void check_format(const std::string& format) {
    if (format != "kv" && format != "csv") throw ParameterError("format must be kv or csv");
}

std::vector<DeviceInstance> load_devices(const std::vector<std::string>& paths,
                                         std::string* config_hash = nullptr) {
    std::vector<DeviceInstance> devices;
    for (const auto& path : paths) {
        auto in = open_in(path);
        std::string hash;
        devices.push_back(read_device(in, &hash));
        if (config_hash != nullptr && config_hash->empty()) *config_hash = hash;
    }
    return devices;
}

CrpSet load_crps(const std::string& path) {
    auto in = open_in(path);
    return read_crps(in);
}

CrpSet with_metadata(const CrpSet& crps, std::uint64_t population_seed, const std::string& hash) {
    CrpSet::Metadata meta = crps.metadata();
    meta.population_seed = population_seed;
    meta.config_hash = hash;
    return CrpSet(meta, crps.records());
}

Challenge challenge_from_hex(const std::string& hex, int width) {
    return Challenge{BitVector::from_hex(hex, static_cast<std::size_t>(width))};
}

// Majority of `votes` noisy responses to one seed challenge.
Response voted_response(const DeviceInstance& device, const Challenge& challenge, int size,
                        int votes, std::uint64_t seed) {
    if (votes < 1 || votes % 2 == 0) throw ParameterError("votes must be a positive odd count");
    std::vector<Response> reads;
    for (int r = 0; r < votes; ++r)
        reads.push_back(evaluate_response(device, challenge, size, derive_seed(seed, r)));
    return majority_vote(reads);
}

// ---------------------------------------------------------------- device

void cmd_device_new(ConfigFlags& flags) {
    ExperimentConfig cfg = flags.resolve();
    const Netlist netlist = cfg.netlist();
    const auto devices = synthesize_population(cfg.params, netlist, cfg.population, cfg.seed);
    fs::create_directories(cfg.output_dir);
    echo_config(cfg);
    for (const auto& d : devices) {
        const fs::path path = fs::path(cfg.output_dir) / (d.id() + ".device");
        auto out = open_out(path);
        write_device(out, d, cfg.hash());
        std::cout << path.string() << '\n';
    }
}

void cmd_device_show(const std::string& path) {
    std::string hash;
    const DeviceInstance d = load_devices({path}, &hash).front();
    const auto delays = d.delay_table();
    double sum = 0.0;
    for (double x : delays) sum += x;
    KeyValues kv{
        {"config_hash", hash},
        {"delay_count", std::to_string(delays.size())},
        {"delay_max", format_fixed(*std::max_element(delays.begin(), delays.end()))},
        {"delay_mean", format_fixed(sum / static_cast<double>(delays.size()))},
        {"delay_min", format_fixed(*std::min_element(delays.begin(), delays.end()))},
        {"device_id", d.id()},
        {"lines", std::to_string(d.netlist().lines())},
        {"mean_delay", format_fixed(d.params().mean_delay)},
        {"metastability_window", format_fixed(d.params().metastability_window)},
        {"netlist", d.netlist().descriptor()},
        {"seed", std::to_string(d.seed())},
        {"sigma_noise", format_fixed(d.params().sigma_noise)},
        {"sigma_process", format_fixed(d.params().sigma_process)},
        {"stages", std::to_string(d.netlist().stages())},
    };
    std::cout << format_key_values(kv);
}

// ---------------------------------------------------------------- crp

void cmd_crp_gen(ConfigFlags& flags, const std::vector<std::string>& device_paths,
                 const std::string& mode, const std::string& output) {
    ExperimentConfig cfg = flags.resolve();
    std::vector<DeviceInstance> devices;
    if (device_paths.empty()) {
        devices = synthesize_population(cfg.params, cfg.netlist(), cfg.population, cfg.seed);
    } else {
        devices = load_devices(device_paths);
        // The files, not the flags, define the silicon.
        const Netlist& n = devices.front().netlist();
        cfg.design = design_name(n.design());
        cfg.stages = n.stages();
        cfg.taps = n.design() == Design::FfPaPuf ? format_taps(n.taps()) : "";
        if (cfg.design == "ff-pa-puf" && cfg.taps.empty()) cfg.taps = "none";
        cfg.params = devices.front().params();
        cfg.population = static_cast<int>(devices.size());
    }
    CollectOptions opts;
    opts.num_challenges = cfg.challenges;
    opts.repetitions = cfg.repetitions;
    opts.response_size = cfg.response_size;
    opts.master_eval_seed = derive_seed(cfg.seed, kEvalStream);
    opts.challenge_mode = mode;
    const CrpSet crps = with_metadata(collect_crps(devices, opts), cfg.seed, cfg.hash());
    fs::create_directories(cfg.output_dir);
    echo_config(cfg);
    const fs::path path = output.empty() ? fs::path(cfg.output_dir) / "crps.csv" : fs::path(output);
    auto out = open_out(path);
    write_crps(out, crps);
    std::cout << path.string() << '\n';
}

// ---------------------------------------------------------------- metrics

void write_hist(const fs::path& path, const HdHistogram& h, const std::string& hash) {
    auto out = open_out(path);
    out << "# config_hash=" << hash << '\n';
    write_histogram_csv(out, h);
}

void cmd_metrics(const std::string& crp_path, int enroll_reads, const std::string& format,
                 const std::string& out_dir) {
    check_format(format);
    const CrpSet crps = load_crps(crp_path);
    ReliabilityOptions opts;
    opts.enroll_reads = enroll_reads;
    const MetricsReport report = compute_report(crps, opts);
    KeyValues kv = report_key_values(report);
    const std::string& hash = crps.metadata().config_hash;
    kv["config_hash"] = hash;
    kv["netlist"] = crps.metadata().netlist;
    emit(kv, format, std::cout);
    const fs::path dir = out_dir;
    fs::create_directories(dir);
    auto out = open_out(dir / (format == "csv" ? "metrics.csv" : "metrics.txt"));
    if (format == "csv") out << "# config_hash=" << hash << '\n';
    emit(kv, format, out);
    write_hist(dir / "intra_hd.csv", report.intra_hd_histogram, hash);
    write_hist(dir / "inter_hd.csv", report.inter_hd_histogram, hash);
}

// ---------------------------------------------------------------- keygen

struct KeygenArgs {
    std::string device;
    std::string helper;
    std::string challenge;
    int votes = 11;
    int response_size = 128;
    std::uint64_t seed = 1;
    std::string out_dir;
};

void cmd_keygen_enroll(const KeygenArgs& a) {
    std::string hash;
    const DeviceInstance d = load_devices({a.device}, &hash).front();
    const BchCode code = default_bch_code();
    if (a.response_size < code.n())
        throw ParameterError("response size " + std::to_string(a.response_size) +
                             " is shorter than the code length " + std::to_string(code.n()));
    const Challenge c = a.challenge.empty()
                            ? random_challenge(d.netlist().stages(), derive_seed(a.seed, kChallengeStream))
                            : challenge_from_hex(a.challenge, d.netlist().stages());
    const Response r = voted_response(d, c, a.response_size, a.votes, derive_seed(a.seed, kEvalStream));
    const Enrollment e = enroll(r, code, derive_seed(a.seed, kKeyStream));
    const KeyValues extra{{"challenge", c.bits.to_hex()},
                          {"config_hash", hash},
                          {"device_id", d.id()},
                          {"response_size", std::to_string(a.response_size)},
                          {"votes", std::to_string(a.votes)}};
    const fs::path dir = a.out_dir;
    fs::create_directories(dir);
    {
        auto out = open_out(dir / "helper.txt");
        write_helper(out, e.helper, extra);
    }
    KeyValues kv{{"config_hash", hash},
                 {"device_id", d.id()},
                 {"key", e.key.bits.to_hex()},
                 {"key_bits", std::to_string(e.key.bits.size())}};
    auto out = open_out(dir / "key.txt");
    out << format_key_values(kv);
    std::cout << format_key_values(kv);
}

void cmd_keygen_reproduce(const KeygenArgs& a) {
    const DeviceInstance d = load_devices({a.device}).front();
    KeyValues extra;
    auto in = open_in(a.helper);
    const HelperData helper = read_helper(in, &extra);
    if (!extra.count("challenge") || !extra.count("response_size"))
        throw FormatError("helper file lacks challenge or response_size");
    const Challenge c = challenge_from_hex(extra.at("challenge"), d.netlist().stages());
    const int size = static_cast<int>(parse_int(extra.at("response_size"), "response_size"));
    const Response r = voted_response(d, c, size, a.votes, derive_seed(a.seed, kReproduceStream));
    const auto rep = reproduce(r, helper);
    if (!rep) throw Error("decode_failure", "response is farther than t from the enrolled codeword");
    KeyValues kv{{"config_hash", extra.count("config_hash") ? extra.at("config_hash") : ""},
                 {"corrected_errors", std::to_string(rep->corrected_errors)},
                 {"device_id", d.id()},
                 {"key", rep->key.bits.to_hex()},
                 {"key_bits", std::to_string(rep->key.bits.size())}};
    std::cout << format_key_values(kv);
}

// ---------------------------------------------------------------- attack

struct AttackArgs {
    std::string crps;
    std::string device;
    std::string model;
    int budget = 10000;
    std::string features = "parity";
    TrainParams train;
    std::uint64_t seed = 1;
    std::string out_dir;
};

AttackDataset attack_data(const AttackArgs& a, std::string* hash) {
    if (!a.crps.empty() == !a.device.empty())
        throw ParameterError("give exactly one of --crps or --device");
    if (!a.crps.empty()) {
        const CrpSet crps = load_crps(a.crps);
        *hash = crps.metadata().config_hash;
        return dataset_from_crps(crps);
    }
    const DeviceInstance d = load_devices({a.device}, hash).front();
    return collect_attack_dataset(d, a.budget, derive_seed(a.seed, kAttackStream));
}

void cmd_attack_train(const AttackArgs& a) {
    std::string hash;
    const AttackDataset data = attack_data(a, &hash);
    const TrainResult r = train(data, parse_feature(a.features), a.train, a.seed);
    const fs::path dir = a.out_dir;
    fs::create_directories(dir);
    const fs::path path = a.model.empty() ? dir / "model.txt" : fs::path(a.model);
    {
        auto out = open_out(path);
        write_model(out, r.model, hash);
    }
    KeyValues kv{{"config_hash", hash},
                 {"features", feature_name(r.model.kind)},
                 {"holdout_accuracy", format_fixed(evaluate_attack(r.model, r.holdout))},
                 {"holdout_size", std::to_string(r.holdout.size())},
                 {"model", path.string()},
                 {"train_accuracy", format_fixed(evaluate_attack(r.model, r.train_set))},
                 {"train_size", std::to_string(r.train_set.size())}};
    std::cout << format_key_values(kv);
}

void cmd_attack_eval(const AttackArgs& a) {
    if (a.model.empty()) throw ParameterError("--model is required");
    auto in = open_in(a.model);
    const AttackModel model = read_model(in);
    std::string hash;
    const AttackDataset data = attack_data(a, &hash);
    KeyValues kv{{"accuracy", format_fixed(evaluate_attack(model, data))},
                 {"config_hash", hash},
                 {"features", feature_name(model.kind)},
                 {"size", std::to_string(data.size())}};
    std::cout << format_key_values(kv);
}

void cmd_attack_compare(ConfigFlags& flags, const std::string& designs, const std::string& seeds,
                        const std::string& kinds, int budget, const TrainParams& train_params,
                        const std::string& format) {
    check_format(format);
    ExperimentConfig cfg = flags.resolve();
    std::vector<Netlist> netlists;
    for (const auto& d : parse_list<std::string>(designs, "designs", ';'))
        netlists.push_back(Netlist::from_descriptor(d));
    CompareOptions opts;
    opts.params = cfg.params;
    opts.crp_budget = budget;
    opts.seeds = parse_list<std::uint64_t>(seeds, "seeds");
    opts.kinds.clear();
    for (const auto& k : parse_list<std::string>(kinds, "features")) opts.kinds.push_back(parse_feature(k));
    opts.train = train_params;
    const auto rows = compare_designs(netlists, opts);
    fs::create_directories(cfg.output_dir);
    echo_config(cfg);
    std::ostringstream text;
    if (format == "csv") {
        text << "# config_hash=" << cfg.hash() << '\n'
             << "design,features,mean,ci95,shuffled_mean,accuracies\n";
        for (const auto& r : rows) {
            std::vector<std::string> acc;
            for (double x : r.accuracies) acc.push_back(format_fixed(x));
            text << r.design << ',' << feature_name(r.kind) << ',' << format_fixed(r.mean) << ','
                 << format_fixed(r.ci95) << ',' << format_fixed(r.shuffled_mean) << ','
                 << join(acc, ";") << '\n';
        }
    } else {
        KeyValues kv{{"config_hash", cfg.hash()}};
        for (const auto& r : rows) {
            const std::string p = r.design + "." + feature_name(r.kind) + ".";
            kv[p + "ci95"] = format_fixed(r.ci95);
            kv[p + "mean"] = format_fixed(r.mean);
            kv[p + "shuffled_mean"] = format_fixed(r.shuffled_mean);
        }
        text << format_key_values(kv);
    }
    std::cout << text.str();
    auto out = open_out(fs::path(cfg.output_dir) / (format == "csv" ? "compare.csv" : "compare.txt"));
    out << text.str();
}

// ---------------------------------------------------------------- sweep

void cmd_sweep(ConfigFlags& flags, bool taps, const std::string& values, int enroll_reads,
               const std::string& format) {
    check_format(format);
    // Sweeps default to a small chain and population so they finish quickly.
    const KeyValues defaults = taps ? KeyValues{{"stages", "16"}, {"population", "10"}, {"challenges", "50"},
                                                {"repetitions", "21"}}
                                    : KeyValues{{"population", "10"}, {"challenges", "50"}, {"repetitions", "21"}};
    ExperimentConfig cfg = flags.resolve(defaults);
    SweepOptions opts;
    opts.params = cfg.params;
    opts.population = cfg.population;
    opts.challenges = cfg.challenges;
    opts.repetitions = cfg.repetitions;
    opts.response_size = cfg.response_size;
    opts.enroll_reads = enroll_reads;
    opts.population_seed = cfg.seed;
    opts.eval_seed = derive_seed(cfg.seed, kEvalStream);
    const auto list = parse_list<int>(values, taps ? "tap counts" : "sizes");
    const auto rows = taps ? sweep_feed_forward(Netlist::pa_puf(cfg.stages), list, opts)
                           : sweep_response_size(cfg.netlist(), list, opts);
    fs::create_directories(cfg.output_dir);
    echo_config(cfg);
    const std::string param = taps ? "taps" : "response_size";
    std::ostringstream text;
    if (format == "csv") {
        text << "# config_hash=" << cfg.hash() << '\n' << param << ",uniqueness,reliability\n";
        for (const auto& r : rows)
            text << r.parameter << ',' << format_fixed(r.uniqueness) << ',' << format_fixed(r.reliability)
                 << '\n';
    } else {
        KeyValues kv{{"config_hash", cfg.hash()}};
        for (const auto& r : rows) {
            char key[32];
            std::snprintf(key, sizeof key, "%s.%04d.", param.c_str(), r.parameter);
            kv[std::string(key) + "reliability"] = format_fixed(r.reliability);
            kv[std::string(key) + "uniqueness"] = format_fixed(r.uniqueness);
        }
        text << format_key_values(kv);
    }
    std::cout << text.str();
    const std::string name = std::string(taps ? "sweep_ff" : "sweep_size") + (format == "csv" ? ".csv" : ".txt");
    auto out = open_out(fs::path(cfg.output_dir) / name);
    out << text.str();
}

// ---------------------------------------------------------------- report

// Reads `config_hash` from a key=value file or a `# config_hash=` comment,
// together with every key=value pair the file carries.
std::pair<std::string, KeyValues> scan_file(const std::string& path) {
    auto in = open_in(path);
    std::string hash;
    KeyValues kv;
    std::string line;
    while (std::getline(in, line)) {
        std::string_view s = line;
        if (s.starts_with("# ")) s.remove_prefix(2);
        const auto eq = s.find('=');
        if (eq == std::string_view::npos || s.find(',') != std::string_view::npos) continue;
        const std::string key(s.substr(0, eq));
        const std::string value(s.substr(eq + 1));
        if (key == "config_hash") hash = value;
        else if (!line.starts_with("#")) kv[key] = value;
    }
    return {hash, kv};
}

void cmd_report(const std::vector<std::string>& inputs, bool force, const std::string& format) {
    check_format(format);
    std::set<std::string> hashes;
    std::vector<std::pair<std::string, KeyValues>> files;
    for (const auto& path : inputs) {
        auto [hash, kv] = scan_file(path);
        if (hash.empty()) throw FormatError(path + " carries no config_hash");
        hashes.insert(hash);
        files.emplace_back(path, std::move(kv));
    }
    if (hashes.size() > 1 && !force) {
        std::vector<std::string> list(hashes.begin(), hashes.end());
        throw Error("hash_mismatch", "inputs come from different configurations (" + join(list, ",") +
                                         "); pass --force to merge");
    }
    std::vector<std::string> list(hashes.begin(), hashes.end());
    if (format == "csv") {
        std::cout << "# config_hash=" << join(list, ";") << '\n' << "source,key,value\n";
        for (const auto& [path, kv] : files)
            for (const auto& [k, v] : kv) std::cout << path << ',' << k << ',' << v << '\n';
    } else {
        KeyValues merged{{"config_hash", join(list, ";")}};
        for (const auto& [path, kv] : files)
            for (const auto& [k, v] : kv) merged[fs::path(path).filename().string() + "." + k] = v;
        std::cout << format_key_values(merged);
    }
}

std::string default_out_dir() {
    const char* env = std::getenv(kOutEnv);
    return env != nullptr && *env != '\0' ? env : ".";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulation toolkit for arbiter and priority-arbiter PUFs"};
    app.require_subcommand(1);
    std::function<void()> action;

    // device
    auto* device = app.add_subcommand("device", "synthesize or inspect device instances");
    device->require_subcommand(1);
    ConfigFlags device_flags;
    auto* device_new = device->add_subcommand("new", "synthesize a device population");
    device_flags.attach(device_new);
    device_new->callback([&] { action = [&] { cmd_device_new(device_flags); }; });
    std::string show_path;
    auto* device_show = device->add_subcommand("show", "print a device summary");
    device_show->add_option("--device", show_path, "device file")->required();
    device_show->callback([&] { action = [&] { cmd_device_show(show_path); }; });

    // crp
    auto* crp = app.add_subcommand("crp", "collect challenge-response pairs");
    crp->require_subcommand(1);
    ConfigFlags crp_flags;
    std::vector<std::string> crp_devices;
    std::string crp_mode = "random";
    std::string crp_output;
    auto* crp_gen = crp->add_subcommand("gen", "evaluate devices on generated challenges");
    crp_flags.attach(crp_gen);
    crp_gen->add_option("--devices", crp_devices, "device files (default: synthesize from config)");
    crp_gen->add_option("--mode", crp_mode, "random or chain")->check(CLI::IsMember({"random", "chain"}));
    crp_gen->add_option("--output", crp_output, "CRP file (default: <out>/crps.csv)");
    crp_gen->callback([&] { action = [&] { cmd_crp_gen(crp_flags, crp_devices, crp_mode, crp_output); }; });

    // metrics
    std::string metrics_crps;
    int metrics_enroll = 11;
    std::string metrics_format = "kv";
    std::string metrics_out = default_out_dir();
    std::uint64_t unused_seed = 0;
    auto* metrics = app.add_subcommand("metrics", "quality metrics of a CRP file");
    metrics->add_option("--crps", metrics_crps, "CRP file")->required();
    metrics->add_option("--enroll-reads", metrics_enroll, "reads in the reference majority");
    metrics->add_option("--format", metrics_format, "kv or csv");
    metrics->add_option("--out", metrics_out, "output directory");
    metrics->add_option("--seed", unused_seed, "accepted for uniformity; metrics are deterministic");
    metrics->callback([&] {
        action = [&] { cmd_metrics(metrics_crps, metrics_enroll, metrics_format, metrics_out); };
    });

    // keygen
    auto* keygen = app.add_subcommand("keygen", "fuzzy-extractor key generation");
    keygen->require_subcommand(1);
    KeygenArgs kg;
    kg.out_dir = default_out_dir();
    auto* kg_enroll = keygen->add_subcommand("enroll", "enroll a key and write helper data");
    auto* kg_repro = keygen->add_subcommand("reproduce", "reproduce a key from helper data");
    for (auto* sub : {kg_enroll, kg_repro}) {
        sub->add_option("--device", kg.device, "device file")->required();
        sub->add_option("--votes", kg.votes, "reads per majority vote");
        sub->add_option("--seed", kg.seed, "seed for challenge, noise and key");
    }
    kg_enroll->add_option("--challenge", kg.challenge, "seed challenge in hex (default: random)");
    kg_enroll->add_option("--response-size", kg.response_size, "response bits");
    kg_enroll->add_option("--out", kg.out_dir, "output directory");
    kg_repro->add_option("--helper", kg.helper, "helper-data file")->required();
    kg_enroll->callback([&] { action = [&] { cmd_keygen_enroll(kg); }; });
    kg_repro->callback([&] { action = [&] { cmd_keygen_reproduce(kg); }; });

    // attack
    auto* attack = app.add_subcommand("attack", "logistic-regression modeling attack");
    attack->require_subcommand(1);
    AttackArgs at;
    at.out_dir = default_out_dir();
    auto* at_train = attack->add_subcommand("train", "train a model");
    auto* at_eval = attack->add_subcommand("eval", "score a model on fresh data");
    for (auto* sub : {at_train, at_eval}) {
        sub->add_option("--crps", at.crps, "single-device CRP file");
        sub->add_option("--device", at.device, "device file (draws --budget fresh pairs)");
        sub->add_option("--budget", at.budget, "pairs drawn from --device");
        sub->add_option("--model", at.model, "model file");
        sub->add_option("--seed", at.seed, "seed");
    }
    at_train->add_option("--features", at.features, "parity or raw");
    at_train->add_option("--lr", at.train.learning_rate, "learning rate");
    at_train->add_option("--epochs", at.train.epochs, "epochs");
    at_train->add_option("--train-fraction", at.train.train_fraction, "training share");
    at_train->add_option("--out", at.out_dir, "output directory");
    at_train->callback([&] { action = [&] { cmd_attack_train(at); }; });
    at_eval->callback([&] { action = [&] { cmd_attack_eval(at); }; });

    ConfigFlags cmp_flags;
    std::string cmp_designs = "apuf/64;pa-puf/64;ff-pa-puf/64/16:32,32:48";
    std::string cmp_seeds = "1,2,3,4,5";
    std::string cmp_kinds = "parity,raw";
    std::string cmp_format = "csv";
    int cmp_budget = 10000;
    TrainParams cmp_train;
    auto* at_cmp = attack->add_subcommand("compare", "attack several designs under one budget");
    cmp_flags.attach(at_cmp);
    at_cmp->add_option("--designs", cmp_designs, "netlist descriptors separated by ';'");
    at_cmp->add_option("--seeds", cmp_seeds, "comma-separated seeds");
    at_cmp->add_option("--features", cmp_kinds, "comma-separated feature kinds");
    at_cmp->add_option("--budget", cmp_budget, "CRPs per device");
    at_cmp->add_option("--lr", cmp_train.learning_rate, "learning rate");
    at_cmp->add_option("--epochs", cmp_train.epochs, "epochs");
    at_cmp->add_option("--format", cmp_format, "kv or csv");
    at_cmp->callback([&] {
        action = [&] {
            cmd_attack_compare(cmp_flags, cmp_designs, cmp_seeds, cmp_kinds, cmp_budget, cmp_train, cmp_format);
        };
    });

    // sweep
    auto* sweep = app.add_subcommand("sweep", "parameter sweeps");
    sweep->require_subcommand(1);
    ConfigFlags sw_flags;
    std::string sw_taps = "0,1,2,3,4,5,6";
    std::string sw_sizes = "8,16,32,64,128";
    int sw_enroll = 11;
    std::string sw_format = "csv";
    auto* sw_ff = sweep->add_subcommand("ff", "feed-forward tap count sweep");
    auto* sw_size = sweep->add_subcommand("size", "response size sweep");
    for (auto* sub : {sw_ff, sw_size}) {
        sw_flags.attach(sub);
        sub->add_option("--enroll-reads", sw_enroll, "reads in the reference majority");
        sub->add_option("--format", sw_format, "kv or csv");
    }
    sw_ff->add_option("--tap-counts", sw_taps, "comma-separated tap counts");
    sw_size->add_option("--sizes", sw_sizes, "comma-separated response sizes");
    sw_ff->callback([&] { action = [&] { cmd_sweep(sw_flags, true, sw_taps, sw_enroll, sw_format); }; });
    sw_size->callback([&] { action = [&] { cmd_sweep(sw_flags, false, sw_sizes, sw_enroll, sw_format); }; });

    // report
    std::vector<std::string> rep_inputs;
    bool rep_force = false;
    std::string rep_format = "kv";
    auto* report = app.add_subcommand("report", "merge emitted files, checking config hashes");
    report->add_option("inputs", rep_inputs, "files written by other subcommands")->required();
    report->add_flag("--force", rep_force, "merge files from different configurations");
    report->add_option("--format", rep_format, "kv or csv");
    report->add_option("--seed", unused_seed, "accepted for uniformity");
    report->callback([&] { action = [&] { cmd_report(rep_inputs, rep_force, rep_format); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    try {
        if (action) action();
    } catch (const Error& e) {
        std::cerr << "error: kind=" << e.kind() << " message=" << one_line(e.what()) << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: kind=internal message=" << one_line(e.what()) << '\n';
        return 1;
    }
    return 0;
}
