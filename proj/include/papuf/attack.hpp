#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "papuf/bits.hpp"
#include "papuf/device_model.hpp"
#include "papuf/netlist.hpp"
#include "papuf/response.hpp"

namespace papuf {

enum class FeatureKind { Parity, RawBits };

std::string feature_name(FeatureKind kind);
FeatureKind parse_feature(const std::string& name);

/// phi_i = prod_{j >= i} (1 - 2 c_j) for i = 0..stages (phi_stages = 1).
std::vector<double> parity_features(const Challenge& challenge);
/// (1 - 2 c_i) for i < stages.
std::vector<double> raw_features(const Challenge& challenge);
std::vector<double> features(const Challenge& challenge, FeatureKind kind);
int feature_dimension(int stages, FeatureKind kind) noexcept;

/// Single-bit challenge/response pairs from one device.
struct AttackDataset {
    std::vector<Challenge> challenges;
    std::vector<Bit> labels;

    std::size_t size() const noexcept { return labels.size(); }
};

/// Explodes each first-read record into (expanded challenge, response bit)
/// pairs. Throws PopulationError unless the set holds exactly one device.
AttackDataset dataset_from_crps(const CrpSet& crps);

/// `count` uniformly random challenges, one noisy read each.
AttackDataset collect_attack_dataset(const DeviceInstance& device, int count, std::uint64_t seed);

/// Random permutation of the labels; destroys any challenge/label relation.
AttackDataset shuffle_labels(const AttackDataset& data, std::uint64_t seed);

struct TrainParams {
    double learning_rate = 0.1;
    int epochs = 200;
    double train_fraction = 0.8;
};

/// Logistic model; weights.back() is the bias.
struct AttackModel {
    FeatureKind kind = FeatureKind::Parity;
    int stages = 0;
    std::vector<double> weights;
    TrainParams params;
    std::uint64_t seed = 0;
    std::vector<double> loss_history; // mean training loss before each epoch and after the last

    double score(const Challenge& c) const;
    Bit predict(const Challenge& c) const { return score(c) > 0.0 ? 1 : 0; }
};

struct TrainResult {
    AttackModel model;
    AttackDataset train_set;
    AttackDataset holdout;
};

/// Deterministic split by seed, then full-batch gradient descent on the mean
/// logistic loss from zero weights. Throws InsufficientDataError below 100 pairs.
TrainResult train(const AttackDataset& data, FeatureKind kind, const TrainParams& params,
                  std::uint64_t seed);

/// Percent of correctly predicted labels. Throws ParameterError when empty.
double evaluate_attack(const AttackModel& model, const AttackDataset& holdout);

/// Weights drawn from N(0, 1); a chance-level reference.
AttackModel random_model(int stages, FeatureKind kind, std::uint64_t seed);

struct CompareRow {
    std::string design;   // netlist descriptor
    FeatureKind kind = FeatureKind::Parity;
    std::vector<double> accuracies; // one per seed
    double mean = 0.0;
    double ci95 = 0.0;    // half-width, normal approximation
    double shuffled_mean = 0.0;
};

struct CompareOptions {
    DelayParams params;
    int crp_budget = 10000;
    std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
    std::vector<FeatureKind> kinds = {FeatureKind::Parity, FeatureKind::RawBits};
    TrainParams train;
};

/// Same budget, features and seeds for every design. Throws NetlistError if
/// stage counts differ.
std::vector<CompareRow> compare_designs(const std::vector<Netlist>& designs,
                                        const CompareOptions& options);

} // namespace papuf
