#include "papuf/attack.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "papuf/circuit.hpp"
#include "papuf/errors.hpp"
#include "papuf/lfsr.hpp"
#include "papuf/random.hpp"

namespace papuf {
namespace {

constexpr std::size_t kMinimumCrps = 100;

/// log(1 + exp(z)) without overflow.
double softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double sigmoid(double z) {
    if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

AttackDataset subset(const AttackDataset& data, std::span<const std::size_t> idx) {
    AttackDataset out;
    out.challenges.reserve(idx.size());
    out.labels.reserve(idx.size());
    for (std::size_t i : idx) {
        out.challenges.push_back(data.challenges[i]);
        out.labels.push_back(data.labels[i]);
    }
    return out;
}

} // namespace

std::string feature_name(FeatureKind kind) { return kind == FeatureKind::Parity ? "parity" : "raw"; }

FeatureKind parse_feature(const std::string& name) {
    if (name == "parity") return FeatureKind::Parity;
    if (name == "raw" || name == "raw_bits") return FeatureKind::RawBits;
    throw ParameterError("unknown feature map '" + name + "'");
}

std::vector<double> parity_features(const Challenge& challenge) {
    const std::size_t n = challenge.size();
    std::vector<double> phi(n + 1, 1.0);
    for (std::size_t i = n; i-- > 0;) phi[i] = phi[i + 1] * (challenge.bits[i] ? -1.0 : 1.0);
    return phi;
}

std::vector<double> raw_features(const Challenge& challenge) {
    std::vector<double> x(challenge.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = challenge.bits[i] ? -1.0 : 1.0;
    return x;
}

std::vector<double> features(const Challenge& challenge, FeatureKind kind) {
    return kind == FeatureKind::Parity ? parity_features(challenge) : raw_features(challenge);
}

int feature_dimension(int stages, FeatureKind kind) noexcept {
    return kind == FeatureKind::Parity ? stages + 1 : stages;
}

AttackDataset dataset_from_crps(const CrpSet& crps) {
    const auto cells = crps.cells();
    if (cells.size() != 1) {
        throw PopulationError("attack training needs single-device CRPs, got " + std::to_string(cells.size()) + " devices");
    }
    AttackDataset data;
    const int size = crps.response_size();
    for (const auto& cell : cells.begin()->second) {
        const CrpRecord& first = *cell.front();
        const auto expanded = expand_challenge(first.challenge, size);
        for (int i = 0; i < size; ++i) {
            data.challenges.push_back(expanded[static_cast<std::size_t>(i)]);
            data.labels.push_back(first.response.bits[static_cast<std::size_t>(i)]);
        }
    }
    return data;
}

AttackDataset collect_attack_dataset(const DeviceInstance& device, int count, std::uint64_t seed) {
    if (count < 1) throw ParameterError("attack dataset size must be positive");
    AttackDataset data;
    const int width = device.netlist().stages();
    for (int i = 0; i < count; ++i) {
        const auto idx = static_cast<std::uint64_t>(i);
        Challenge c = random_challenge(width, derive_seed(seed, {1, idx}));
        data.labels.push_back(propagate(device, c, derive_seed(seed, {2, idx})));
        data.challenges.push_back(std::move(c));
    }
    return data;
}

AttackDataset shuffle_labels(const AttackDataset& data, std::uint64_t seed) {
    AttackDataset out = data;
    std::mt19937_64 engine(seed);
    std::shuffle(out.labels.begin(), out.labels.end(), engine);
    return out;
}

double AttackModel::score(const Challenge& c) const {
    const auto x = features(c, kind);
    if (x.size() + 1 != weights.size()) throw ShapeError("challenge width does not match the model");
    double z = weights.back();
    for (std::size_t i = 0; i < x.size(); ++i) z += weights[i] * x[i];
    return z;
}

TrainResult train(const AttackDataset& data, FeatureKind kind, const TrainParams& params, std::uint64_t seed) {
    if (data.size() < kMinimumCrps) {
        throw InsufficientDataError("attack training needs at least " + std::to_string(kMinimumCrps) + " CRPs, got " +
                                    std::to_string(data.size()));
    }
    if (!(params.train_fraction > 0.0 && params.train_fraction < 1.0)) {
        throw ParameterError("train_fraction must lie in (0, 1)");
    }
    if (params.epochs < 0 || !(params.learning_rate > 0.0)) throw ParameterError("invalid training hyperparameters");
    const int stages = static_cast<int>(data.challenges.front().size());

    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 engine(seed);
    std::shuffle(order.begin(), order.end(), engine);
    const auto n_train = static_cast<std::size_t>(std::floor(static_cast<double>(data.size()) * params.train_fraction));

    TrainResult result;
    result.train_set = subset(data, std::span(order).first(n_train));
    result.holdout = subset(data, std::span(order).subspan(n_train));

    const std::size_t dim = static_cast<std::size_t>(feature_dimension(stages, kind)) + 1;
    std::vector<double> x;
    x.reserve(n_train * dim);
    for (const auto& c : result.train_set.challenges) {
        if (c.size() != static_cast<std::size_t>(stages)) throw ShapeError("attack dataset mixes challenge widths");
        const auto f = features(c, kind);
        x.insert(x.end(), f.begin(), f.end());
        x.push_back(1.0);
    }

    AttackModel& model = result.model;
    model.kind = kind;
    model.stages = stages;
    model.params = params;
    model.seed = seed;
    model.weights.assign(dim, 0.0);

    std::vector<double> grad(dim);
    const double inv_n = 1.0 / static_cast<double>(n_train);
    for (int epoch = 0; epoch <= params.epochs; ++epoch) {
        std::fill(grad.begin(), grad.end(), 0.0);
        double loss = 0.0;
        for (std::size_t r = 0; r < n_train; ++r) {
            const double* row = &x[r * dim];
            double z = 0.0;
            for (std::size_t j = 0; j < dim; ++j) z += model.weights[j] * row[j];
            const double y = result.train_set.labels[r];
            loss += softplus(z) - y * z;
            const double err = sigmoid(z) - y;
            for (std::size_t j = 0; j < dim; ++j) grad[j] += err * row[j];
        }
        model.loss_history.push_back(loss * inv_n);
        if (epoch == params.epochs) break;
        for (std::size_t j = 0; j < dim; ++j) model.weights[j] -= params.learning_rate * grad[j] * inv_n;
    }
    return result;
}

double evaluate_attack(const AttackModel& model, const AttackDataset& holdout) {
    if (holdout.size() == 0) throw ParameterError("cannot evaluate an attack on an empty holdout set");
    std::size_t correct = 0;
    for (std::size_t i = 0; i < holdout.size(); ++i) correct += model.predict(holdout.challenges[i]) == holdout.labels[i];
    return static_cast<double>(correct) / static_cast<double>(holdout.size()) * 100.0;
}

AttackModel random_model(int stages, FeatureKind kind, std::uint64_t seed) {
    AttackModel m;
    m.kind = kind;
    m.stages = stages;
    m.seed = seed;
    std::mt19937_64 engine(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    m.weights.resize(static_cast<std::size_t>(feature_dimension(stages, kind)) + 1);
    for (double& w : m.weights) w = normal(engine);
    return m;
}

std::vector<CompareRow> compare_designs(const std::vector<Netlist>& designs, const CompareOptions& options) {
    if (designs.empty()) return {};
    for (const auto& d : designs) {
        if (d.stages() != designs.front().stages()) throw NetlistError("compared designs must share a stage count");
    }
    if (options.seeds.empty()) throw ParameterError("compare_designs needs at least one seed");
    std::vector<CompareRow> rows;
    for (const auto& design : designs) {
        std::vector<CompareRow> by_kind(options.kinds.size());
        for (std::size_t k = 0; k < options.kinds.size(); ++k) {
            by_kind[k].design = design.descriptor();
            by_kind[k].kind = options.kinds[k];
        }
        for (std::uint64_t seed : options.seeds) {
            const auto device = synthesize_device(options.params, design, derive_seed(seed, 0xde));
            const auto data = collect_attack_dataset(device, options.crp_budget, derive_seed(seed, 0xc0));
            const auto shuffled = shuffle_labels(data, derive_seed(seed, 0x5f));
            for (std::size_t k = 0; k < options.kinds.size(); ++k) {
                const auto fit = train(data, options.kinds[k], options.train, derive_seed(seed, 0x7a));
                by_kind[k].accuracies.push_back(evaluate_attack(fit.model, fit.holdout));
                const auto control = train(shuffled, options.kinds[k], options.train, derive_seed(seed, 0x7a));
                by_kind[k].shuffled_mean += evaluate_attack(control.model, control.holdout);
            }
        }
        for (auto& row : by_kind) {
            const double n = static_cast<double>(row.accuracies.size());
            row.mean = std::accumulate(row.accuracies.begin(), row.accuracies.end(), 0.0) / n;
            double var = 0.0;
            for (double a : row.accuracies) var += (a - row.mean) * (a - row.mean);
            row.ci95 = row.accuracies.size() > 1 ? 1.96 * std::sqrt(var / (n - 1.0) / n) : 0.0;
            row.shuffled_mean /= n;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

} // namespace papuf
