#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "papuf/bits.hpp"
#include "papuf/device_model.hpp"
#include "papuf/response.hpp"

namespace papuf {

/// Counts indexed by raw Hamming distance 0..n.
using HdHistogram = std::vector<std::uint64_t>;

struct HdStats {
    double percent = 0.0;
    HdHistogram histogram;
    std::uint64_t pairs = 0;
};

struct MinMaxAvg {
    double min = 0.0;
    double max = 0.0;
    double avg = 0.0;
};

struct Robustness {
    double stable0 = 0.0;
    double stable1 = 0.0;
    double unstable = 0.0;
};

/// Mean HD between consecutive responses (each pair answers challenges one
/// bit apart), as a percent of the response length.
HdStats intra_hd(std::span<const Response> responses_by_neighbor_challenge);

/// Average pairwise HD between devices answering the same challenge.
HdStats inter_hd(std::span<const Response> responses_by_device);

/// Percent of 1-bits per response (first read of each cell), optionally one device only.
MinMaxAvg uniformity(const CrpSet& crps, const std::optional<std::string>& device_id = {});
double uniformity(const Response& response);

/// Percent of 1s per bit position across devices and challenges.
MinMaxAvg bit_aliasing(const CrpSet& crps);

Robustness robustness(const CrpSet& crps);

struct ReliabilityOptions {
    /// Reference response = majority of the first `enroll_reads` reads
    /// (reduced to the largest odd count available).
    int enroll_reads = 11;
};

/// 100 minus the mean fractional HD between every read and its cell's reference.
double reliability(const CrpSet& crps, const ReliabilityOptions& options = {});
/// Same statistic with the HD histogram of reads against the reference.
HdStats reliability_hd(const CrpSet& crps, const ReliabilityOptions& options = {});

/// Inter-device HD averaged over every shared challenge (first reads).
HdStats uniqueness_hd(const CrpSet& crps);
double uniqueness(const CrpSet& crps);

/// Neighbor-challenge intra HD pooled over devices; requires a "chain" collection.
HdStats neighbor_intra_hd(const CrpSet& crps);

struct MetricsReport {
    MinMaxAvg uniformity;
    std::optional<MinMaxAvg> bit_aliasing;  // needs >= 2 devices
    std::optional<double> uniqueness;       // needs >= 2 devices
    std::optional<double> reliability;      // needs >= 2 reads per cell
    std::optional<Robustness> robustness;   // needs >= 2 reads per cell
    std::optional<double> intra_hd_percent; // neighbor challenges ("chain" collections)
    HdHistogram intra_hd_histogram;         // neighbor challenges if available, else reads vs reference
    std::string intra_hd_source;            // "neighbor", "repeat" or "none"
    HdHistogram inter_hd_histogram;
    int devices = 0;
    int challenges = 0;
    int repetitions = 0;
    int response_size = 0;
};

/// Computes each statistic the data supports; population statistics need
/// at least two devices and repeat statistics at least two reads.
MetricsReport compute_report(const CrpSet& crps, const ReliabilityOptions& options = {});

struct CalibrationOptions {
    double sigma_low = 0.0;
    double sigma_high = 100.0;
    int challenges = 200;
    int repetitions = 31;
    int response_size = 128;
    int enroll_reads = 11;
    double tolerance = 0.25;
    int max_iterations = 60;
    std::uint64_t eval_seed = 0xca11b7a7eULL;
};

struct CalibrationResult {
    double sigma_noise = 0.0;
    double reliability = 0.0;
    int iterations = 0;
};

/// Simulated reliability of `device` with its sigma_noise replaced.
double simulated_reliability(const DeviceInstance& device, double sigma_noise,
                             const CalibrationOptions& options);

/// Bisection on sigma_noise. Noise draws are shared across trial sigmas, so
/// the simulated reliability is a deterministic function of sigma.
CalibrationResult calibrate_noise(double target_reliability, const DeviceInstance& device,
                                  const CalibrationOptions& options = {});

/// Spearman rank correlation with average ranks for ties; NaN when either
/// series is constant.
double spearman(std::span<const double> x, std::span<const double> y);

} // namespace papuf
