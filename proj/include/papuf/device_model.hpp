#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "papuf/netlist.hpp"

namespace papuf {

/// Timing model, in abstract picoseconds.
struct DelayParams {
    double mean_delay = 100.0;
    double sigma_process = 5.0;
    /// Calibrated so a default 128-bit PA-PUF reads at ~95.37% reliability.
    double sigma_noise = kCalibratedSigmaNoise;
    double metastability_window = 0.0;

    static constexpr double kCalibratedSigmaNoise = 2.148438;

    void validate() const;
    friend bool operator==(const DelayParams&, const DelayParams&) = default;
};

/// Per-line terminal jitter for one evaluation (unused lines are zero).
using LineJitter = std::array<double, 3>;

/// One simulated chip. Immutable after construction.
class DeviceInstance {
public:
    DeviceInstance(std::string id, Netlist netlist, DelayParams params, std::uint64_t seed,
                   std::vector<double> delays);

    const std::string& id() const noexcept { return id_; }
    const Netlist& netlist() const noexcept { return netlist_; }
    const DelayParams& params() const noexcept { return params_; }
    std::uint64_t seed() const noexcept { return seed_; }

    /// Segment delay of `line`'s mux at `stage` when its select is `bit`.
    double delay(int stage, int bit, int line) const noexcept {
        return delays_[(static_cast<std::size_t>(stage) * 2 + static_cast<std::size_t>(bit)) *
                           static_cast<std::size_t>(netlist_.lines()) +
                       static_cast<std::size_t>(line)];
    }

    /// Flat table, layout [stage][bit][line].
    std::span<const double> delay_table() const noexcept { return delays_; }

    /// Same silicon, different measurement noise.
    DeviceInstance with_noise(double sigma_noise) const;
    DeviceInstance with_params(const DelayParams& params) const;

private:
    std::string id_;
    Netlist netlist_;
    DelayParams params_;
    std::uint64_t seed_;
    std::vector<double> delays_;
};

/// Delays are quantized to 1e-6 so the text device file replays bit-exactly.
DeviceInstance synthesize_device(const DelayParams& params, const Netlist& netlist,
                                 std::uint64_t seed, std::string id = "dev-0000");

std::vector<DeviceInstance> synthesize_population(const DelayParams& params,
                                                  const Netlist& netlist, int count,
                                                  std::uint64_t master_seed);

std::string population_device_id(int index);

/// Standard-normal draws scaled by sigma_noise, one per line.
LineJitter sample_noise(const DeviceInstance& device, std::uint64_t eval_seed);

} // namespace papuf
