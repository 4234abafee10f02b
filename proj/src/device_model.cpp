#include "papuf/device_model.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "papuf/errors.hpp"
#include "papuf/random.hpp"

namespace papuf {

void DelayParams::validate() const {
    if (!(mean_delay > 0.0) || !std::isfinite(mean_delay)) throw ParameterError("mean_delay must be positive");
    if (!(sigma_process >= 0.0) || !std::isfinite(sigma_process)) throw ParameterError("sigma_process must be >= 0");
    if (!(sigma_noise >= 0.0) || !std::isfinite(sigma_noise)) throw ParameterError("sigma_noise must be >= 0");
    if (!(metastability_window >= 0.0) || !std::isfinite(metastability_window)) {
        throw ParameterError("metastability_window must be >= 0");
    }
}

DeviceInstance::DeviceInstance(std::string id, Netlist netlist, DelayParams params,
                               std::uint64_t seed, std::vector<double> delays)
    : id_(std::move(id)), netlist_(std::move(netlist)), params_(params), seed_(seed),
      delays_(std::move(delays)) {
    params_.validate();
    const auto expected = static_cast<std::size_t>(netlist_.stages()) * 2 *
                          static_cast<std::size_t>(netlist_.lines());
    if (delays_.size() != expected) {
        throw ShapeError("delay table has " + std::to_string(delays_.size()) + " entries, expected " +
                         std::to_string(expected));
    }
    for (double d : delays_) {
        if (!(d > 0.0) || !std::isfinite(d)) throw ParameterError("segment delays must be positive and finite");
    }
}

DeviceInstance DeviceInstance::with_noise(double sigma_noise) const {
    DelayParams p = params_;
    p.sigma_noise = sigma_noise;
    return with_params(p);
}

DeviceInstance DeviceInstance::with_params(const DelayParams& params) const {
    return DeviceInstance(id_, netlist_, params, seed_, delays_);
}

DeviceInstance synthesize_device(const DelayParams& params, const Netlist& netlist,
                                 std::uint64_t seed, std::string id) {
    params.validate();
    const auto count = static_cast<std::size_t>(netlist.stages()) * 2 *
                       static_cast<std::size_t>(netlist.lines());
    std::mt19937_64 engine(seed);
    std::normal_distribution<double> normal(params.mean_delay, params.sigma_process);
    std::vector<double> delays;
    delays.reserve(count);
    while (delays.size() < count) {
        const double d = params.sigma_process == 0.0 ? params.mean_delay : normal(engine);
        const double q = std::round(d * 1e6) / 1e6;
        if (q > 0.0) delays.push_back(q);
    }
    return DeviceInstance(std::move(id), netlist, params, seed, std::move(delays));
}

std::string population_device_id(int index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "dev-%04d", index);
    return buf;
}

std::vector<DeviceInstance> synthesize_population(const DelayParams& params, const Netlist& netlist,
                                                  int count, std::uint64_t master_seed) {
    if (count < 1) throw ParameterError("population size must be at least 1");
    std::vector<DeviceInstance> devices;
    devices.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        devices.push_back(synthesize_device(params, netlist,
                                            derive_seed(master_seed, static_cast<std::uint64_t>(i)),
                                            population_device_id(i)));
    }
    return devices;
}

LineJitter sample_noise(const DeviceInstance& device, std::uint64_t eval_seed) {
    LineJitter jitter{};
    const double sigma = device.params().sigma_noise;
    if (sigma == 0.0) return jitter;
    SplitMix64 engine(eval_seed);
    std::normal_distribution<double> standard(0.0, 1.0);
    for (int line = 0; line < device.netlist().lines(); ++line) {
        jitter[static_cast<std::size_t>(line)] = sigma * standard(engine);
    }
    return jitter;
}

} // namespace papuf
