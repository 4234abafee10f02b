#pragma once

#include <vector>

#include "papuf/bits.hpp"
#include "papuf/device_model.hpp"

namespace papuf::testing {

/// Device with a hand-written delay table, layout [stage][bit][line].
inline DeviceInstance hand_device(const Netlist& net, std::vector<double> delays,
                                  DelayParams params = {}) {
    params.sigma_noise = 0.0;
    return DeviceInstance("hand", net, params, 0, std::move(delays));
}

inline Challenge challenge_of(const char* bits) { return Challenge{BitVector::from_string(bits)}; }

inline Response response_of(const char* bits) { return Response{BitVector::from_string(bits)}; }

} // namespace papuf::testing
