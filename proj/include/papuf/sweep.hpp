#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "papuf/device_model.hpp"
#include "papuf/netlist.hpp"

namespace papuf {

struct SweepOptions {
    DelayParams params;
    int population = 10;
    int challenges = 50;
    int repetitions = 21;
    int response_size = 128;
    int enroll_reads = 11;
    std::uint64_t population_seed = 1;
    std::uint64_t eval_seed = 2;
};

struct SweepRow {
    int parameter = 0; // tap count, or response size for size sweeps
    double uniqueness = 0.0;
    double reliability = 0.0;
};

/// One row per tap count on a PA-PUF chain of base.stages() stages; taps
/// placed by spaced_taps().
std::vector<SweepRow> sweep_feed_forward(const Netlist& base, const std::vector<int>& tap_counts,
                                         const SweepOptions& options);

/// One row per response size.
std::vector<SweepRow> sweep_response_size(const Netlist& netlist, const std::vector<int>& sizes,
                                          const SweepOptions& options);

} // namespace papuf
