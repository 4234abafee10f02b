#include "papuf/sweep.hpp"

#include "papuf/errors.hpp"
#include "papuf/metrics.hpp"
#include "papuf/response.hpp"

namespace papuf {
namespace {

SweepRow measure(const Netlist& netlist, int response_size, const SweepOptions& o) {
    const auto population = synthesize_population(o.params, netlist, o.population, o.population_seed);
    CollectOptions collect;
    collect.num_challenges = o.challenges;
    collect.repetitions = o.repetitions;
    collect.response_size = response_size;
    collect.master_eval_seed = o.eval_seed;
    const CrpSet crps = collect_crps(population, collect);
    SweepRow row;
    row.uniqueness = uniqueness(crps);
    row.reliability = reliability(crps, ReliabilityOptions{o.enroll_reads});
    return row;
}

} // namespace

std::vector<SweepRow> sweep_feed_forward(const Netlist& base, const std::vector<int>& tap_counts,
                                         const SweepOptions& options) {
    if (base.design() == Design::Apuf) throw NetlistError("feed-forward sweeps need a three-line base design");
    if (options.population < 2) throw PopulationError("sweeps report uniqueness and need at least 2 devices");
    std::vector<SweepRow> rows;
    for (int count : tap_counts) {
        const Netlist netlist = Netlist::ff_pa_puf(base.stages(), spaced_taps(base.stages(), count));
        SweepRow row = measure(netlist, options.response_size, options);
        row.parameter = count;
        rows.push_back(row);
    }
    return rows;
}

std::vector<SweepRow> sweep_response_size(const Netlist& netlist, const std::vector<int>& sizes,
                                          const SweepOptions& options) {
    if (options.population < 2) throw PopulationError("sweeps report uniqueness and need at least 2 devices");
    std::vector<SweepRow> rows;
    for (int size : sizes) {
        SweepRow row = measure(netlist, size, options);
        row.parameter = size;
        rows.push_back(row);
    }
    return rows;
}

} // namespace papuf
