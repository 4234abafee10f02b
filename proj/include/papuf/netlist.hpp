#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace papuf {

enum class Design { Apuf, PaPuf, FfPaPuf };

std::string design_name(Design d);
Design parse_design(std::string_view name);

/// A feed-forward arbiter samples the lines after stage `tap_stage` and drives
/// the mux selects of stage `target_stage`.
struct FeedForwardTap {
    int tap_stage = 0;
    int target_stage = 0;

    friend bool operator==(const FeedForwardTap&, const FeedForwardTap&) = default;
};

/// Topology of a mux-chain PUF.
class Netlist {
public:
    /// Validates and builds; throws NetlistError on bad topology.
    Netlist(Design design, int stages, std::vector<FeedForwardTap> taps = {});

    static Netlist apuf(int stages) { return Netlist(Design::Apuf, stages); }
    static Netlist pa_puf(int stages) { return Netlist(Design::PaPuf, stages); }
    static Netlist ff_pa_puf(int stages, std::vector<FeedForwardTap> taps) {
        return Netlist(Design::FfPaPuf, stages, std::move(taps));
    }

    Design design() const noexcept { return design_; }
    int stages() const noexcept { return stages_; }
    int lines() const noexcept { return design_ == Design::Apuf ? 2 : 3; }
    const std::vector<FeedForwardTap>& taps() const noexcept { return taps_; }

    /// Stage -> index into taps(), or -1 when the stage select comes from the challenge.
    int tap_driving(int stage) const noexcept { return target_of_[static_cast<std::size_t>(stage)]; }

    /// Compact descriptor, e.g. "ff-pa-puf/64/16:32,32:48".
    std::string descriptor() const;
    static Netlist from_descriptor(std::string_view text);

    friend bool operator==(const Netlist& a, const Netlist& b) {
        return a.design_ == b.design_ && a.stages_ == b.stages_ && a.taps_ == b.taps_;
    }

private:
    Design design_;
    int stages_;
    std::vector<FeedForwardTap> taps_;
    std::vector<int> target_of_;
};

/// Evenly spaced tap placement: with spacing s = stages / (count + 2), tap j
/// reads stage (j+1)s and drives stage (j+2)s. 64 stages, 2 taps gives
/// {16:32, 32:48}.
std::vector<FeedForwardTap> spaced_taps(int stages, int count);

std::vector<FeedForwardTap> parse_taps(std::string_view text);
std::string format_taps(const std::vector<FeedForwardTap>& taps);

} // namespace papuf
