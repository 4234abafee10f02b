#include "papuf/netlist.hpp"

#include <charconv>
#include <sstream>

#include "papuf/errors.hpp"

namespace papuf {

std::string design_name(Design d) {
    switch (d) {
    case Design::Apuf: return "apuf";
    case Design::PaPuf: return "pa-puf";
    case Design::FfPaPuf: return "ff-pa-puf";
    }
    return "unknown";
}

Design parse_design(std::string_view name) {
    if (name == "apuf") return Design::Apuf;
    if (name == "pa-puf") return Design::PaPuf;
    if (name == "ff-pa-puf") return Design::FfPaPuf;
    throw NetlistError("unknown design '" + std::string(name) + "'");
}

Netlist::Netlist(Design design, int stages, std::vector<FeedForwardTap> taps)
    : design_(design), stages_(stages), taps_(std::move(taps)) {
    if (stages_ < 1) throw NetlistError("stage count must be positive");
    if (design_ != Design::FfPaPuf && !taps_.empty()) {
        throw NetlistError("feed-forward taps require the ff-pa-puf design");
    }
    target_of_.assign(static_cast<std::size_t>(stages_), -1);
    for (std::size_t k = 0; k < taps_.size(); ++k) {
        const auto& tap = taps_[k];
        if (tap.tap_stage < 0 || tap.tap_stage >= tap.target_stage || tap.target_stage >= stages_) {
            throw NetlistError("tap " + std::to_string(tap.tap_stage) + ":" +
                               std::to_string(tap.target_stage) + " violates 0 <= tap < target < " +
                               std::to_string(stages_));
        }
        auto& slot = target_of_[static_cast<std::size_t>(tap.target_stage)];
        if (slot != -1) {
            throw NetlistError("stage " + std::to_string(tap.target_stage) +
                               " is driven by more than one feed-forward arbiter");
        }
        slot = static_cast<int>(k);
    }
}

std::string Netlist::descriptor() const {
    std::string s = design_name(design_) + "/" + std::to_string(stages_);
    if (design_ == Design::FfPaPuf) s += "/" + format_taps(taps_);
    return s;
}

Netlist Netlist::from_descriptor(std::string_view text) {
    const auto first = text.find('/');
    if (first == std::string_view::npos) throw FormatError("bad netlist descriptor '" + std::string(text) + "'");
    const Design design = parse_design(text.substr(0, first));
    auto rest = text.substr(first + 1);
    const auto second = rest.find('/');
    const auto stages_text = rest.substr(0, second);
    int stages = 0;
    auto [ptr, ec] = std::from_chars(stages_text.data(), stages_text.data() + stages_text.size(), stages);
    if (ec != std::errc() || ptr != stages_text.data() + stages_text.size()) {
        throw FormatError("bad stage count in netlist descriptor '" + std::string(text) + "'");
    }
    std::vector<FeedForwardTap> taps;
    if (second != std::string_view::npos) taps = parse_taps(rest.substr(second + 1));
    return Netlist(design, stages, std::move(taps));
}

std::vector<FeedForwardTap> spaced_taps(int stages, int count) {
    if (count < 0) throw NetlistError("tap count must be non-negative");
    if (count == 0) return {};
    const int spacing = stages / (count + 2);
    if (spacing < 1) {
        throw NetlistError("cannot place " + std::to_string(count) + " feed-forward taps on " +
                           std::to_string(stages) + " stages");
    }
    std::vector<FeedForwardTap> taps;
    for (int j = 0; j < count; ++j) taps.push_back({(j + 1) * spacing, (j + 2) * spacing});
    return taps;
}

std::vector<FeedForwardTap> parse_taps(std::string_view text) {
    std::vector<FeedForwardTap> taps;
    if (text.empty()) return taps;
    std::string item;
    std::istringstream in{std::string(text)};
    while (std::getline(in, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw FormatError("bad tap '" + item + "', expected tap:target");
        FeedForwardTap tap;
        try {
            tap.tap_stage = std::stoi(item.substr(0, colon));
            tap.target_stage = std::stoi(item.substr(colon + 1));
        } catch (const std::exception&) {
            throw FormatError("bad tap '" + item + "', expected tap:target");
        }
        taps.push_back(tap);
    }
    return taps;
}

std::string format_taps(const std::vector<FeedForwardTap>& taps) {
    std::string s;
    for (const auto& t : taps) {
        if (!s.empty()) s += ",";
        s += std::to_string(t.tap_stage) + ":" + std::to_string(t.target_stage);
    }
    return s;
}

} // namespace papuf
