#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "papuf/bits.hpp"
#include "papuf/device_model.hpp"

namespace papuf {

inline constexpr int kSupportedResponseSizes[] = {8, 16, 32, 64, 128};
bool is_supported_response_size(int size) noexcept;

/// One response bit per LFSR-expanded challenge.
Response evaluate_response(const DeviceInstance& device, const Challenge& seed_challenge,
                           int response_size, std::uint64_t eval_seed);

struct CrpRecord {
    std::string device_id;
    int challenge_index = 0; // position in the collection's challenge sequence
    Challenge challenge;     // seed challenge
    int repetition = 0;
    Response response;
};

/// Canonically sorted by (device_id, challenge_index, repetition).
class CrpSet {
public:
    struct Metadata {
        std::string netlist;   // Netlist descriptor
        std::string lfsr;      // LfsrTaps::describe()
        DelayParams params;
        std::uint64_t population_seed = 0;
        std::uint64_t eval_seed = 0;
        std::string challenge_mode = "random"; // or "chain"
        std::string config_hash;
    };

    CrpSet() = default;
    /// Validates uniqueness of keys and equal response lengths, then sorts.
    CrpSet(Metadata meta, std::vector<CrpRecord> records);

    const Metadata& metadata() const noexcept { return meta_; }
    const std::vector<CrpRecord>& records() const noexcept { return records_; }
    std::size_t size() const noexcept { return records_.size(); }
    bool empty() const noexcept { return records_.empty(); }
    int response_size() const noexcept;

    std::vector<std::string> device_ids() const;
    int repetitions() const; // max repetition index + 1

    /// Reads of one (device, challenge) cell, ordered by repetition.
    using Cell = std::vector<const CrpRecord*>;
    /// device_id -> cells in challenge_index order
    std::map<std::string, std::vector<Cell>> cells() const;

private:
    Metadata meta_;
    std::vector<CrpRecord> records_;
};

Challenge random_challenge(int width, std::uint64_t seed);

struct CollectOptions {
    int num_challenges = 1;
    int repetitions = 1;
    int response_size = 128;
    std::uint64_t master_eval_seed = 0;
    /// "random": independent seed challenges; "chain": each seed challenge is
    /// the previous one with one uniformly chosen bit flipped.
    std::string challenge_mode = "random";
};

/// Every device answers the same seed challenges.
CrpSet collect_crps(std::span<const DeviceInstance> population, const CollectOptions& options);

/// Bitwise majority over an odd number of equal-length responses.
Response majority_vote(std::span<const Response> responses);

} // namespace papuf
