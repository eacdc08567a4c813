// deterministic synthetic-world generator and ground-truth evaluation
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flowtrace/attribution.hpp"
#include "flowtrace/campaign.hpp"
#include "flowtrace/cluster.hpp"
#include "flowtrace/dates.hpp"
#include "flowtrace/econ.hpp"
#include "flowtrace/flows.hpp"
#include "flowtrace/money.hpp"

namespace flowtrace {

// ransom per victim: fixed amount, or uniform integer draw from [lo, hi]
struct RansomDist {
    bool uniform = false;
    Sat fixed = 0;
    Sat lo = 0;
    Sat hi = 0;
};

struct CampaignSpec {
    std::string family;
    std::uint32_t victims = 0;
    std::uint32_t collectors = 0;
    std::uint32_t fan_in = 0;  // victims == collectors × fan_in
    YearMonth start{};
    RansomDist ransom;
    double noise = 0.0;  // pre-campaign addresses as a fraction of victims
    double exit_exchange = 0.0;
    double exit_gambling = 0.0;
    double exit_mixer = 0.0;  // fraction sums ≤ 1; remainder goes to a hoard
    std::uint32_t seed_count = 1;
};

struct WorldSpec {
    std::uint64_t rng_seed = 1;
    Cents rate_base = 30000;  // 300.00 USD/BTC
    bool shared_hoard = false;  // one hoard address across families
    std::vector<CampaignSpec> campaigns;
};

// INI world spec: global keys + one [family] section per campaign
WorldSpec parse_world_spec(const std::string& path);

struct TruthCollector {
    std::string address;
    std::uint64_t indegree = 0;  // over expanded sources only
    bool expanded = false;
};

struct TruthExit {
    std::string address;
    TagCategory category = TagCategory::Other;
};

struct GroundTruthFamily {
    std::string name;
    YearMonth start{};
    std::vector<std::string> seeds;
    std::vector<std::string> payment_addresses;  // the planted ransom addresses
    std::vector<std::string> cluster;   // co-spend cluster grown from the seeds
    std::vector<std::string> expanded_tf;
    std::vector<TruthCollector> collectors;  // expected key addresses, lex order
    std::vector<TruthExit> exits;            // tagged exit deposits
    std::string hoard;                       // untagged exit sink, may be shared
    Sat ransom_total_sat = 0;
    Cents ransom_total_usd = 0;
};

struct GroundTruth {
    std::vector<GroundTruthFamily> families;
    std::string shared_hoard;  // empty when disabled
    std::size_t tx_count = 0;
};

// writes ledger.jsonl, seeds.csv, tags.csv, rates.csv, ground_truth.json;
// byte-identical outputs for identical (spec, rng_seed)
GroundTruth generate_world(const WorldSpec& spec, const std::string& out_dir);

GroundTruth load_ground_truth(const std::string& path);

struct EvalScores {
    double cluster_precision = 0.0;
    double cluster_recall = 0.0;
    double expanded_precision = 0.0;
    double expanded_recall = 0.0;
    double key_precision = 0.0;
    double key_recall = 0.0;
    bool total_sat_exact = false;
    bool total_usd_exact = false;
};

// compares one family's pipeline products against its planted truth;
// family-name mismatch is fatal
EvalScores evaluate(const GroundTruthFamily& truth, const LedgerStore& store,
                    const Partition& partition, const FamilyCampaign& campaign,
                    std::span<const KeyAddress> keys, const FamilyImpact& impact);

} // namespace flowtrace
