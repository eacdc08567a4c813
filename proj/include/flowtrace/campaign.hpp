// family seed sets, cluster expansion, and per-family time filtering
#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "flowtrace/cluster.hpp"
#include "flowtrace/dates.hpp"
#include "flowtrace/ledger.hpp"

namespace flowtrace {

struct SeedRecord {
    std::string family;
    std::string address;
    std::string source;
};

struct SeedGroup {
    std::string family;
    std::vector<SeedRecord> seeds;  // deduplicated on address, input order
};

// CSV `family,address,source`; groups ordered by family name
std::vector<SeedGroup> load_seeds(const std::string& path);

// Address-id vectors below are sorted ascending by id; use the ledger's
// lexicographic rank when emitting rows.
struct FamilyCampaign {
    std::string family;
    std::optional<YearMonth> start_date;
    std::vector<AddrId> seeds;        // seeds observed in the ledger
    std::vector<AddrId> expanded;     // union of clusters containing a seed
    std::vector<AddrId> expanded_tf;  // time-filtered expansion
    std::size_t clusters_touched = 0;
    std::vector<std::string> dropped_seeds;  // seed addresses never observed
    bool time_filtered = false;

    bool is_seed(AddrId a) const { return std::binary_search(seeds.begin(), seeds.end(), a); }
    bool contains_expanded(AddrId a) const {
        return std::binary_search(expanded.begin(), expanded.end(), a);
    }
    bool contains_tf(AddrId a) const {
        return std::binary_search(expanded_tf.begin(), expanded_tf.end(), a);
    }
};

FamilyCampaign expand(const SeedGroup& group, const Partition& partition,
                      const LedgerStore& store);

// keeps a ∈ expanded with first_seen(a) >= first UTC instant of the start
// month; seeds are exempt.  Without a start date the filter is skipped and
// expanded_tf == expanded.
void time_filter(FamilyCampaign& campaign, std::optional<YearMonth> start_date,
                 const LedgerStore& store);

} // namespace flowtrace
