// per-family outgoing-relationships graphs, key-address identification,
// exit-point resolution, and cross-family links
#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "flowtrace/addrgraph.hpp"
#include "flowtrace/attribution.hpp"
#include "flowtrace/campaign.hpp"
#include "flowtrace/cluster.hpp"
#include "flowtrace/ledger.hpp"

namespace flowtrace {

// One-hop graph of everything the family's (time-filtered) expanded
// addresses pay.  Destinations are classed expanded or external.
struct OutRelGraph {
    struct Edge {
        AddrId src = 0;  // always in expanded_tf
        AddrId dst = 0;
        std::uint64_t tx_count = 0;
        Sat value_sat = 0;
        Cents value_usd = 0;
        bool dst_expanded = false;
    };

    std::string family;
    std::vector<Edge> edges;             // sorted by (lex src, lex dst)
    std::vector<AddrId> expanded_nodes;  // == expanded_tf, ascending by id
    std::vector<AddrId> external_nodes;  // distinct external dsts, ascending by id

    // CSV `src,dst,value_sat,src_class,dst_class`
    void dump_csv(std::ostream& os, const LedgerStore& store) const;
};

OutRelGraph build_outrel(const FamilyCampaign& campaign, const AddressGraph& graph,
                         const LedgerStore& store);

// how "unique incoming relationships" are counted
enum class IndegreeMode { DistinctSources, DistinctTxs };

struct KeyAddress {
    AddrId addr = 0;
    std::string family;
    std::uint64_t indegree = 0;        // ≥ 2
    bool was_expanded = false;         // dst itself in expanded_tf
    std::vector<Tag> exit_tags;        // its cluster's tags, filled by resolve_exit_points
};

// nodes with ≥2 unique incoming relationships from expanded sources;
// sorted by indegree descending, then address ascending
std::vector<KeyAddress> key_addresses(const OutRelGraph& graph, IndegreeMode mode,
                                      const LedgerStore& store);

struct IndegreeStats {
    std::size_t count = 0;  // 0 marks the degenerate no-keys case
    double mean = 0.0;
    double median = 0.0;
    std::uint64_t max = 0;
};

IndegreeStats indegree_stats(std::span<const KeyAddress> keys);

struct ExitSummary {
    std::size_t key_count = 0;
    std::size_t tagged_keys = 0;      // keys whose cluster carries ≥1 tag
    std::size_t tagged_clusters = 0;  // distinct tagged clusters among those keys
    // keys counted once per distinct category among their tags
    std::array<std::size_t, 4> category_keys{};
};

// annotates each key with its cluster's tags and aggregates category counts
ExitSummary resolve_exit_points(std::vector<KeyAddress>& keys, const Partition& partition,
                                const ClusterAttribution& attribution);

struct CrossFamilyLink {
    std::string family_a;  // family_a < family_b
    std::string family_b;
    std::vector<AddrId> shared;  // shared key addresses, lexicographic order
};

std::vector<CrossFamilyLink> cross_family_links(std::span<const std::vector<KeyAddress>> families,
                                                const LedgerStore& store);

} // namespace flowtrace
