// multiple-input (co-spend) partition and the aggregated cluster graph
#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "flowtrace/addrgraph.hpp"
#include "flowtrace/ledger.hpp"

namespace flowtrace {

// Disjoint clusters covering every address in the ledger.  A cluster is named
// by its representative: the lexicographically smallest member address.
class Partition {
public:
    AddrId rep(AddrId addr) const { return rep_[addr]; }
    std::size_t cluster_count() const { return reps_.size(); }

    // representatives ordered lexicographically
    std::span<const AddrId> reps() const { return reps_; }

    // members of rep's cluster, ordered lexicographically; empty if rep is
    // not a representative
    std::span<const AddrId> members(AddrId rep) const;

    std::size_t cluster_size(AddrId rep) const { return members(rep).size(); }

    // CSV `address,cluster_rep`, one row per address in lexicographic order
    void dump_csv(std::ostream& os, const LedgerStore& store) const;

private:
    friend Partition compute_partition(const LedgerStore&);
    std::vector<AddrId> rep_;              // addr -> representative
    std::vector<AddrId> reps_;             // representatives by lex rank
    std::vector<std::uint32_t> rep_slot_;  // addr -> index into reps_, or npos
    std::vector<AddrId> member_;           // members grouped by cluster
    std::vector<std::uint32_t> member_off_;
};

Partition compute_partition(const LedgerStore& store);

struct ClusterEdge {
    AddrId src_rep = 0;
    AddrId dst_rep = 0;
    std::uint64_t tx_count = 0;
    Sat value_sat = 0;
    Cents value_usd = 0;

    // distinct member addresses of one cluster transacting with each other
    bool intra() const { return src_rep == dst_rep; }
};

class ClusterGraph {
public:
    std::span<const ClusterEdge> edges() const { return edges_; }
    std::size_t edge_count() const { return edges_.size(); }
    Sat total_value_sat() const;
    Cents total_value_usd() const;

    // CSV `src,dst,tx_count,value_sat,value_usd,intra`
    void dump_csv(std::ostream& os, const LedgerStore& store) const;

private:
    friend ClusterGraph build_cluster_graph(const Partition&, const AddressGraph&,
                                            const LedgerStore&);
    std::vector<ClusterEdge> edges_;
};

ClusterGraph build_cluster_graph(const Partition& partition, const AddressGraph& graph,
                                 const LedgerStore& store);

} // namespace flowtrace
