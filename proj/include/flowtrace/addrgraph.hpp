// Address graph: aggregated directed value flows between addresses, with
// explicit change outputs removed and per-edge USD valued at daily closes.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <unordered_map>
#include <vector>

#include "flowtrace/ledger.hpp"
#include "flowtrace/rates.hpp"

namespace flowtrace {

struct AddressEdge {
    AddrId src;
    AddrId dst;
    std::uint64_t tx_count = 0;
    Sat value_sat = 0;
    Cents value_usd = 0;
};

class AddressGraph {
public:
    std::span<const AddressEdge> edges() const { return edges_; }
    // Out-edges of one address, ordered lexicographically by destination.
    std::span<const AddressEdge> out_edges(AddrId src) const;
    // Indices into edges() of one address's in-edges, ordered by source.
    std::span<const std::uint32_t> in_edge_ids(AddrId dst) const;

    std::size_t edge_count() const { return edges_.size(); }
    Sat total_value_sat() const;
    Cents total_value_usd() const;

    // CSV `src,dst,tx_count,value_sat,value_usd`, rows ordered by (src, dst).
    void dump_csv(std::ostream& os, const LedgerStore& store) const;

private:
    friend class AddressGraphBuilder;
    std::vector<AddressEdge> edges_;           // sorted by (lex(src), lex(dst))
    std::vector<std::uint32_t> out_begin_;     // per AddrId range into edges_
    std::vector<std::uint32_t> out_end_;
    std::vector<std::uint32_t> in_ids_;        // edge indices by (lex(dst), lex(src))
    std::vector<std::uint32_t> in_begin_;
    std::vector<std::uint32_t> in_end_;
};

// Incremental construction; transactions may be fed in any order and disjoint
// builders merged, the frozen graph is identical either way.
class AddressGraphBuilder {
public:
    AddressGraphBuilder(const LedgerStore& store, const RateTable& rates)
        : store_(&store), rates_(&rates) {}

    // Attributes each surviving output's value to the inputs proportionally to
    // input values (exact integer arithmetic, half-even, residual satoshis to
    // the lexicographically smallest output address). Outputs whose address
    // also appears among the inputs are dropped entirely. Throws
    // Error{MissingRate} if the transaction's date has no rate.
    void add_transaction(const Transaction& tx);

    void merge(AddressGraphBuilder&& other);
    AddressGraph build() &&;

private:
    struct Acc {
        std::uint64_t tx_count = 0;
        Sat value_sat = 0;
        Cents value_usd = 0;
    };

    const LedgerStore* store_;
    const RateTable* rates_;
    std::unordered_map<std::uint64_t, Acc> acc_;  // key = src << 32 | dst
};

AddressGraph build_address_graph(const LedgerStore& store, const RateTable& rates);

} // namespace flowtrace
