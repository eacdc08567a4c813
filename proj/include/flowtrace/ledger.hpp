// Normalized transaction ledger: JSONL ingest, validation, and the indexes
// every downstream stage reads. Immutable once built.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "flowtrace/money.hpp"

namespace flowtrace {

using AddrId = std::uint32_t;

struct TxSlot {
    AddrId addr;
    Sat value;
};

struct Transaction {
    std::string txid;        // 64-char lowercase hex, unique per ledger
    std::int64_t height = 0;
    std::int64_t timestamp = 0;  // UTC epoch seconds
    std::vector<TxSlot> inputs;  // empty iff coinbase
    std::vector<TxSlot> outputs;

    bool coinbase() const { return inputs.empty(); }
};

// Sum of slot values, exact (totals can exceed 64 bits only in adversarial input).
unsigned __int128 slot_total(std::span<const TxSlot> slots);

class LedgerStore {
public:
    struct Occurrence {
        std::uint32_t tx;   // index into transactions()
        bool is_input;
    };

    // Parses and validates a JSONL ledger. Throws Error{Input} with the
    // offending line number on malformed records, Error{Invariant} on
    // duplicate txids, negative fees, or non-monotone timestamps.
    static LedgerStore ingest(const std::string& path);

    std::span<const Transaction> transactions() const { return txs_; }
    const Transaction* find_tx(std::string_view txid) const;

    std::size_t addr_count() const { return addr_names_.size(); }
    const std::string& addr_name(AddrId id) const { return addr_names_[id]; }
    std::optional<AddrId> find_addr(std::string_view name) const;

    // Rank of the address in lexicographic order over all addresses; used for
    // every deterministic ordering downstream.
    std::uint32_t lex_rank(AddrId id) const { return lex_rank_[id]; }
    std::span<const AddrId> addrs_by_lex() const { return by_lex_; }

    std::span<const Occurrence> occurrences(AddrId id) const;
    std::int64_t first_seen(AddrId id) const { return first_seen_[id]; }
    std::optional<std::int64_t> first_seen(std::string_view addr) const;

    // Deterministic dump of the address index (one line per incidence),
    // ordered by address then transaction. Two ingests of one file match byte
    // for byte.
    void dump_index(std::ostream& os) const;

private:
    friend class LedgerBuilder;

    std::vector<Transaction> txs_;  // sorted by (height, txid)
    std::unordered_map<std::string, std::uint32_t> tx_index_;

    std::vector<std::string> addr_names_;
    std::unordered_map<std::string, AddrId> addr_ids_;
    std::vector<std::uint32_t> lex_rank_;
    std::vector<AddrId> by_lex_;

    // CSR layout: occurrences of address a live in occ_[occ_off_[a] .. occ_off_[a+1])
    std::vector<std::uint32_t> occ_off_;
    std::vector<Occurrence> occ_;
    std::vector<std::int64_t> first_seen_;
};

} // namespace flowtrace
