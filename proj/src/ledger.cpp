#include "flowtrace/ledger.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <ostream>

#include <json.hpp>

#include "flowtrace/error.hpp"

namespace flowtrace {

unsigned __int128 slot_total(std::span<const TxSlot> slots) {
    unsigned __int128 acc = 0;
    for (const auto& s : slots) acc += s.value;
    return acc;
}

namespace {

bool is_hex64(std::string_view s) {
    if (s.size() != 64) return false;
    for (char c : s)
        if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return false;
    return true;
}

struct LineContext {
    const std::string& path;
    std::size_t lineno;

    [[noreturn]] void fail(const std::string& msg) const {
        fail_input(path + ":" + std::to_string(lineno) + ": " + msg);
    }
};

} // namespace

class LedgerBuilder {
public:
    explicit LedgerBuilder(const std::string& path) : path_(path) {}

    LedgerStore run() {
        std::ifstream in(path_);
        if (!in) fail_input("cannot open ledger file " + path_);

        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.find_first_not_of(" \t") == std::string::npos) continue;
            parse_line(line, LineContext{path_, lineno});
        }
        if (in.bad()) fail_input("I/O error while reading " + path_);
        return finish();
    }

private:
    void parse_line(const std::string& line, LineContext ctx) {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            ctx.fail(std::string("malformed JSON: ") + e.what());
        }
        if (!j.is_object()) ctx.fail("record is not a JSON object");

        Transaction tx;
        auto txid_it = j.find("txid");
        if (txid_it == j.end() || !txid_it->is_string()) ctx.fail("missing or non-string txid");
        tx.txid = txid_it->get<std::string>();
        if (!is_hex64(tx.txid)) ctx.fail("txid must be 64 lowercase hex chars: " + tx.txid);

        auto height_it = j.find("height");
        if (height_it == j.end() || !height_it->is_number_integer()) ctx.fail("missing or non-integer height");
        tx.height = height_it->get<std::int64_t>();
        if (tx.height < 0) ctx.fail("negative height");

        auto time_it = j.find("time");
        if (time_it == j.end() || !time_it->is_number_integer()) ctx.fail("missing or non-integer time");
        tx.timestamp = time_it->get<std::int64_t>();

        tx.inputs = parse_slots(j, "inputs", ctx);
        tx.outputs = parse_slots(j, "outputs", ctx);

        if (tx.coinbase()) {
            if (tx.outputs.empty()) ctx.fail("coinbase transaction must have at least one output");
        } else {
            if (tx.outputs.empty()) ctx.fail("transaction must have at least one input and one output");
            if (slot_total(tx.outputs) > slot_total(tx.inputs))
                fail_invariant(path_ + ":" + std::to_string(ctx.lineno) +
                               ": outputs exceed inputs (negative fee) in tx " + tx.txid);
        }

        auto [it, fresh] = txid_lines_.emplace(tx.txid, ctx.lineno);
        if (!fresh)
            fail_invariant("duplicate txid " + tx.txid + " at lines " +
                           std::to_string(it->second) + " and " + std::to_string(ctx.lineno) +
                           " of " + path_);
        store_.txs_.push_back(std::move(tx));
    }

    std::vector<TxSlot> parse_slots(const nlohmann::json& j, const char* key, LineContext ctx) {
        auto it = j.find(key);
        if (it == j.end() || !it->is_array()) ctx.fail(std::string("missing or non-array ") + key);
        std::vector<TxSlot> slots;
        slots.reserve(it->size());
        for (const auto& s : *it) {
            if (!s.is_object()) ctx.fail(std::string("non-object entry in ") + key);
            auto addr_it = s.find("addr");
            if (addr_it == s.end() || !addr_it->is_string()) ctx.fail("missing or non-string addr");
            const auto& addr = addr_it->get_ref<const std::string&>();
            if (addr.empty()) ctx.fail("empty address");
            auto val_it = s.find("value");
            if (val_it == s.end() || !val_it->is_number_integer()) ctx.fail("missing or non-integer value");
            if (!val_it->is_number_unsigned() && val_it->get<std::int64_t>() < 0)
                ctx.fail("negative value");
            slots.push_back(TxSlot{intern(addr), val_it->get<std::uint64_t>()});
        }
        return slots;
    }

    AddrId intern(const std::string& name) {
        auto [it, fresh] = store_.addr_ids_.emplace(name, static_cast<AddrId>(store_.addr_names_.size()));
        if (fresh) store_.addr_names_.push_back(name);
        return it->second;
    }

    LedgerStore finish() {
        auto& txs = store_.txs_;
        std::sort(txs.begin(), txs.end(), [](const Transaction& a, const Transaction& b) {
            if (a.height != b.height) return a.height < b.height;
            return a.txid < b.txid;
        });

        // timestamps must not decrease as height increases
        for (std::size_t i = 1; i < txs.size(); ++i) {
            if (txs[i].height > txs[i - 1].height && txs[i].timestamp < txs[i - 1].timestamp)
                fail_invariant("timestamps decrease from height " + std::to_string(txs[i - 1].height) +
                               " to height " + std::to_string(txs[i].height) + " (tx " + txs[i].txid + ")");
        }

        store_.tx_index_.reserve(txs.size());
        for (std::size_t i = 0; i < txs.size(); ++i)
            store_.tx_index_.emplace(txs[i].txid, static_cast<std::uint32_t>(i));

        const std::size_t n_addr = store_.addr_names_.size();
        store_.by_lex_.resize(n_addr);
        std::iota(store_.by_lex_.begin(), store_.by_lex_.end(), AddrId{0});
        std::sort(store_.by_lex_.begin(), store_.by_lex_.end(), [this](AddrId a, AddrId b) {
            return store_.addr_names_[a] < store_.addr_names_[b];
        });
        store_.lex_rank_.resize(n_addr);
        for (std::uint32_t r = 0; r < n_addr; ++r)
            store_.lex_rank_[store_.by_lex_[r]] = r;

        build_occurrences();
        return std::move(store_);
    }

    void build_occurrences() {
        const std::size_t n_addr = store_.addr_names_.size();
        std::vector<std::uint32_t> counts(n_addr + 1, 0);
        std::vector<AddrId> scratch;

        auto per_tx_unique = [&scratch](std::span<const TxSlot> slots) -> std::span<const AddrId> {
            scratch.clear();
            for (const auto& s : slots) scratch.push_back(s.addr);
            std::sort(scratch.begin(), scratch.end());
            scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
            return scratch;
        };

        for (const auto& tx : store_.txs_) {
            for (AddrId a : per_tx_unique(tx.inputs)) ++counts[a + 1];
            for (AddrId a : per_tx_unique(tx.outputs)) ++counts[a + 1];
        }
        for (std::size_t a = 0; a < n_addr; ++a) counts[a + 1] += counts[a];
        store_.occ_off_ = counts;
        store_.occ_.resize(counts[n_addr]);
        store_.first_seen_.assign(n_addr, INT64_MAX);

        std::vector<std::uint32_t> cursor(store_.occ_off_.begin(), store_.occ_off_.end() - 1);
        for (std::uint32_t t = 0; t < store_.txs_.size(); ++t) {
            const auto& tx = store_.txs_[t];
            for (AddrId a : per_tx_unique(tx.inputs)) {
                store_.occ_[cursor[a]++] = {t, true};
                store_.first_seen_[a] = std::min(store_.first_seen_[a], tx.timestamp);
            }
            for (AddrId a : per_tx_unique(tx.outputs)) {
                store_.occ_[cursor[a]++] = {t, false};
                store_.first_seen_[a] = std::min(store_.first_seen_[a], tx.timestamp);
            }
        }
    }

    std::string path_;
    LedgerStore store_;
    std::unordered_map<std::string, std::size_t> txid_lines_;
};

LedgerStore LedgerStore::ingest(const std::string& path) {
    return LedgerBuilder(path).run();
}

const Transaction* LedgerStore::find_tx(std::string_view txid) const {
    auto it = tx_index_.find(std::string(txid));
    return it == tx_index_.end() ? nullptr : &txs_[it->second];
}

std::optional<AddrId> LedgerStore::find_addr(std::string_view name) const {
    auto it = addr_ids_.find(std::string(name));
    if (it == addr_ids_.end()) return std::nullopt;
    return it->second;
}

std::span<const LedgerStore::Occurrence> LedgerStore::occurrences(AddrId id) const {
    return {occ_.data() + occ_off_[id], occ_.data() + occ_off_[id + 1]};
}

std::optional<std::int64_t> LedgerStore::first_seen(std::string_view addr) const {
    auto id = find_addr(addr);
    if (!id) return std::nullopt;
    return first_seen_[*id];
}

void LedgerStore::dump_index(std::ostream& os) const {
    for (AddrId id : by_lex_) {
        os << addr_names_[id] << ' ' << first_seen_[id] << '\n';
        for (const auto& occ : occurrences(id))
            os << "  " << txs_[occ.tx].txid << ' ' << (occ.is_input ? "in" : "out") << '\n';
    }
}

} // namespace flowtrace
