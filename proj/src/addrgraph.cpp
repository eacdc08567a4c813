#include "flowtrace/addrgraph.hpp"

#include <algorithm>
#include <ostream>

#include "flowtrace/error.hpp"

namespace flowtrace {

namespace {

using u128 = unsigned __int128;
using i128 = __int128;

constexpr std::uint64_t edge_key(AddrId src, AddrId dst) {
    return (static_cast<std::uint64_t>(src) << 32) | dst;
}

// (addr, value) pairs aggregated by address, ordered by lexicographic rank.
std::vector<std::pair<AddrId, Sat>> aggregate_by_addr(std::span<const TxSlot> slots,
                                                      const LedgerStore& store) {
    std::vector<std::pair<AddrId, Sat>> agg;
    agg.reserve(slots.size());
    for (const auto& s : slots) agg.emplace_back(s.addr, s.value);
    std::sort(agg.begin(), agg.end(), [&store](const auto& a, const auto& b) {
        return store.lex_rank(a.first) < store.lex_rank(b.first);
    });
    std::size_t w = 0;
    for (std::size_t r = 0; r < agg.size(); ++r) {
        if (w > 0 && agg[w - 1].first == agg[r].first)
            agg[w - 1].second += agg[r].second;
        else
            agg[w++] = agg[r];
    }
    agg.resize(w);
    return agg;
}

} // namespace

void AddressGraphBuilder::add_transaction(const Transaction& tx) {
    if (tx.coinbase()) return;

    auto inputs = aggregate_by_addr(tx.inputs, *store_);
    auto outputs = aggregate_by_addr(tx.outputs, *store_);

    // drop explicit change: outputs whose address is also spent by this tx
    std::erase_if(outputs, [&inputs](const auto& out) {
        return std::any_of(inputs.begin(), inputs.end(),
                           [&out](const auto& in) { return in.first == out.first; });
    });
    if (outputs.empty()) return;

    u128 total_in = 0;
    for (const auto& [addr, value] : inputs) total_in += value;
    u128 target = 0;
    for (const auto& [addr, value] : outputs) target += value;

    // flows ordered (dst, src) lexicographically; the residual walk below
    // relies on the smallest output address coming first
    struct Flow {
        AddrId src, dst;
        Sat sat;
    };
    std::vector<Flow> flows;
    flows.reserve(inputs.size() * outputs.size());
    u128 rounded_total = 0;
    for (const auto& [dst, out_value] : outputs) {
        for (const auto& [src, in_value] : inputs) {
            Sat f = 0;
            if (total_in > 0)
                f = static_cast<Sat>(div_half_even_wide(static_cast<u128>(out_value) * in_value, total_in));
            rounded_total += f;
            flows.push_back({src, dst, f});
        }
    }

    i128 residual = static_cast<i128>(target) - static_cast<i128>(rounded_total);
    if (residual > 0) {
        flows.front().sat += static_cast<Sat>(residual);
    } else if (residual < 0) {
        u128 owe = static_cast<u128>(-residual);
        for (auto& f : flows) {
            Sat take = f.sat < owe ? f.sat : static_cast<Sat>(owe);
            f.sat -= take;
            owe -= take;
            if (owe == 0) break;
        }
    }

    Cents rate = rates_->rate_at(tx.timestamp);
    for (const auto& f : flows) {
        Acc& acc = acc_[edge_key(f.src, f.dst)];
        acc.tx_count += 1;
        acc.value_sat += f.sat;
        acc.value_usd += usd_cents(f.sat, rate);
    }
}

void AddressGraphBuilder::merge(AddressGraphBuilder&& other) {
    for (auto& [key, acc] : other.acc_) {
        Acc& mine = acc_[key];
        mine.tx_count += acc.tx_count;
        mine.value_sat += acc.value_sat;
        mine.value_usd += acc.value_usd;
    }
    other.acc_.clear();
}

AddressGraph AddressGraphBuilder::build() && {
    AddressGraph g;
    g.edges_.reserve(acc_.size());
    for (const auto& [key, acc] : acc_) {
        AddressEdge e;
        e.src = static_cast<AddrId>(key >> 32);
        e.dst = static_cast<AddrId>(key & 0xffffffffu);
        e.tx_count = acc.tx_count;
        e.value_sat = acc.value_sat;
        e.value_usd = acc.value_usd;
        g.edges_.push_back(e);
    }
    const LedgerStore& store = *store_;
    std::sort(g.edges_.begin(), g.edges_.end(), [&store](const AddressEdge& a, const AddressEdge& b) {
        if (a.src != b.src) return store.lex_rank(a.src) < store.lex_rank(b.src);
        return store.lex_rank(a.dst) < store.lex_rank(b.dst);
    });

    const std::size_t n = store.addr_count();
    g.out_begin_.assign(n, 0);
    g.out_end_.assign(n, 0);
    for (std::size_t i = 0; i < g.edges_.size(); ++i) {
        AddrId s = g.edges_[i].src;
        if (g.out_end_[s] == 0) g.out_begin_[s] = static_cast<std::uint32_t>(i);
        g.out_end_[s] = static_cast<std::uint32_t>(i + 1);
    }

    g.in_ids_.resize(g.edges_.size());
    for (std::size_t i = 0; i < g.in_ids_.size(); ++i)
        g.in_ids_[i] = static_cast<std::uint32_t>(i);
    std::sort(g.in_ids_.begin(), g.in_ids_.end(), [&g, &store](std::uint32_t a, std::uint32_t b) {
        const AddressEdge& x = g.edges_[a];
        const AddressEdge& y = g.edges_[b];
        if (x.dst != y.dst) return store.lex_rank(x.dst) < store.lex_rank(y.dst);
        return store.lex_rank(x.src) < store.lex_rank(y.src);
    });
    g.in_begin_.assign(n, 0);
    g.in_end_.assign(n, 0);
    for (std::size_t i = 0; i < g.in_ids_.size(); ++i) {
        AddrId d = g.edges_[g.in_ids_[i]].dst;
        if (g.in_end_[d] == 0) g.in_begin_[d] = static_cast<std::uint32_t>(i);
        g.in_end_[d] = static_cast<std::uint32_t>(i + 1);
    }
    return g;
}

std::span<const std::uint32_t> AddressGraph::in_edge_ids(AddrId dst) const {
    if (dst >= in_begin_.size() || in_end_[dst] == 0) return {};
    return {in_ids_.data() + in_begin_[dst], in_ids_.data() + in_end_[dst]};
}

std::span<const AddressEdge> AddressGraph::out_edges(AddrId src) const {
    if (src >= out_begin_.size() || out_end_[src] == 0) return {};
    return {edges_.data() + out_begin_[src], edges_.data() + out_end_[src]};
}

Sat AddressGraph::total_value_sat() const {
    Sat total = 0;
    for (const auto& e : edges_) total += e.value_sat;
    return total;
}

Cents AddressGraph::total_value_usd() const {
    Cents total = 0;
    for (const auto& e : edges_) total += e.value_usd;
    return total;
}

void AddressGraph::dump_csv(std::ostream& os, const LedgerStore& store) const {
    os << "src,dst,tx_count,value_sat,value_usd\n";
    for (const auto& e : edges_) {
        os << store.addr_name(e.src) << ',' << store.addr_name(e.dst) << ','
           << e.tx_count << ',' << e.value_sat << ',' << format_cents_2dp(e.value_usd) << '\n';
    }
}

AddressGraph build_address_graph(const LedgerStore& store, const RateTable& rates) {
    AddressGraphBuilder b(store, rates);
    for (const auto& tx : store.transactions()) b.add_transaction(tx);
    return std::move(b).build();
}

} // namespace flowtrace
