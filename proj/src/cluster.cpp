#include "flowtrace/cluster.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <unordered_map>

#include "flowtrace/union_find.hpp"

namespace flowtrace {

namespace {
constexpr std::uint32_t kNoSlot = std::numeric_limits<std::uint32_t>::max();
}

std::span<const AddrId> Partition::members(AddrId rep) const {
    if (rep >= rep_slot_.size()) return {};
    std::uint32_t slot = rep_slot_[rep];
    if (slot == kNoSlot) return {};
    return {member_.data() + member_off_[slot], member_.data() + member_off_[slot + 1]};
}

void Partition::dump_csv(std::ostream& os, const LedgerStore& store) const {
    os << "address,cluster_rep\n";
    for (AddrId a : store.addrs_by_lex())
        os << store.addr_name(a) << ',' << store.addr_name(rep_[a]) << '\n';
}

Partition compute_partition(const LedgerStore& store) {
    const std::size_t n = store.addr_count();
    UnionFind uf(n);
    std::vector<AddrId> ins;
    for (const auto& tx : store.transactions()) {
        if (tx.coinbase()) continue;
        ins.clear();
        for (const auto& s : tx.inputs) ins.push_back(s.addr);
        std::sort(ins.begin(), ins.end());
        ins.erase(std::unique(ins.begin(), ins.end()), ins.end());
        for (std::size_t i = 1; i < ins.size(); ++i) uf.unite(ins[0], ins[i]);
    }

    Partition p;
    p.rep_.assign(n, 0);
    p.rep_slot_.assign(n, kNoSlot);

    // first pass in lexicographic order pins each root's representative to
    // its smallest member
    std::vector<AddrId> root_rep(n, 0);
    std::vector<bool> root_seen(n, false);
    for (AddrId a : store.addrs_by_lex()) {
        AddrId root = uf.find(a);
        if (!root_seen[root]) {
            root_seen[root] = true;
            root_rep[root] = a;
            p.rep_slot_[a] = static_cast<std::uint32_t>(p.reps_.size());
            p.reps_.push_back(a);
        }
        p.rep_[a] = root_rep[root];
    }

    // bucket members by cluster, preserving lexicographic order within each
    std::vector<std::uint32_t> counts(p.reps_.size(), 0);
    for (AddrId a = 0; a < n; ++a) ++counts[p.rep_slot_[p.rep_[a]]];
    p.member_off_.assign(p.reps_.size() + 1, 0);
    for (std::size_t i = 0; i < counts.size(); ++i)
        p.member_off_[i + 1] = p.member_off_[i] + counts[i];
    p.member_.resize(n);
    std::vector<std::uint32_t> cursor(p.member_off_.begin(), p.member_off_.end() - 1);
    for (AddrId a : store.addrs_by_lex())
        p.member_[cursor[p.rep_slot_[p.rep_[a]]]++] = a;
    return p;
}

Sat ClusterGraph::total_value_sat() const {
    Sat total = 0;
    for (const auto& e : edges_) total += e.value_sat;
    return total;
}

Cents ClusterGraph::total_value_usd() const {
    Cents total = 0;
    for (const auto& e : edges_) total += e.value_usd;
    return total;
}

void ClusterGraph::dump_csv(std::ostream& os, const LedgerStore& store) const {
    os << "src,dst,tx_count,value_sat,value_usd,intra\n";
    for (const auto& e : edges_) {
        os << store.addr_name(e.src_rep) << ',' << store.addr_name(e.dst_rep) << ','
           << e.tx_count << ',' << e.value_sat << ',' << format_cents_2dp(e.value_usd)
           << ',' << (e.intra() ? 1 : 0) << '\n';
    }
}

ClusterGraph build_cluster_graph(const Partition& partition, const AddressGraph& graph,
                                 const LedgerStore& store) {
    struct Acc {
        std::uint64_t tx_count = 0;
        Sat value_sat = 0;
        Cents value_usd = 0;
    };
    std::unordered_map<std::uint64_t, Acc> acc;
    acc.reserve(graph.edge_count());
    for (const auto& e : graph.edges()) {
        AddrId cs = partition.rep(e.src);
        AddrId cd = partition.rep(e.dst);
        Acc& a = acc[(static_cast<std::uint64_t>(cs) << 32) | cd];
        a.tx_count += e.tx_count;
        a.value_sat += e.value_sat;
        a.value_usd += e.value_usd;
    }

    ClusterGraph g;
    g.edges_.reserve(acc.size());
    for (const auto& [key, a] : acc) {
        ClusterEdge e;
        e.src_rep = static_cast<AddrId>(key >> 32);
        e.dst_rep = static_cast<AddrId>(key & 0xffffffffu);
        e.tx_count = a.tx_count;
        e.value_sat = a.value_sat;
        e.value_usd = a.value_usd;
        g.edges_.push_back(e);
    }
    std::sort(g.edges_.begin(), g.edges_.end(), [&store](const ClusterEdge& a, const ClusterEdge& b) {
        if (a.src_rep != b.src_rep) return store.lex_rank(a.src_rep) < store.lex_rank(b.src_rep);
        return store.lex_rank(a.dst_rep) < store.lex_rank(b.dst_rep);
    });
    return g;
}

} // namespace flowtrace
