#include "flowtrace/flows.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <set>
#include <unordered_map>

namespace flowtrace {

void OutRelGraph::dump_csv(std::ostream& os, const LedgerStore& store) const {
    os << "src,dst,value_sat,src_class,dst_class\n";
    for (const auto& e : edges) {
        os << store.addr_name(e.src) << ',' << store.addr_name(e.dst) << ','
           << e.value_sat << ",expanded," << (e.dst_expanded ? "expanded" : "external")
           << '\n';
    }
}

OutRelGraph build_outrel(const FamilyCampaign& campaign, const AddressGraph& graph,
                         const LedgerStore& store) {
    OutRelGraph g;
    g.family = campaign.family;
    g.expanded_nodes = campaign.expanded_tf;

    for (AddrId src : campaign.expanded_tf) {
        for (const auto& e : graph.out_edges(src)) {
            OutRelGraph::Edge oe;
            oe.src = e.src;
            oe.dst = e.dst;
            oe.tx_count = e.tx_count;
            oe.value_sat = e.value_sat;
            oe.value_usd = e.value_usd;
            oe.dst_expanded = campaign.contains_tf(e.dst);
            g.edges.push_back(oe);
            if (!oe.dst_expanded) g.external_nodes.push_back(e.dst);
        }
    }
    std::sort(g.external_nodes.begin(), g.external_nodes.end());
    g.external_nodes.erase(std::unique(g.external_nodes.begin(), g.external_nodes.end()),
                           g.external_nodes.end());
    std::sort(g.edges.begin(), g.edges.end(),
              [&store](const OutRelGraph::Edge& a, const OutRelGraph::Edge& b) {
                  if (a.src != b.src) return store.lex_rank(a.src) < store.lex_rank(b.src);
                  return store.lex_rank(a.dst) < store.lex_rank(b.dst);
              });
    return g;
}

std::vector<KeyAddress> key_addresses(const OutRelGraph& graph, IndegreeMode mode,
                                      const LedgerStore& store) {
    // edges are unique (src,dst) pairs, so per destination the number of
    // edges is the number of distinct sources
    struct In {
        std::uint64_t sources = 0;
        std::uint64_t txs = 0;
        bool expanded = false;
    };
    std::unordered_map<AddrId, In> in;
    for (const auto& e : graph.edges) {
        In& i = in[e.dst];
        i.sources += 1;
        i.txs += e.tx_count;
        i.expanded = e.dst_expanded;
    }

    std::vector<KeyAddress> keys;
    for (const auto& [dst, i] : in) {
        std::uint64_t deg = mode == IndegreeMode::DistinctSources ? i.sources : i.txs;
        if (deg < 2) continue;
        KeyAddress k;
        k.addr = dst;
        k.family = graph.family;
        k.indegree = deg;
        k.was_expanded = i.expanded;
        keys.push_back(std::move(k));
    }
    std::sort(keys.begin(), keys.end(), [&store](const KeyAddress& a, const KeyAddress& b) {
        if (a.indegree != b.indegree) return a.indegree > b.indegree;
        return store.lex_rank(a.addr) < store.lex_rank(b.addr);
    });
    return keys;
}

IndegreeStats indegree_stats(std::span<const KeyAddress> keys) {
    IndegreeStats s;
    s.count = keys.size();
    if (keys.empty()) return s;

    std::vector<std::uint64_t> degs;
    degs.reserve(keys.size());
    double sum = 0.0;
    for (const auto& k : keys) {
        degs.push_back(k.indegree);
        sum += static_cast<double>(k.indegree);
        s.max = std::max(s.max, k.indegree);
    }
    s.mean = sum / static_cast<double>(degs.size());
    std::sort(degs.begin(), degs.end());
    const std::size_t n = degs.size();
    s.median = n % 2 == 1 ? static_cast<double>(degs[n / 2])
                          : (static_cast<double>(degs[n / 2 - 1]) +
                             static_cast<double>(degs[n / 2])) / 2.0;
    return s;
}

ExitSummary resolve_exit_points(std::vector<KeyAddress>& keys, const Partition& partition,
                                const ClusterAttribution& attribution) {
    ExitSummary s;
    s.key_count = keys.size();
    std::set<AddrId> tagged_reps;
    for (auto& k : keys) {
        AddrId rep = partition.rep(k.addr);
        auto tags = attribution.tags(rep);
        k.exit_tags.assign(tags.begin(), tags.end());
        if (k.exit_tags.empty()) continue;
        s.tagged_keys += 1;
        tagged_reps.insert(rep);
        std::array<bool, 4> seen{};
        for (const auto& t : k.exit_tags) {
            auto c = static_cast<std::size_t>(t.category);
            if (!seen[c]) {
                seen[c] = true;
                s.category_keys[c] += 1;
            }
        }
    }
    s.tagged_clusters = tagged_reps.size();
    return s;
}

std::vector<CrossFamilyLink> cross_family_links(std::span<const std::vector<KeyAddress>> families,
                                                const LedgerStore& store) {
    struct Fam {
        const std::string* name;
        std::vector<AddrId> keys;  // ascending by id
    };
    std::vector<Fam> fams;
    for (const auto& keys : families) {
        if (keys.empty()) continue;
        Fam f;
        f.name = &keys.front().family;
        for (const auto& k : keys) f.keys.push_back(k.addr);
        std::sort(f.keys.begin(), f.keys.end());
        fams.push_back(std::move(f));
    }
    std::sort(fams.begin(), fams.end(),
              [](const Fam& a, const Fam& b) { return *a.name < *b.name; });

    std::vector<CrossFamilyLink> links;
    for (std::size_t i = 0; i < fams.size(); ++i) {
        for (std::size_t j = i + 1; j < fams.size(); ++j) {
            std::vector<AddrId> shared;
            std::set_intersection(fams[i].keys.begin(), fams[i].keys.end(),
                                  fams[j].keys.begin(), fams[j].keys.end(),
                                  std::back_inserter(shared));
            if (shared.empty()) continue;
            std::sort(shared.begin(), shared.end(), [&store](AddrId a, AddrId b) {
                return store.lex_rank(a) < store.lex_rank(b);
            });
            links.push_back({*fams[i].name, *fams[j].name, std::move(shared)});
        }
    }
    return links;
}

} // namespace flowtrace
