#include "flowtrace/campaign.hpp"

#include <map>
#include <set>

#include "flowtrace/csv.hpp"
#include "flowtrace/error.hpp"

namespace flowtrace {

std::vector<SeedGroup> load_seeds(const std::string& path) {
    auto rows = read_csv(path, {"family", "address", "source"});
    std::map<std::string, SeedGroup> groups;
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& row : rows) {
        const std::string& family = row.fields[0];
        const std::string& addr = row.fields[1];
        if (family.empty())
            fail_input(path + ":" + std::to_string(row.line) + ": empty family in seed row");
        if (addr.empty())
            fail_input(path + ":" + std::to_string(row.line) + ": empty address in seed row");
        if (!seen.emplace(family, addr).second) continue;
        SeedGroup& g = groups[family];
        g.family = family;
        g.seeds.push_back({family, addr, row.fields[2]});
    }
    std::vector<SeedGroup> out;
    out.reserve(groups.size());
    for (auto& [name, g] : groups) out.push_back(std::move(g));
    return out;
}

FamilyCampaign expand(const SeedGroup& group, const Partition& partition,
                      const LedgerStore& store) {
    FamilyCampaign c;
    c.family = group.family;

    for (const auto& s : group.seeds) {
        auto id = store.find_addr(s.address);
        if (id)
            c.seeds.push_back(*id);
        else
            c.dropped_seeds.push_back(s.address);
    }
    std::sort(c.dropped_seeds.begin(), c.dropped_seeds.end());
    std::sort(c.seeds.begin(), c.seeds.end());
    c.seeds.erase(std::unique(c.seeds.begin(), c.seeds.end()), c.seeds.end());

    std::vector<AddrId> reps;
    reps.reserve(c.seeds.size());
    for (AddrId s : c.seeds) reps.push_back(partition.rep(s));
    std::sort(reps.begin(), reps.end());
    reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
    c.clusters_touched = reps.size();

    for (AddrId rep : reps) {
        auto m = partition.members(rep);
        c.expanded.insert(c.expanded.end(), m.begin(), m.end());
    }
    std::sort(c.expanded.begin(), c.expanded.end());
    c.expanded_tf = c.expanded;
    return c;
}

void time_filter(FamilyCampaign& campaign, std::optional<YearMonth> start_date,
                 const LedgerStore& store) {
    campaign.start_date = start_date;
    if (!start_date) {
        campaign.expanded_tf = campaign.expanded;
        campaign.time_filtered = false;
        return;
    }
    const std::int64_t cut = month_start_seconds(*start_date);
    campaign.expanded_tf.clear();
    for (AddrId a : campaign.expanded) {
        if (campaign.is_seed(a) || store.first_seen(a) >= cut)
            campaign.expanded_tf.push_back(a);
    }
    campaign.time_filtered = true;
}

} // namespace flowtrace
