#include "flowtrace/attribution.hpp"

#include <algorithm>
#include <ostream>
#include <set>

#include "flowtrace/csv.hpp"
#include "flowtrace/error.hpp"

namespace flowtrace {

std::string_view category_name(TagCategory c) {
    switch (c) {
        case TagCategory::Exchange: return "exchange";
        case TagCategory::Gambling: return "gambling";
        case TagCategory::Mixer: return "mixer";
        case TagCategory::Other: return "other";
    }
    return "other";
}

TagLoad load_tags(const std::string& path) {
    auto rows = read_csv(path, {"address", "label", "category", "source"});
    TagLoad out;
    out.tags.reserve(rows.size());
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& row : rows) {
        const std::string& addr = row.fields[0];
        const std::string& label = row.fields[1];
        const std::string& cat = row.fields[2];
        if (addr.empty())
            fail_input(path + ":" + std::to_string(row.line) + ": empty address in tag row");
        if (label.empty())
            fail_input(path + ":" + std::to_string(row.line) + ": empty label in tag row");
        if (!seen.emplace(addr, label).second) continue;

        Tag t;
        t.address = addr;
        t.label = label;
        t.source = row.fields[3];
        if (cat == "exchange")
            t.category = TagCategory::Exchange;
        else if (cat == "gambling")
            t.category = TagCategory::Gambling;
        else if (cat == "mixer")
            t.category = TagCategory::Mixer;
        else if (cat == "other")
            t.category = TagCategory::Other;
        else {
            t.category = TagCategory::Other;
            out.warnings.push_back(path + ":" + std::to_string(row.line) +
                                   ": unknown tag category '" + cat + "' mapped to other");
        }
        out.tags.push_back(std::move(t));
    }
    return out;
}

std::span<const Tag> ClusterAttribution::tags(AddrId rep) const {
    auto it = by_cluster_.find(rep);
    if (it == by_cluster_.end()) return {};
    return it->second;
}

void ClusterAttribution::dump_orphans_csv(std::ostream& os) const {
    os << "address,label,reason\n";
    for (const auto& o : orphans_)
        write_csv_row(os, {o.address, o.label, o.reason});
}

ClusterAttribution attribute_clusters(std::span<const Tag> tags, const Partition& partition,
                                      const LedgerStore& store) {
    ClusterAttribution attr;
    for (const auto& t : tags) {
        auto id = store.find_addr(t.address);
        if (!id) {
            attr.orphans_.push_back({t.address, t.label, "address not in ledger"});
            continue;
        }
        attr.by_cluster_[partition.rep(*id)].push_back(t);
    }
    for (auto& [rep, list] : attr.by_cluster_) {
        std::sort(list.begin(), list.end(), [](const Tag& a, const Tag& b) {
            if (a.label != b.label) return a.label < b.label;
            return a.address < b.address;
        });
    }
    std::sort(attr.orphans_.begin(), attr.orphans_.end(),
              [](const OrphanTag& a, const OrphanTag& b) {
                  if (a.address != b.address) return a.address < b.address;
                  return a.label < b.label;
              });
    return attr;
}

} // namespace flowtrace
