// attribution tags and their propagation from addresses to clusters
#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "flowtrace/cluster.hpp"
#include "flowtrace/ledger.hpp"

namespace flowtrace {

enum class TagCategory { Exchange, Gambling, Mixer, Other };

std::string_view category_name(TagCategory c);

struct Tag {
    std::string address;
    std::string label;
    TagCategory category = TagCategory::Other;
    std::string source;
};

struct TagLoad {
    std::vector<Tag> tags;     // deduplicated on (address,label), input order
    std::vector<std::string> warnings;
};

// CSV `address,label,category,source`; unknown categories map to `other`
// with a warning
TagLoad load_tags(const std::string& path);

struct OrphanTag {
    std::string address;
    std::string label;
    std::string reason;
};

// Tags grouped per cluster: a cluster carries the union of its members' tags.
class ClusterAttribution {
public:
    // tags of rep's cluster, ordered by (label, address); empty if untagged
    std::span<const Tag> tags(AddrId rep) const;
    bool tagged(AddrId rep) const { return !tags(rep).empty(); }
    std::size_t tagged_cluster_count() const { return by_cluster_.size(); }
    std::span<const OrphanTag> orphans() const { return orphans_; }

    // CSV `address,label,reason`
    void dump_orphans_csv(std::ostream& os) const;

private:
    friend ClusterAttribution attribute_clusters(std::span<const Tag>, const Partition&,
                                                 const LedgerStore&);
    std::unordered_map<AddrId, std::vector<Tag>> by_cluster_;
    std::vector<OrphanTag> orphans_;
};

// tags on addresses absent from the ledger become orphans, never errors
ClusterAttribution attribute_clusters(std::span<const Tag> tags, const Partition& partition,
                                      const LedgerStore& store);

} // namespace flowtrace
