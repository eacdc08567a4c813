#include "flowtrace/report.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include <json.hpp>

#include "flowtrace/addrgraph.hpp"
#include "flowtrace/attribution.hpp"
#include "flowtrace/campaign.hpp"
#include "flowtrace/cluster.hpp"
#include "flowtrace/csv.hpp"
#include "flowtrace/econ.hpp"
#include "flowtrace/error.hpp"
#include "flowtrace/flows.hpp"
#include "flowtrace/ledger.hpp"
#include "flowtrace/rates.hpp"
#include "flowtrace/testbed.hpp"

namespace flowtrace {

namespace fs = std::filesystem;

std::uint64_t fnv64(std::string_view data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t hash_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail_input("cannot open " + path);
    std::uint64_t h = 1469598103934665603ull;
    char buf[65536];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        std::streamsize n = in.gcount();
        for (std::streamsize i = 0; i < n; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ull;
        }
        if (!in) break;
    }
    return h;
}

namespace {

constexpr unsigned kIngest = 1u << 0;
constexpr unsigned kCluster = 1u << 1;
constexpr unsigned kExpand = 1u << 2;
constexpr unsigned kFlows = 1u << 3;
constexpr unsigned kEcon = 1u << 4;

std::string hex64(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string fmt2(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", x);
    return buf;
}

std::string sanitize_family(const std::string& name) {
    std::string s;
    for (char c : name)
        s += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.')
                 ? c
                 : '_';
    return s.empty() ? "_" : s;
}

struct Stager {
    std::string out_dir;
    bool force = false;
    std::ostream* log = nullptr;

    fs::path stamp_path(const std::string& stage) const {
        return fs::path(out_dir) / ".stamps" / stage;
    }

    bool fresh(const std::string& stage, const std::string& stamp,
               const std::vector<std::string>& outputs) const {
        if (force) return false;
        std::ifstream in(stamp_path(stage));
        std::string prev;
        if (!(in >> prev) || prev != stamp) return false;
        for (const auto& o : outputs)
            if (!fs::exists(fs::path(out_dir) / o)) return false;
        return true;
    }

    void commit(const std::string& stage, const std::string& stamp) const {
        fs::create_directories(fs::path(out_dir) / ".stamps");
        std::ofstream out(stamp_path(stage), std::ios::binary);
        out << stamp << '\n';
    }
};

std::ofstream open_artifact(const std::string& out_dir, const std::string& name) {
    fs::create_directories(out_dir);
    fs::path p = fs::path(out_dir) / name;
    std::ofstream out(p, std::ios::binary);
    if (!out) fail_input("cannot write " + p.string());
    return out;
}

std::string starts_text(const RunConfig& cfg) {
    std::string s;
    for (const auto& [family, ym] : cfg.starts) {
        s += family;
        s += '=';
        s += format_month(ym);
        s += ';';
    }
    return s;
}

// everything the staged commands may need, built lazily exactly once
struct Products {
    const RunConfig* cfg = nullptr;
    std::ostream* log = nullptr;

    std::optional<LedgerStore> store;
    std::optional<RateTable> rates;
    std::optional<AddressGraph> graph;
    std::optional<Partition> partition;
    std::optional<TagLoad> tag_load;
    std::optional<ClusterAttribution> attribution;
    std::optional<std::vector<SeedGroup>> seed_groups;
    std::vector<FamilyCampaign> campaigns;
    bool campaigns_built = false;
    std::vector<OutRelGraph> outrels;
    std::vector<std::vector<KeyAddress>> keys;
    std::vector<ExitSummary> exit_summaries;
    bool flows_built = false;
    std::vector<PaymentSet> payments;
    std::vector<FamilyImpact> impacts;
    bool econ_built = false;

    const LedgerStore& ledger() {
        if (!store) {
            *log << "loading ledger " << cfg->ledger << "\n";
            store = LedgerStore::ingest(cfg->ledger);
            *log << "ledger: " << store->transactions().size() << " transactions, "
                 << store->addr_count() << " addresses\n";
        }
        return *store;
    }

    const RateTable& rate_table() {
        if (!rates) {
            RateLoad load = load_rates(cfg->rates);
            if (!load.gap_days.empty())
                *log << "rates: " << load.gap_days.size() << " day(s) missing inside range, first "
                     << format_date(civil_from_days(load.gap_days.front())) << "\n";
            rates = std::move(load.table);
            rates->enable_interpolation(cfg->interpolate_rates);
        }
        return *rates;
    }

    const AddressGraph& address_graph() {
        if (!graph) graph = build_address_graph(ledger(), rate_table());
        return *graph;
    }

    const Partition& partition_of() {
        if (!partition) partition = compute_partition(ledger());
        return *partition;
    }

    const TagLoad& tags() {
        if (!tag_load) {
            tag_load = load_tags(cfg->tags);
            for (const auto& w : tag_load->warnings) *log << "tags: " << w << "\n";
        }
        return *tag_load;
    }

    const ClusterAttribution& attribution_of() {
        if (!attribution)
            attribution = attribute_clusters(tags().tags, partition_of(), ledger());
        return *attribution;
    }

    const std::vector<SeedGroup>& seeds() {
        if (!seed_groups) seed_groups = load_seeds(cfg->seeds);
        return *seed_groups;
    }

    const std::vector<FamilyCampaign>& campaign_list() {
        if (!campaigns_built) {
            for (const auto& group : seeds()) {
                FamilyCampaign c = expand(group, partition_of(), ledger());
                auto it = cfg->starts.find(group.family);
                if (it == cfg->starts.end()) {
                    *log << "family " << group.family
                         << ": no start date configured, time filter skipped\n";
                    time_filter(c, std::nullopt, ledger());
                } else {
                    time_filter(c, it->second, ledger());
                }
                if (c.seeds.empty())
                    *log << "family " << group.family << ": no seeds observed in ledger\n";
                campaigns.push_back(std::move(c));
            }
            campaigns_built = true;
        }
        return campaigns;
    }

    void build_flows() {
        if (flows_built) return;
        for (const auto& c : campaign_list()) {
            OutRelGraph g = build_outrel(c, address_graph(), ledger());
            std::vector<KeyAddress> k = key_addresses(g, cfg->indegree_mode, ledger());
            ExitSummary es = resolve_exit_points(k, partition_of(), attribution_of());
            outrels.push_back(std::move(g));
            keys.push_back(std::move(k));
            exit_summaries.push_back(es);
        }
        flows_built = true;
    }

    void build_econ() {
        if (econ_built) return;
        build_flows();
        for (std::size_t i = 0; i < campaigns.size(); ++i) {
            PaymentSet set = payment_set(campaigns[i], keys[i], ledger(), rate_table());
            if (set.records.empty())
                *log << "family " << set.family << ": no payment records\n";
            impacts.push_back(family_impact(set));
            payments.push_back(std::move(set));
        }
        econ_built = true;
    }
};

void write_ingest(Products& p) {
    auto out = open_artifact(p.cfg->out_dir, "ledger_index.txt");
    p.ledger().dump_index(out);
}

void write_cluster(Products& p) {
    auto out = open_artifact(p.cfg->out_dir, "partition.csv");
    p.partition_of().dump_csv(out, p.ledger());
}

void write_expand(Products& p) {
    {
        auto out = open_artifact(p.cfg->out_dir, "table2.csv");
        out << "family,seed_addr,clusters,exp_addr,exp_addr_tf\n";
        for (const auto& c : p.campaign_list()) {
            out << c.family << ',' << c.seeds.size() << ',' << c.clusters_touched << ','
                << c.expanded.size() << ',' << c.expanded_tf.size() << '\n';
        }
    }
    {
        auto out = open_artifact(p.cfg->out_dir, "dropped_seeds.csv");
        out << "family,address\n";
        for (const auto& c : p.campaign_list())
            for (const auto& a : c.dropped_seeds) out << c.family << ',' << a << '\n';
    }
}

void write_flows(Products& p) {
    p.build_flows();
    const LedgerStore& store = p.ledger();
    {
        auto out = open_artifact(p.cfg->out_dir, "cluster_graph.csv");
        ClusterGraph cg = build_cluster_graph(p.partition_of(), p.address_graph(), store);
        cg.dump_csv(out, store);
    }
    {
        auto out = open_artifact(p.cfg->out_dir, "table3.csv");
        out << "family,new_key_addr,key_expanded_addr\n";
        for (std::size_t i = 0; i < p.campaigns.size(); ++i) {
            std::size_t expanded = 0;
            for (const auto& k : p.keys[i])
                if (k.was_expanded) ++expanded;
            out << p.campaigns[i].family << ',' << (p.keys[i].size() - expanded) << ','
                << expanded << '\n';
        }
    }
    for (std::size_t i = 0; i < p.campaigns.size(); ++i) {
        auto out = open_artifact(p.cfg->out_dir,
                                 "outrel_" + sanitize_family(p.campaigns[i].family) + ".csv");
        p.outrels[i].dump_csv(out, store);
    }
    {
        auto out = open_artifact(p.cfg->out_dir, "key_addresses.csv");
        out << "family,address,indegree,was_expanded,exit_labels\n";
        for (std::size_t i = 0; i < p.campaigns.size(); ++i) {
            for (const auto& k : p.keys[i]) {
                std::string labels;
                for (const auto& t : k.exit_tags) {
                    if (!labels.empty()) labels += '|';
                    labels += t.label;
                }
                out << p.campaigns[i].family << ',' << store.addr_name(k.addr) << ','
                    << k.indegree << ',' << (k.was_expanded ? 1 : 0) << ','
                    << csv_escape(labels) << '\n';
            }
        }
    }
    {
        std::vector<KeyAddress> all;
        for (const auto& ks : p.keys) all.insert(all.end(), ks.begin(), ks.end());
        IndegreeStats st = indegree_stats(all);
        auto out = open_artifact(p.cfg->out_dir, "indegree_summary.csv");
        out << "key_addresses,mean_indegree,median_indegree,max_indegree\n";
        if (st.count == 0)
            out << "0,,,\n";
        else
            out << st.count << ',' << fmt2(st.mean) << ',' << fmt2(st.median) << ',' << st.max
                << '\n';
    }
    {
        auto out = open_artifact(p.cfg->out_dir, "exit_points.csv");
        out << "family,key_addresses,tagged_keys,tagged_clusters,exchange,gambling,mixer,other\n";
        for (std::size_t i = 0; i < p.campaigns.size(); ++i) {
            const ExitSummary& es = p.exit_summaries[i];
            out << p.campaigns[i].family << ',' << es.key_count << ',' << es.tagged_keys << ','
                << es.tagged_clusters << ','
                << es.category_keys[static_cast<std::size_t>(TagCategory::Exchange)] << ','
                << es.category_keys[static_cast<std::size_t>(TagCategory::Gambling)] << ','
                << es.category_keys[static_cast<std::size_t>(TagCategory::Mixer)] << ','
                << es.category_keys[static_cast<std::size_t>(TagCategory::Other)] << '\n';
        }
    }
    {
        auto links = cross_family_links(p.keys, store);
        auto out = open_artifact(p.cfg->out_dir, "cross_family_links.csv");
        out << "family_a,family_b,shared_address\n";
        for (const auto& l : links)
            for (AddrId a : l.shared)
                out << l.family_a << ',' << l.family_b << ',' << store.addr_name(a) << '\n';
    }
    {
        auto out = open_artifact(p.cfg->out_dir, "orphan_tags.csv");
        p.attribution_of().dump_orphans_csv(out);
    }
}

void write_econ(Products& p, std::ostream* json_echo) {
    p.build_econ();
    ImpactReport report = market_summary(p.impacts);
    {
        auto out = open_artifact(p.cfg->out_dir, "table4.csv");
        out << "family,addresses,btc,usd\n";
        for (const auto& row : report.rows) {
            out << row.impact.family << ',' << row.impact.address_count << ','
                << format_btc_2dp(row.impact.total_sat) << ','
                << format_usd_whole(row.impact.total_usd) << '\n';
        }
    }
    {
        auto out = open_artifact(p.cfg->out_dir, "series.csv");
        out << "family,bucket_start,period_usd,cumulative_usd\n";
        for (const auto& set : p.payments) {
            auto series = cumulative_series(set, p.cfg->bucket);
            for (const auto& pt : series) {
                out << set.family << ',' << format_date(civil_from_days(pt.bucket_start_day))
                    << ',' << format_usd_whole(pt.period_usd) << ','
                    << format_usd_whole(pt.cumulative_usd) << '\n';
            }
        }
    }
    {
        auto out = open_artifact(p.cfg->out_dir, "mean_payments.csv");
        out << "family,payments,mean_usd,standard_error_usd\n";
        for (const auto& set : p.payments) {
            if (set.records.empty()) {
                out << set.family << ",0,,\n";
                continue;
            }
            MeanPayment m = mean_payment(set);
            out << set.family << ',' << m.n << ',' << fmt2(m.mean_usd) << ',';
            if (m.standard_error) out << fmt2(*m.standard_error);
            out << '\n';
        }
    }
    {
        nlohmann::ordered_json j;
        j["market"] = {{"addresses", report.market_addresses},
                       {"btc", format_btc_2dp(report.market_sat)},
                       {"usd", std::stoll(format_usd_whole(report.market_usd))},
                       {"usd_cents", report.market_usd}};
        j["families"] = nlohmann::ordered_json::array();
        for (const auto& row : report.rows) {
            j["families"].push_back({{"name", row.impact.family},
                                     {"addresses", row.impact.address_count},
                                     {"btc", format_btc_2dp(row.impact.total_sat)},
                                     {"usd", std::stoll(format_usd_whole(row.impact.total_usd))},
                                     {"usd_cents", row.impact.total_usd},
                                     {"share", row.share}});
        }
        std::string text = j.dump(2);
        text += '\n';
        auto out = open_artifact(p.cfg->out_dir, "summary.json");
        out << text;
        if (json_echo) *json_echo << text;
    }
}

void run_stages(const RunConfig& cfg, unsigned stages, const RunFlags& flags, std::ostream& log,
                std::ostream* json_echo) {
    if (cfg.ledger.empty()) fail_input("no ledger path configured");
    if ((stages & (kExpand | kFlows | kEcon)) && cfg.seeds.empty())
        fail_input("no seeds path configured");
    if ((stages & (kFlows | kEcon)) && cfg.tags.empty()) fail_input("no tags path configured");
    if ((stages & (kFlows | kEcon)) && cfg.rates.empty()) fail_input("no rates path configured");

    Products p;
    p.cfg = &cfg;
    p.log = &log;
    Stager stager{cfg.out_dir, flags.force, &log};

    const std::string ledger_hash = hex64(hash_file(cfg.ledger));
    std::string seeds_hash, tags_hash, rates_hash;
    if (stages & (kExpand | kFlows | kEcon)) seeds_hash = hex64(hash_file(cfg.seeds));
    if (stages & (kFlows | kEcon)) {
        tags_hash = hex64(hash_file(cfg.tags));
        rates_hash = hex64(hash_file(cfg.rates));
    }
    const std::string starts = starts_text(cfg);
    const std::string mode(indegree_mode_name(cfg.indegree_mode));
    const std::string interp = cfg.interpolate_rates ? "interp" : "exact";

    struct Stage {
        unsigned bit;
        std::string name;
        std::string stamp;
        std::vector<std::string> outputs;
        void (*write)(Products&);
    };

    std::vector<std::string> flow_outputs = {"cluster_graph.csv",    "table3.csv",
                                             "key_addresses.csv",    "indegree_summary.csv",
                                             "exit_points.csv",      "cross_family_links.csv",
                                             "orphan_tags.csv"};
    if (stages & kFlows) {
        // per-family graph dumps are part of the flows stage output set
        for (const auto& group : p.seeds())
            flow_outputs.push_back("outrel_" + sanitize_family(group.family) + ".csv");
    }

    std::vector<Stage> plan;
    if (stages & kIngest)
        plan.push_back({kIngest, "ingest", hex64(fnv64("ingest|" + ledger_hash)),
                        {"ledger_index.txt"}, write_ingest});
    if (stages & kCluster)
        plan.push_back({kCluster, "cluster", hex64(fnv64("cluster|" + ledger_hash)),
                        {"partition.csv"}, write_cluster});
    if (stages & kExpand)
        plan.push_back({kExpand, "expand",
                        hex64(fnv64("expand|" + ledger_hash + "|" + seeds_hash + "|" + starts)),
                        {"table2.csv", "dropped_seeds.csv"}, write_expand});
    if (stages & kFlows)
        plan.push_back({kFlows, "flows",
                        hex64(fnv64("flows|" + ledger_hash + "|" + seeds_hash + "|" + tags_hash +
                                    "|" + rates_hash + "|" + starts + "|" + mode + "|" + interp)),
                        flow_outputs, nullptr});
    if (stages & kEcon)
        plan.push_back({kEcon, "econ",
                        hex64(fnv64("econ|" + ledger_hash + "|" + seeds_hash + "|" + tags_hash +
                                    "|" + rates_hash + "|" + starts + "|" + mode + "|" + interp +
                                    "|" + std::string(bucket_name(cfg.bucket)))),
                        {"table4.csv", "series.csv", "mean_payments.csv", "summary.json"},
                        nullptr});

    bool any_stale = false;
    for (const auto& s : plan)
        if (!stager.fresh(s.name, s.stamp, s.outputs)) any_stale = true;

    if (!any_stale) {
        for (const auto& s : plan) log << "stage " << s.name << ": cached\n";
        if (json_echo) {
            std::ifstream in(fs::path(cfg.out_dir) / "summary.json", std::ios::binary);
            *json_echo << in.rdbuf();
        }
        return;
    }

    for (const auto& s : plan) {
        if (stager.fresh(s.name, s.stamp, s.outputs)) {
            log << "stage " << s.name << ": cached\n";
            if (s.bit == kEcon && json_echo) {
                std::ifstream in(fs::path(cfg.out_dir) / "summary.json", std::ios::binary);
                *json_echo << in.rdbuf();
            }
            continue;
        }
        log << "stage " << s.name << ": running\n";
        if (s.bit == kFlows)
            write_flows(p);
        else if (s.bit == kEcon)
            write_econ(p, json_echo);
        else
            s.write(p);
        stager.commit(s.name, s.stamp);
    }
}

} // namespace

void cmd_ingest(const RunConfig& cfg, const RunFlags& flags, std::ostream& log) {
    run_stages(cfg, kIngest, flags, log, nullptr);
}

void cmd_cluster(const RunConfig& cfg, const RunFlags& flags, std::ostream& log) {
    run_stages(cfg, kCluster, flags, log, nullptr);
}

void cmd_expand(const RunConfig& cfg, const RunFlags& flags, std::ostream& log) {
    run_stages(cfg, kExpand, flags, log, nullptr);
}

void cmd_flows(const RunConfig& cfg, const RunFlags& flags, std::ostream& log) {
    run_stages(cfg, kFlows, flags, log, nullptr);
}

void cmd_econ(const RunConfig& cfg, const RunFlags& flags, std::ostream& log, std::ostream& out) {
    run_stages(cfg, kEcon, flags, log, flags.print_json ? &out : nullptr);
}

void cmd_report(const RunConfig& cfg, const RunFlags& flags, std::ostream& log,
                std::ostream& out) {
    run_stages(cfg, kIngest | kCluster | kExpand | kFlows | kEcon, flags, log,
               flags.print_json ? &out : nullptr);
}

void cmd_synth(const std::string& spec_path, const std::string& out_dir,
               std::optional<std::uint64_t> seed_override, std::ostream& log) {
    WorldSpec spec = parse_world_spec(spec_path);
    if (seed_override) spec.rng_seed = *seed_override;
    GroundTruth truth = generate_world(spec, out_dir);
    log << "synth: " << truth.tx_count << " transactions, " << truth.families.size()
        << " families -> " << out_dir << "\n";
}

} // namespace flowtrace
