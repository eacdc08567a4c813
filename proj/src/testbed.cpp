#include "flowtrace/testbed.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include <json.hpp>

#include "flowtrace/error.hpp"
#include "flowtrace/ini.hpp"
#include "flowtrace/rates.hpp"

namespace flowtrace {

namespace {

// rejection-sampled draw in [0, n); std::uniform_int_distribution is not
// bit-reproducible across standard libraries
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

Sat draw_ransom(std::mt19937_64& rng, const RansomDist& d) {
    if (!d.uniform) return d.fixed;
    return d.lo + draw(rng, d.hi - d.lo + 1);
}

std::uint64_t parse_u64(const std::string& v, const std::string& what) {
    try {
        std::size_t pos = 0;
        unsigned long long x = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        fail_input("invalid " + what + ": '" + v + "'");
    }
}

double parse_fraction(const std::string& v, const std::string& what) {
    try {
        std::size_t pos = 0;
        double x = std::stod(v, &pos);
        if (pos != v.size() || x < 0.0 || x > 1.0) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        fail_input("invalid " + what + ": '" + v + "' (expected fraction in [0,1])");
    }
}

std::string fam_addr(std::size_t fi, char role, std::size_t idx) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "1F%zu%c%06zu", fi, role, idx);
    return buf;
}

struct GSlot {
    std::string addr;
    Sat value;
};

struct GTx {
    std::int64_t time = 0;
    std::vector<GSlot> inputs;
    std::vector<GSlot> outputs;
};

void append_slots(std::string& line, const char* key, const std::vector<GSlot>& slots) {
    line += '"';
    line += key;
    line += "\":[";
    bool first = true;
    for (const auto& s : slots) {
        if (!first) line += ',';
        first = false;
        line += "{\"addr\":\"";
        line += s.addr;
        line += "\",\"value\":";
        line += std::to_string(s.value);
        line += '}';
    }
    line += ']';
}

constexpr Sat kNoiseDust = 1000;
constexpr Sat kHold = 1000;  // what early collectors keep back for the exit tx
constexpr Sat kMinRansom = 10000;

} // namespace

WorldSpec parse_world_spec(const std::string& path) {
    IniFile ini = parse_ini(path);
    WorldSpec spec;
    for (const auto& [key, value] : ini.globals) {
        if (key == "seed")
            spec.rng_seed = parse_u64(value, "seed");
        else if (key == "rate_base") {
            auto cents = parse_scaled_decimal(value, 2);
            if (!cents) fail_input(path + ": bad rate_base '" + value + "'");
            spec.rate_base = *cents;
        } else if (key == "shared_hoard")
            spec.shared_hoard = value == "true" || value == "1";
        else
            fail_input(path + ": unknown world key '" + key + "'");
    }
    if (spec.rate_base <= 0) fail_input(path + ": rate_base must be positive");

    for (const auto& [family, section] : ini.sections) {
        CampaignSpec c;
        c.family = family;
        bool have_fixed = false, have_lo = false, have_hi = false, have_start = false;
        for (const auto& [key, value] : section) {
            if (key == "victims")
                c.victims = static_cast<std::uint32_t>(parse_u64(value, "victims"));
            else if (key == "collectors")
                c.collectors = static_cast<std::uint32_t>(parse_u64(value, "collectors"));
            else if (key == "fan_in")
                c.fan_in = static_cast<std::uint32_t>(parse_u64(value, "fan_in"));
            else if (key == "start") {
                auto ym = parse_month(value);
                if (!ym) fail_input(path + ": bad start month '" + value + "' in [" + family + "]");
                c.start = *ym;
                have_start = true;
            } else if (key == "ransom") {
                c.ransom.fixed = parse_u64(value, "ransom");
                have_fixed = true;
            } else if (key == "ransom_min") {
                c.ransom.lo = parse_u64(value, "ransom_min");
                have_lo = true;
            } else if (key == "ransom_max") {
                c.ransom.hi = parse_u64(value, "ransom_max");
                have_hi = true;
            } else if (key == "noise")
                c.noise = parse_fraction(value, "noise");
            else if (key == "exit_exchange")
                c.exit_exchange = parse_fraction(value, "exit_exchange");
            else if (key == "exit_gambling")
                c.exit_gambling = parse_fraction(value, "exit_gambling");
            else if (key == "exit_mixer")
                c.exit_mixer = parse_fraction(value, "exit_mixer");
            else if (key == "seed_count")
                c.seed_count = static_cast<std::uint32_t>(parse_u64(value, "seed_count"));
            else
                fail_input(path + ": unknown campaign key '" + key + "' in [" + family + "]");
        }
        if (!have_start) fail_input(path + ": [" + family + "] missing start month");
        if (have_lo != have_hi)
            fail_input(path + ": [" + family + "] needs both ransom_min and ransom_max");
        if (have_fixed == have_lo)
            fail_input(path + ": [" + family + "] needs either ransom or ransom_min/max");
        c.ransom.uniform = have_lo;
        if (c.ransom.uniform && c.ransom.lo > c.ransom.hi)
            fail_input(path + ": [" + family + "] ransom_min exceeds ransom_max");
        Sat least = c.ransom.uniform ? c.ransom.lo : c.ransom.fixed;
        if (least < kMinRansom)
            fail_input(path + ": [" + family + "] ransom amounts must be at least " +
                       std::to_string(kMinRansom) + " satoshi");
        if (c.victims == 0 || c.collectors == 0 || c.fan_in == 0)
            fail_input(path + ": [" + family + "] victims, collectors and fan_in must be positive");
        if (static_cast<std::uint64_t>(c.collectors) * c.fan_in != c.victims)
            fail_input(path + ": [" + family + "] infeasible spec: victims (" +
                       std::to_string(c.victims) + ") must equal collectors x fan_in (" +
                       std::to_string(c.collectors) + " x " + std::to_string(c.fan_in) + ")");
        if (c.exit_exchange + c.exit_gambling + c.exit_mixer > 1.0 + 1e-9)
            fail_input(path + ": [" + family + "] exit fractions exceed 1");
        if (c.seed_count == 0) c.seed_count = 1;
        if (c.seed_count > c.victims) c.seed_count = c.victims;
        spec.campaigns.push_back(std::move(c));
    }
    if (spec.campaigns.empty()) fail_input(path + ": world spec declares no campaigns");
    return spec;
}

GroundTruth generate_world(const WorldSpec& spec, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);

    std::mt19937_64 rng(spec.rng_seed);
    GroundTruth truth;
    truth.shared_hoard = spec.shared_hoard ? "1XHOARD000000" : "";

    std::vector<GTx> txs;
    struct FamilyPlan {
        const CampaignSpec* spec;
        std::vector<Sat> ransoms;
        std::vector<std::int64_t> ransom_times;
        std::vector<std::string> ransom_addrs;
        std::vector<std::string> collector_addrs;
        std::vector<std::string> noise_addrs;
        std::string float_addr;  // wallet float co-spent in every consolidation
        std::string hoard;
        std::vector<std::pair<std::string, TagCategory>> exits;  // with amounts below
        std::vector<Sat> exit_amounts;
    };
    std::vector<FamilyPlan> plans;

    for (std::size_t fi = 0; fi < spec.campaigns.size(); ++fi) {
        const CampaignSpec& c = spec.campaigns[fi];
        FamilyPlan plan;
        plan.spec = &c;

        const std::int64_t ms = month_start_seconds(c.start);
        const std::uint32_t V = c.victims, C = c.collectors, K = c.fan_in;
        const std::uint32_t nz =
            static_cast<std::uint32_t>(std::llround(c.noise * static_cast<double>(V)));

        for (std::uint32_t i = 0; i < V; ++i) plan.ransoms.push_back(draw_ransom(rng, c.ransom));
        for (std::uint32_t i = 0; i < V; ++i) plan.ransom_addrs.push_back(fam_addr(fi, 'R', i));
        for (std::uint32_t j = 0; j < C; ++j) plan.collector_addrs.push_back(fam_addr(fi, 'C', j));
        for (std::uint32_t q = 0; q < nz; ++q) plan.noise_addrs.push_back(fam_addr(fi, 'N', q));
        plan.float_addr = fam_addr(fi, 'O', 0);
        plan.hoard = spec.shared_hoard ? truth.shared_hoard : fam_addr(fi, 'H', 0);

        // pre-campaign wallet float: one dust balance per planned consolidation
        {
            GTx tx;
            tx.time = ms - 90 * 86400 - 600;
            for (std::uint32_t j = 0; j < C; ++j) tx.outputs.push_back({plan.float_addr, kHold});
            txs.push_back(std::move(tx));
        }

        // pre-campaign noise funding, batched coinbases
        for (std::uint32_t q = 0; q < nz; q += 100) {
            GTx tx;
            tx.time = ms - 90 * 86400 + (q / 100) * 600;
            for (std::uint32_t k = q; k < std::min(nz, q + 100); ++k)
                tx.outputs.push_back({plan.noise_addrs[k], kNoiseDust});
            txs.push_back(std::move(tx));
        }

        // victim funding, batched coinbases from the campaign start on
        for (std::uint32_t i = 0; i < V; i += 100) {
            GTx tx;
            tx.time = ms + (i / 100) * 600;
            for (std::uint32_t k = i; k < std::min(V, i + 100); ++k)
                tx.outputs.push_back({fam_addr(fi, 'V', k), plan.ransoms[k]});
            txs.push_back(std::move(tx));
        }
        const std::int64_t funding_end = ms + ((V + 99) / 100) * 600;

        // ransom payments, one unique ransom address per victim
        const std::int64_t spacing =
            std::max<std::int64_t>(1, std::min<std::int64_t>(3600, 15552000 / V));
        for (std::uint32_t i = 0; i < V; ++i) {
            GTx tx;
            tx.time = funding_end + 3600 + i * spacing;
            tx.inputs.push_back({fam_addr(fi, 'V', i), plan.ransoms[i]});
            tx.outputs.push_back({plan.ransom_addrs[i], plan.ransoms[i]});
            plan.ransom_times.push_back(tx.time);
            txs.push_back(std::move(tx));
        }

        // chained consolidations: batch j, one wallet-float balance, and the
        // previous collector's forwarded balance co-spend into collector j
        Sat carry = 0;
        std::vector<Sat> collector_balance(C, 0);
        for (std::uint32_t j = 0; j < C; ++j) {
            GTx tx;
            tx.time = plan.ransom_times[(j + 1) * K - 1] + 3600;
            Sat total = 0;
            for (std::uint32_t i = j * K; i < (j + 1) * K; ++i) {
                tx.inputs.push_back({plan.ransom_addrs[i], plan.ransoms[i]});
                total += plan.ransoms[i];
            }
            for (std::uint32_t q = j; q < nz; q += C) {
                tx.inputs.push_back({plan.noise_addrs[q], kNoiseDust});
                total += kNoiseDust;
            }
            tx.inputs.push_back({plan.float_addr, kHold});
            total += kHold;
            if (j > 0) {
                tx.inputs.push_back({plan.collector_addrs[j - 1], carry});
                total += carry;
            }
            tx.outputs.push_back({plan.collector_addrs[j], total});
            collector_balance[j] = total;
            carry = j + 1 < C ? total - kHold : total;
            txs.push_back(std::move(tx));
        }

        // exit transaction: every collector co-spends into the exits
        {
            GTx tx;
            tx.time = plan.ransom_times.back() + 2 * 3600;
            Sat total = 0;
            for (std::uint32_t j = 0; j + 1 < C; ++j) {
                tx.inputs.push_back({plan.collector_addrs[j], kHold});
                total += kHold;
            }
            tx.inputs.push_back({plan.collector_addrs[C - 1], collector_balance[C - 1]});
            total += collector_balance[C - 1];

            auto plant_exit = [&](double frac, char role, TagCategory cat) {
                Sat amount = static_cast<Sat>(std::llround(frac * static_cast<double>(total)));
                Sat spent = 0;
                for (Sat a : plan.exit_amounts) spent += a;
                if (amount > total - spent) amount = total - spent;
                if (amount == 0) return;
                std::string addr = fam_addr(fi, role, 0);
                tx.outputs.push_back({addr, amount});
                plan.exits.emplace_back(addr, cat);
                plan.exit_amounts.push_back(amount);
            };
            plant_exit(c.exit_exchange, 'X', TagCategory::Exchange);
            plant_exit(c.exit_gambling, 'G', TagCategory::Gambling);
            plant_exit(c.exit_mixer, 'M', TagCategory::Mixer);
            Sat spent = 0;
            for (Sat a : plan.exit_amounts) spent += a;
            if (total - spent > 0) tx.outputs.push_back({plan.hoard, total - spent});
            txs.push_back(std::move(tx));
        }

        plans.push_back(std::move(plan));
    }

    // one tx per block: heights follow the global timeline
    std::stable_sort(txs.begin(), txs.end(),
                     [](const GTx& a, const GTx& b) { return a.time < b.time; });
    truth.tx_count = txs.size();

    {
        std::ofstream out(fs::path(out_dir) / "ledger.jsonl", std::ios::binary);
        if (!out) fail_input("cannot write " + out_dir + "/ledger.jsonl");
        std::string line;
        char txid[80];
        for (std::size_t i = 0; i < txs.size(); ++i) {
            std::snprintf(txid, sizeof(txid), "%064zx", i + 1);
            line.clear();
            line += "{\"txid\":\"";
            line += txid;
            line += "\",\"height\":";
            line += std::to_string(i + 1);
            line += ",\"time\":";
            line += std::to_string(txs[i].time);
            line += ',';
            append_slots(line, "inputs", txs[i].inputs);
            line += ',';
            append_slots(line, "outputs", txs[i].outputs);
            line += "}\n";
            out << line;
        }
    }

    // daily closes over the covered span, deterministic jitter around base
    RateTable rates;
    {
        std::ofstream out(fs::path(out_dir) / "rates.csv", std::ios::binary);
        if (!out) fail_input("cannot write " + out_dir + "/rates.csv");
        out << "date,close_usd\n";
        const std::int64_t first = day_of_epoch_seconds(txs.front().time) - 1;
        const std::int64_t last = day_of_epoch_seconds(txs.back().time) + 1;
        for (std::int64_t day = first; day <= last; ++day) {
            Cents close = spec.rate_base + static_cast<Cents>(draw(rng, 2001)) - 1000;
            if (close < 1) close = 1;
            rates.set(day, close);
            out << format_date(civil_from_days(day)) << ',' << format_cents_2dp(close) << '\n';
        }
    }

    {
        std::ofstream seeds(fs::path(out_dir) / "seeds.csv", std::ios::binary);
        std::ofstream tags(fs::path(out_dir) / "tags.csv", std::ios::binary);
        if (!seeds || !tags) fail_input("cannot write seed/tag files under " + out_dir);
        seeds << "family,address,source\n";
        tags << "address,label,category,source\n";
        for (std::size_t fi = 0; fi < plans.size(); ++fi) {
            const FamilyPlan& plan = plans[fi];
            for (std::uint32_t s = 0; s < plan.spec->seed_count; ++s)
                seeds << plan.spec->family << ',' << plan.ransom_addrs[s] << ",synthetic\n";
            for (const auto& [addr, cat] : plan.exits) {
                const char* label = cat == TagCategory::Exchange   ? "ExchangeDesk"
                                    : cat == TagCategory::Gambling ? "LuckyDice"
                                                                   : "CoinTumbler";
                tags << addr << ',' << label << ',' << category_name(cat) << ",synthetic\n";
            }
        }
    }

    for (std::size_t fi = 0; fi < plans.size(); ++fi) {
        const FamilyPlan& plan = plans[fi];
        const CampaignSpec& c = *plan.spec;
        GroundTruthFamily f;
        f.name = c.family;
        f.start = c.start;
        f.hoard = plan.hoard;
        for (std::uint32_t s = 0; s < c.seed_count; ++s) f.seeds.push_back(plan.ransom_addrs[s]);

        f.payment_addresses = plan.ransom_addrs;
        std::sort(f.payment_addresses.begin(), f.payment_addresses.end());

        const bool collectors_expanded = c.collectors >= 2;
        f.cluster = plan.ransom_addrs;
        f.cluster.insert(f.cluster.end(), plan.noise_addrs.begin(), plan.noise_addrs.end());
        f.cluster.push_back(plan.float_addr);
        if (collectors_expanded)
            f.cluster.insert(f.cluster.end(), plan.collector_addrs.begin(),
                             plan.collector_addrs.end());
        std::sort(f.cluster.begin(), f.cluster.end());

        f.expanded_tf = plan.ransom_addrs;
        if (collectors_expanded)
            f.expanded_tf.insert(f.expanded_tf.end(), plan.collector_addrs.begin(),
                                 plan.collector_addrs.end());
        std::sort(f.expanded_tf.begin(), f.expanded_tf.end());

        for (std::uint32_t j = 0; j < c.collectors; ++j) {
            std::uint64_t indeg = c.fan_in + (j > 0 ? 1 : 0);
            if (indeg >= 2)
                f.collectors.push_back({plan.collector_addrs[j], indeg, collectors_expanded});
        }
        if (c.collectors >= 2) {
            // exits receive a proportional flow from every collector, so each
            // planted exit node is a key with indegree = collector count
            for (const auto& [addr, cat] : plan.exits)
                f.collectors.push_back({addr, c.collectors, false});
            Sat ransom_total = 0;
            for (Sat r : plan.ransoms) ransom_total += r;
            Sat exit_total = ransom_total +
                             static_cast<Sat>(plan.noise_addrs.size()) * kNoiseDust +
                             static_cast<Sat>(c.collectors) * kHold;
            Sat tagged_total = 0;
            for (Sat a : plan.exit_amounts) tagged_total += a;
            if (exit_total > tagged_total)
                f.collectors.push_back({plan.hoard, c.collectors, false});
        }
        std::sort(f.collectors.begin(), f.collectors.end(),
                  [](const TruthCollector& a, const TruthCollector& b) {
                      return a.address < b.address;
                  });

        for (const auto& [addr, cat] : plan.exits) f.exits.push_back({addr, cat});
        std::sort(f.exits.begin(), f.exits.end(),
                  [](const TruthExit& a, const TruthExit& b) { return a.address < b.address; });

        for (std::uint32_t i = 0; i < c.victims; ++i) {
            f.ransom_total_sat += plan.ransoms[i];
            f.ransom_total_usd += usd_cents(plan.ransoms[i], rates.rate_at(plan.ransom_times[i]));
        }
        truth.families.push_back(std::move(f));
    }

    {
        nlohmann::json j;
        j["tx_count"] = truth.tx_count;
        j["shared_hoard"] = truth.shared_hoard;
        j["families"] = nlohmann::json::array();
        for (const auto& f : truth.families) {
            nlohmann::json jf;
            jf["name"] = f.name;
            jf["start"] = format_month(f.start);
            jf["seeds"] = f.seeds;
            jf["payment_addresses"] = f.payment_addresses;
            jf["cluster"] = f.cluster;
            jf["expanded_tf"] = f.expanded_tf;
            jf["hoard"] = f.hoard;
            jf["ransom_total_sat"] = f.ransom_total_sat;
            jf["ransom_total_usd_cents"] = f.ransom_total_usd;
            jf["collectors"] = nlohmann::json::array();
            for (const auto& k : f.collectors)
                jf["collectors"].push_back({{"address", k.address},
                                            {"indegree", k.indegree},
                                            {"expanded", k.expanded}});
            jf["exits"] = nlohmann::json::array();
            for (const auto& e : f.exits)
                jf["exits"].push_back({{"address", e.address},
                                       {"category", std::string(category_name(e.category))}});
            j["families"].push_back(std::move(jf));
        }
        std::ofstream out(fs::path(out_dir) / "ground_truth.json", std::ios::binary);
        if (!out) fail_input("cannot write " + out_dir + "/ground_truth.json");
        out << j.dump(2) << '\n';
    }

    return truth;
}

GroundTruth load_ground_truth(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail_input("cannot open ground truth: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        fail_input(path + ": " + e.what());
    }
    GroundTruth truth;
    try {
        truth.tx_count = j.at("tx_count").get<std::size_t>();
        truth.shared_hoard = j.at("shared_hoard").get<std::string>();
        for (const auto& jf : j.at("families")) {
            GroundTruthFamily f;
            f.name = jf.at("name").get<std::string>();
            auto ym = parse_month(jf.at("start").get<std::string>());
            if (!ym) fail_input(path + ": bad start month for family " + f.name);
            f.start = *ym;
            f.seeds = jf.at("seeds").get<std::vector<std::string>>();
            f.payment_addresses = jf.at("payment_addresses").get<std::vector<std::string>>();
            f.cluster = jf.at("cluster").get<std::vector<std::string>>();
            f.expanded_tf = jf.at("expanded_tf").get<std::vector<std::string>>();
            f.hoard = jf.at("hoard").get<std::string>();
            f.ransom_total_sat = jf.at("ransom_total_sat").get<Sat>();
            f.ransom_total_usd = jf.at("ransom_total_usd_cents").get<Cents>();
            for (const auto& jk : jf.at("collectors"))
                f.collectors.push_back({jk.at("address").get<std::string>(),
                                        jk.at("indegree").get<std::uint64_t>(),
                                        jk.at("expanded").get<bool>()});
            for (const auto& je : jf.at("exits")) {
                std::string cat = je.at("category").get<std::string>();
                TagCategory tc = cat == "exchange"   ? TagCategory::Exchange
                                 : cat == "gambling" ? TagCategory::Gambling
                                 : cat == "mixer"    ? TagCategory::Mixer
                                                     : TagCategory::Other;
                f.exits.push_back({je.at("address").get<std::string>(), tc});
            }
            truth.families.push_back(std::move(f));
        }
    } catch (const nlohmann::json::exception& e) {
        fail_input(path + ": " + e.what());
    }
    return truth;
}

namespace {
struct SetScores {
    double precision;
    double recall;
};

SetScores set_scores(const std::vector<std::string>& predicted,
                     const std::vector<std::string>& expected) {
    std::size_t hit = 0;
    for (const auto& p : predicted)
        if (std::binary_search(expected.begin(), expected.end(), p)) ++hit;
    SetScores s;
    s.precision = predicted.empty() ? 1.0
                                    : static_cast<double>(hit) /
                                          static_cast<double>(predicted.size());
    s.recall = expected.empty() ? 1.0
                                : static_cast<double>(hit) /
                                      static_cast<double>(expected.size());
    return s;
}
} // namespace

EvalScores evaluate(const GroundTruthFamily& truth, const LedgerStore& store,
                    const Partition& partition, const FamilyCampaign& campaign,
                    std::span<const KeyAddress> keys, const FamilyImpact& impact) {
    if (truth.name != campaign.family || truth.name != impact.family)
        fail_input("ground truth family '" + truth.name + "' does not match pipeline family '" +
                   campaign.family + "'");

    EvalScores s;

    // cluster recovered from the first seed
    std::vector<std::string> pred_cluster;
    if (!campaign.seeds.empty()) {
        AddrId rep = partition.rep(campaign.seeds.front());
        for (AddrId a : partition.members(rep)) pred_cluster.emplace_back(store.addr_name(a));
        std::sort(pred_cluster.begin(), pred_cluster.end());
    }
    SetScores cl = set_scores(pred_cluster, truth.cluster);
    s.cluster_precision = cl.precision;
    s.cluster_recall = cl.recall;

    std::vector<std::string> pred_tf;
    for (AddrId a : campaign.expanded_tf) pred_tf.emplace_back(store.addr_name(a));
    std::sort(pred_tf.begin(), pred_tf.end());
    SetScores ex = set_scores(pred_tf, truth.expanded_tf);
    s.expanded_precision = ex.precision;
    s.expanded_recall = ex.recall;

    std::vector<std::string> pred_keys;
    for (const auto& k : keys) pred_keys.emplace_back(store.addr_name(k.addr));
    std::sort(pred_keys.begin(), pred_keys.end());
    std::vector<std::string> true_keys;
    for (const auto& k : truth.collectors) true_keys.push_back(k.address);
    SetScores ks = set_scores(pred_keys, true_keys);
    s.key_precision = ks.precision;
    s.key_recall = ks.recall;

    s.total_sat_exact = impact.total_sat == truth.ransom_total_sat;
    s.total_usd_exact = impact.total_usd == truth.ransom_total_usd;
    return s;
}

} // namespace flowtrace
