// payment sets, family impact, mean payments, cumulative series, market summary
#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "flowtrace/econ.hpp"
#include "flowtrace/error.hpp"
#include "flowtrace/flows.hpp"
#include "helpers.hpp"

using namespace flowtrace;
using testutil::TempDir;
using testutil::ingest_lines;
using testutil::rates_for;
using testutil::tx_line;

namespace {

constexpr Sat BTC = 100'000'000;

struct World {
    TempDir dir;
    LedgerStore store;
    RateTable rates;
    AddressGraph graph;
    Partition partition;

    World(const std::vector<std::string>& lines, Cents close = 100 * 100)
        : store(ingest_lines(dir, lines)),
          rates(rates_for(store, close)),
          graph(build_address_graph(store, rates)),
          partition(compute_partition(store)) {}

    FamilyCampaign campaign(const std::string& family,
                            const std::vector<std::string>& seed_addrs) {
        SeedGroup g{family, {}};
        for (const auto& s : seed_addrs) g.seeds.push_back({family, s, "t"});
        return expand(g, partition, store);
    }
};

// hand-built set for the statistics; timestamps in seconds, amounts in cents
PaymentSet make_set(const std::vector<std::pair<std::int64_t, Cents>>& rows) {
    PaymentSet s;
    s.family = "fam";
    for (const auto& [ts, usd] : rows) {
        PaymentRecord r;
        r.timestamp = ts;
        r.amount_sat = 1;
        r.amount_usd = usd;
        s.records.push_back(r);
    }
    return s;
}

} // namespace

TEST_CASE("payment set drops key addresses that were themselves expanded") {
    // three ransom payments, then chained consolidations: c1 joins the family
    // cluster by co-spending with r3, so counting it would double the coins
    World w({
        tx_line(1, 1, 86400, {}, {{"w1", BTC}, {"w2", 2 * BTC}, {"w3", 3 * BTC}}),
        tx_line(2, 2, 86400 * 2, {{"w1", BTC}}, {{"r1", BTC}}),
        tx_line(3, 3, 86400 * 3, {{"w2", 2 * BTC}}, {{"r2", 2 * BTC}}),
        tx_line(4, 4, 86400 * 4, {{"w3", 3 * BTC}}, {{"r3", 3 * BTC}}),
        tx_line(5, 5, 86400 * 5, {{"r1", BTC}, {"r2", 2 * BTC}}, {{"c1", 3 * BTC}}),
        tx_line(6, 6, 86400 * 6, {{"c1", 3 * BTC}, {"r3", 3 * BTC}}, {{"c2", 6 * BTC}}),
    }, 150 * 100);
    FamilyCampaign c = w.campaign("fam", {"r1", "r3"});
    OutRelGraph g = build_outrel(c, w.graph, w.store);
    std::vector<KeyAddress> keys = key_addresses(g, IndegreeMode::DistinctSources, w.store);

    REQUIRE(keys.size() == 2);  // c1 (expanded) and c2 (external)
    PaymentSet set = payment_set(c, keys, w.store, w.rates);

    REQUIRE(set.addrs.size() == 3);
    std::vector<std::string> names;
    for (AddrId a : set.addrs) names.push_back(std::string(w.store.addr_name(a)));
    CHECK(names == std::vector<std::string>{"r1", "r2", "r3"});

    // exactly the expansion minus the expanded keys
    std::size_t expanded_keys = 0;
    for (const auto& k : keys) expanded_keys += k.was_expanded ? 1 : 0;
    CHECK(expanded_keys == 1);
    CHECK(set.addrs.size() == c.expanded_tf.size() - expanded_keys);

    REQUIRE(set.records.size() == 3);
    CHECK(set.records[0].amount_sat == BTC);
    CHECK(set.records[1].amount_sat == 2 * BTC);
    CHECK(set.records[2].amount_sat == 3 * BTC);
    CHECK(set.records[0].timestamp == 86400 * 2);

    FamilyImpact fi = family_impact(set);
    CHECK(fi.family == "fam");
    CHECK(fi.address_count == 3);
    CHECK(fi.record_count == 3);
    CHECK(fi.total_sat == 6 * BTC);
    CHECK(fi.total_usd == 900 * 100);  // $150 + $300 + $450

    MeanPayment m = mean_payment(set);
    CHECK(m.n == 3);
    CHECK(m.mean_usd == doctest::Approx(300.0));
    REQUIRE(m.standard_error.has_value());
    CHECK(*m.standard_error == doctest::Approx(150.0 / std::sqrt(3.0)));
}

TEST_CASE("records are per output slot; change and zero outputs are skipped") {
    World w({
        tx_line(1, 1, 86400, {}, {{"a", 10 * BTC}}),
        tx_line(2, 2, 86400 * 2, {{"a", 10 * BTC}},
                {{"p", 2 * BTC}, {"p", 3 * BTC}, {"a", 4 * BTC}, {"q", 0}, {"b", BTC}}),
    });
    FamilyCampaign c = w.campaign("fam", {"a", "p", "q"});
    PaymentSet set = payment_set(c, {}, w.store, w.rates);

    REQUIRE(set.addrs.size() == 3);  // a, p, q all singleton clusters
    REQUIRE(set.records.size() == 3);
    CHECK(w.store.addr_name(set.records[0].addr) == "a");  // coinbase funding
    CHECK(set.records[0].amount_sat == 10 * BTC);
    // the two p outputs of one tx stay distinct records
    CHECK(w.store.addr_name(set.records[1].addr) == "p");
    CHECK(set.records[1].amount_sat == 2 * BTC);
    CHECK(w.store.addr_name(set.records[2].addr) == "p");
    CHECK(set.records[2].amount_sat == 3 * BTC);
    CHECK(set.records[1].txid == set.records[2].txid);
    // a's 4 BTC came back to an input address (change), q's output is zero
    CHECK(family_impact(set).total_sat == 15 * BTC);
}

TEST_CASE("payments are valued at the day of receipt") {
    TempDir dir;
    LedgerStore store = ingest_lines(dir, {
        tx_line(1, 1, 86400, {}, {{"w", 2 * BTC}}),
        tx_line(2, 2, 86400 + 600, {{"w", BTC}}, {{"r", BTC}}),
        tx_line(3, 3, 2 * 86400 + 60, {{"w", BTC}}, {{"r", BTC}}),
    });
    RateTable rates;
    rates.set(1, 100 * 100);
    rates.set(2, 300 * 100);
    Partition part = compute_partition(store);
    SeedGroup g{"fam", {{"fam", "r", "t"}}};
    FamilyCampaign c = expand(g, part, store);

    PaymentSet set = payment_set(c, {}, store, rates);
    REQUIRE(set.records.size() == 2);
    CHECK(set.records[0].amount_usd == 100 * 100);
    CHECK(set.records[1].amount_usd == 300 * 100);
    CHECK(family_impact(set).total_usd == 400 * 100);

    MeanPayment m = mean_payment(set);
    CHECK(m.mean_usd == doctest::Approx(200.0));
    REQUIRE(m.standard_error.has_value());
    CHECK(*m.standard_error == doctest::Approx(100.0));

    RateTable thin;
    thin.set(1, 100 * 100);  // day 2 uncovered
    try {
        payment_set(c, {}, store, thin);
        FAIL("expected a missing-rate error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::MissingRate);
        CHECK(e.exit_code() == 3);
    }
}

TEST_CASE("mean payment edge cases") {
    PaymentSet one = make_set({{86400, 25 * 100}});
    MeanPayment m1 = mean_payment(one);
    CHECK(m1.n == 1);
    CHECK(m1.mean_usd == doctest::Approx(25.0));
    CHECK(!m1.standard_error.has_value());

    PaymentSet flat = make_set({{86400, 250 * 100}, {86500, 250 * 100}, {86600, 250 * 100}});
    MeanPayment mf = mean_payment(flat);
    CHECK(mf.mean_usd == doctest::Approx(250.0));
    REQUIRE(mf.standard_error.has_value());
    CHECK(*mf.standard_error == doctest::Approx(0.0));

    PaymentSet empty = make_set({});
    CHECK_THROWS_WITH_AS(mean_payment(empty), doctest::Contains("no payment records"), Error);
}

TEST_CASE("daily series zero-fills gaps and accumulates") {
    PaymentSet s = make_set({
        {10 * 86400 + 5, 100 * 100},
        {10 * 86400 + 9000, 20 * 100},  // same day, aggregated
        {13 * 86400 + 100, 50 * 100},
    });
    auto pts = cumulative_series(s, Bucket::Day);
    REQUIRE(pts.size() == 4);
    CHECK(pts[0].bucket_start_day == 10);
    CHECK(pts[0].period_usd == 120 * 100);
    CHECK(pts[1].bucket_start_day == 11);
    CHECK(pts[1].period_usd == 0);
    CHECK(pts[2].period_usd == 0);
    CHECK(pts[3].bucket_start_day == 13);
    CHECK(pts[3].period_usd == 50 * 100);
    CHECK(pts[3].cumulative_usd == 170 * 100);
    CHECK(pts[3].cumulative_usd == family_impact(s).total_usd);

    CHECK(cumulative_series(make_set({}), Bucket::Day).empty());
}

TEST_CASE("weekly buckets start on Monday") {
    // day 4 is Monday 1970-01-05; day 6 falls in the same week
    PaymentSet s = make_set({
        {4 * 86400 + 60, 100 * 100},
        {6 * 86400 + 60, 50 * 100},
        {18 * 86400 + 60, 25 * 100},
    });
    auto pts = cumulative_series(s, Bucket::Week);
    REQUIRE(pts.size() == 3);
    CHECK(pts[0].bucket_start_day == 4);
    CHECK(pts[0].period_usd == 150 * 100);
    CHECK(pts[1].bucket_start_day == 11);
    CHECK(pts[1].period_usd == 0);
    CHECK(pts[2].bucket_start_day == 18);
    CHECK(pts[2].cumulative_usd == 175 * 100);
}

TEST_CASE("monthly buckets cross a year boundary") {
    PaymentSet s = make_set({
        {days_from_civil(2015, 12, 15) * 86400 + 30, 40 * 100},
        {days_from_civil(2016, 2, 3) * 86400 + 30, 10 * 100},
    });
    auto pts = cumulative_series(s, Bucket::Month);
    REQUIRE(pts.size() == 3);
    CHECK(pts[0].bucket_start_day == days_from_civil(2015, 12, 1));
    CHECK(pts[1].bucket_start_day == days_from_civil(2016, 1, 1));
    CHECK(pts[1].period_usd == 0);
    CHECK(pts[2].bucket_start_day == days_from_civil(2016, 2, 1));
    CHECK(pts[2].cumulative_usd == 50 * 100);
}

TEST_CASE("market summary orders by USD and assigns shares") {
    std::vector<FamilyImpact> impacts{
        {"alpha", 5, 7, 10, 100 * 100},
        {"beta", 2, 3, 50, 300 * 100},
        {"gamma", 1, 1, 4, 100 * 100},
    };
    ImpactReport r = market_summary(impacts);
    CHECK(r.market_sat == 64);
    CHECK(r.market_usd == 500 * 100);
    CHECK(r.market_addresses == 8);
    REQUIRE(r.rows.size() == 3);
    CHECK(r.rows[0].impact.family == "beta");
    CHECK(r.rows[1].impact.family == "alpha");  // USD tie broken by name
    CHECK(r.rows[2].impact.family == "gamma");
    CHECK(r.rows[0].share == doctest::Approx(0.6));
    CHECK(r.rows[1].share == doctest::Approx(0.2));
    double total_share = 0.0;
    for (const auto& row : r.rows) total_share += row.share;
    CHECK(total_share == doctest::Approx(1.0));
}

TEST_CASE("market summary degenerate inputs") {
    ImpactReport empty = market_summary({});
    CHECK(empty.rows.empty());
    CHECK(empty.market_usd == 0);

    // all-zero market must not divide by zero
    std::vector<FamilyImpact> zeros{{"a", 1, 0, 0, 0}, {"b", 1, 0, 0, 0}};
    ImpactReport rz = market_summary(zeros);
    CHECK(rz.rows[0].share == 0.0);
    CHECK(rz.rows[1].share == 0.0);
}

namespace {

// random but invariant-respecting ledger: fees stay non-negative, heights
// and timestamps increase, every tx has an output
std::vector<std::string> random_lines(std::mt19937_64& rng, unsigned n_tx, unsigned n_addr) {
    std::vector<std::string> lines;
    std::vector<unsigned> funded;
    std::int64_t t = 86400;
    auto name = [](unsigned k) { return "a" + std::to_string(k); };
    for (unsigned i = 1; i <= n_tx; ++i) {
        t += 300 + static_cast<std::int64_t>(rng() % 600);
        testutil::Slots ins, outs;
        Sat in_total = 0;
        if (i % 6 != 1 && !funded.empty()) {
            unsigned n_in = 1 + rng() % 3;
            std::vector<unsigned> picks;
            for (unsigned k = 0; k < n_in; ++k) picks.push_back(funded[rng() % funded.size()]);
            std::sort(picks.begin(), picks.end());
            picks.erase(std::unique(picks.begin(), picks.end()), picks.end());
            for (unsigned p : picks) {
                Sat v = 1 + rng() % 5000;
                ins.push_back({name(p), v});
                in_total += v;
            }
        } else {
            in_total = 2000 + rng() % 8000;  // coinbase budget
        }
        Sat out_total = in_total - std::min<Sat>(in_total / 4, rng() % 200);
        unsigned n_out = 1 + rng() % 3;
        for (unsigned k = 0; k < n_out; ++k) {
            unsigned a = rng() % n_addr;
            Sat v = k + 1 == n_out ? out_total : rng() % (out_total + 1);
            out_total -= v;
            outs.push_back({name(a), v});
            if (v > 0) funded.push_back(a);
        }
        lines.push_back(tx_line(i, i, t, ins, outs));
    }
    return lines;
}

} // namespace

TEST_CASE("randomized conservation from payment set through series") {
    std::mt19937_64 rng(4242);
    for (int round = 0; round < 8; ++round) {
        World w(random_lines(rng, 150, 24), 431 * 100);
        FamilyCampaign c = w.campaign("fam", {"a3", "a7", "a11"});
        OutRelGraph g = build_outrel(c, w.graph, w.store);
        auto keys = key_addresses(g, IndegreeMode::DistinctSources, w.store);
        PaymentSet set = payment_set(c, keys, w.store, w.rates);

        // the payment set is exactly the expansion minus expanded keys
        std::vector<AddrId> excluded;
        for (const auto& k : keys)
            if (k.was_expanded) excluded.push_back(k.addr);
        std::sort(excluded.begin(), excluded.end());
        std::vector<AddrId> expect;
        std::set_difference(c.expanded_tf.begin(), c.expanded_tf.end(), excluded.begin(),
                            excluded.end(), std::back_inserter(expect));
        CHECK(set.addrs == expect);

        Sat sat_sum = 0;
        Cents usd_sum = 0;
        std::int64_t prev_ts = 0;
        for (const auto& r : set.records) {
            CHECK(std::binary_search(set.addrs.begin(), set.addrs.end(), r.addr));
            CHECK(r.amount_sat > 0);
            CHECK(r.amount_usd == usd_cents(r.amount_sat, 431 * 100));
            CHECK(r.timestamp >= prev_ts);
            prev_ts = r.timestamp;
            sat_sum += r.amount_sat;
            usd_sum += r.amount_usd;
        }
        FamilyImpact fi = family_impact(set);
        CHECK(fi.total_sat == sat_sum);
        CHECK(fi.total_usd == usd_sum);
        CHECK(fi.record_count == set.records.size());

        for (Bucket b : {Bucket::Day, Bucket::Week, Bucket::Month}) {
            auto pts = cumulative_series(set, b);
            CHECK(pts.empty() == set.records.empty());
            Cents running = 0;
            std::int64_t prev_day = -1;
            for (const auto& p : pts) {
                CHECK(p.bucket_start_day > prev_day);
                prev_day = p.bucket_start_day;
                CHECK(p.period_usd >= 0);
                running += p.period_usd;
                CHECK(p.cumulative_usd == running);
            }
            if (!pts.empty()) CHECK(pts.back().cumulative_usd == fi.total_usd);
        }
    }
}
