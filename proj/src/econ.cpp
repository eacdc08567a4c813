#include "flowtrace/econ.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "flowtrace/dates.hpp"
#include "flowtrace/error.hpp"

namespace flowtrace {

PaymentSet payment_set(const FamilyCampaign& campaign, std::span<const KeyAddress> keys,
                       const LedgerStore& store, const RateTable& rates) {
    PaymentSet set;
    set.family = campaign.family;

    std::vector<AddrId> excluded;
    for (const auto& k : keys)
        if (k.was_expanded) excluded.push_back(k.addr);
    std::sort(excluded.begin(), excluded.end());

    std::set_difference(campaign.expanded_tf.begin(), campaign.expanded_tf.end(),
                        excluded.begin(), excluded.end(), std::back_inserter(set.addrs));

    // walk transactions touching payment addresses in ledger (height, txid)
    // order so records come out deterministically
    std::vector<std::uint32_t> tx_ids;
    for (AddrId a : set.addrs)
        for (const auto& occ : store.occurrences(a))
            if (!occ.is_input) tx_ids.push_back(occ.tx);
    std::sort(tx_ids.begin(), tx_ids.end());
    tx_ids.erase(std::unique(tx_ids.begin(), tx_ids.end()), tx_ids.end());

    auto txs = store.transactions();
    auto is_payment_addr = [&set](AddrId a) {
        return std::binary_search(set.addrs.begin(), set.addrs.end(), a);
    };
    for (std::uint32_t ti : tx_ids) {
        const Transaction& tx = txs[ti];
        Cents rate = 0;
        bool have_rate = false;
        for (const auto& out : tx.outputs) {
            if (out.value == 0 || !is_payment_addr(out.addr)) continue;
            // an output returned to one of the tx's own input addresses is
            // explicit change, not a received payment
            bool change = std::any_of(tx.inputs.begin(), tx.inputs.end(),
                                      [&out](const TxSlot& in) { return in.addr == out.addr; });
            if (change) continue;
            if (!have_rate) {
                rate = rates.rate_at(tx.timestamp);
                have_rate = true;
            }
            PaymentRecord r;
            r.addr = out.addr;
            r.txid = tx.txid;
            r.timestamp = tx.timestamp;
            r.amount_sat = out.value;
            r.amount_usd = usd_cents(out.value, rate);
            set.records.push_back(r);
        }
    }
    return set;
}

FamilyImpact family_impact(const PaymentSet& set) {
    FamilyImpact fi;
    fi.family = set.family;
    fi.address_count = set.addrs.size();
    fi.record_count = set.records.size();
    for (const auto& r : set.records) {
        fi.total_sat += r.amount_sat;
        fi.total_usd += r.amount_usd;
    }
    return fi;
}

MeanPayment mean_payment(const PaymentSet& set) {
    if (set.records.empty())
        fail_invariant("mean payment requested for family '" + set.family +
                       "' with no payment records");
    MeanPayment m;
    m.n = set.records.size();
    double sum = 0.0;
    for (const auto& r : set.records) sum += static_cast<double>(r.amount_usd) / 100.0;
    m.mean_usd = sum / static_cast<double>(m.n);
    if (m.n > 1) {
        double ss = 0.0;
        for (const auto& r : set.records) {
            double d = static_cast<double>(r.amount_usd) / 100.0 - m.mean_usd;
            ss += d * d;
        }
        double sd = std::sqrt(ss / static_cast<double>(m.n - 1));
        m.standard_error = sd / std::sqrt(static_cast<double>(m.n));
    }
    return m;
}

namespace {
std::int64_t bucket_start(std::int64_t ts, Bucket b) {
    std::int64_t day = day_of_epoch_seconds(ts);
    switch (b) {
        case Bucket::Day: return day;
        case Bucket::Week: return week_start_day(day);
        case Bucket::Month: return month_start_day(day);
    }
    return day;
}

std::int64_t next_bucket(std::int64_t day, Bucket b) {
    switch (b) {
        case Bucket::Day: return day + 1;
        case Bucket::Week: return day + 7;
        case Bucket::Month: {
            CivilDate d = civil_from_days(day);
            if (d.month == 12) return days_from_civil(d.year + 1, 1, 1);
            return days_from_civil(d.year, d.month + 1, 1);
        }
    }
    return day + 1;
}
} // namespace

std::vector<SeriesPoint> cumulative_series(const PaymentSet& set, Bucket bucket) {
    std::vector<SeriesPoint> out;
    if (set.records.empty()) return out;

    std::map<std::int64_t, Cents> periods;
    for (const auto& r : set.records) periods[bucket_start(r.timestamp, bucket)] += r.amount_usd;

    Cents cumulative = 0;
    std::int64_t day = periods.begin()->first;
    const std::int64_t last = periods.rbegin()->first;
    while (day <= last) {
        auto it = periods.find(day);
        Cents period = it == periods.end() ? 0 : it->second;
        cumulative += period;
        out.push_back({day, period, cumulative});
        day = next_bucket(day, bucket);
    }
    return out;
}

ImpactReport market_summary(std::span<const FamilyImpact> impacts) {
    ImpactReport r;
    for (const auto& fi : impacts) {
        r.market_sat += fi.total_sat;
        r.market_usd += fi.total_usd;
        r.market_addresses += fi.address_count;
        r.rows.push_back({fi, 0.0});
    }
    std::sort(r.rows.begin(), r.rows.end(), [](const ImpactReport::Row& a, const ImpactReport::Row& b) {
        if (a.impact.total_usd != b.impact.total_usd) return a.impact.total_usd > b.impact.total_usd;
        return a.impact.family < b.impact.family;
    });
    if (r.market_usd > 0) {
        for (auto& row : r.rows)
            row.share = static_cast<double>(row.impact.total_usd) /
                        static_cast<double>(r.market_usd);
    }
    return r;
}

} // namespace flowtrace
