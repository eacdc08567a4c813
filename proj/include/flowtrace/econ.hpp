// financial aggregation: payment records, per-family impact, means with
// standard errors, cumulative series, market summary
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "flowtrace/campaign.hpp"
#include "flowtrace/flows.hpp"
#include "flowtrace/ledger.hpp"
#include "flowtrace/rates.hpp"

namespace flowtrace {

struct PaymentRecord {
    AddrId addr = 0;
    std::string_view txid;  // borrowed from the ledger store
    std::int64_t timestamp = 0;
    Sat amount_sat = 0;     // > 0
    Cents amount_usd = 0;   // valued at receipt date
};

// Payment addresses of one family: expanded_tf minus key addresses that were
// themselves expanded (collectors would double-count forwarded coins).
struct PaymentSet {
    std::string family;
    std::vector<AddrId> addrs;           // ascending by id
    std::vector<PaymentRecord> records;  // ledger (height, txid) order
};

PaymentSet payment_set(const FamilyCampaign& campaign, std::span<const KeyAddress> keys,
                       const LedgerStore& store, const RateTable& rates);

struct FamilyImpact {
    std::string family;
    std::size_t address_count = 0;  // size of the payment set
    std::size_t record_count = 0;
    Sat total_sat = 0;
    Cents total_usd = 0;
};

FamilyImpact family_impact(const PaymentSet& set);

struct MeanPayment {
    double mean_usd = 0.0;
    std::optional<double> standard_error;  // absent when n = 1
    std::size_t n = 0;
};

// throws on an empty record list
MeanPayment mean_payment(const PaymentSet& set);

enum class Bucket { Day, Week, Month };

struct SeriesPoint {
    std::int64_t bucket_start_day = 0;  // days since epoch, UTC
    Cents period_usd = 0;
    Cents cumulative_usd = 0;
};

// gap buckets inside the span are emitted with a zero period value
std::vector<SeriesPoint> cumulative_series(const PaymentSet& set, Bucket bucket);

struct ImpactReport {
    struct Row {
        FamilyImpact impact;
        double share = 0.0;  // of market USD
    };
    std::vector<Row> rows;  // descending by USD, then family ascending
    Sat market_sat = 0;
    Cents market_usd = 0;
    std::size_t market_addresses = 0;
};

ImpactReport market_summary(std::span<const FamilyImpact> impacts);

} // namespace flowtrace
