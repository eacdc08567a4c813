#include "flowtrace/rates.hpp"

#include "flowtrace/csv.hpp"
#include "flowtrace/error.hpp"

namespace flowtrace {

Cents RateTable::rate_on_day(std::int64_t day) const {
    auto it = close_.find(day);
    if (it != close_.end()) return it->second;

    if (interpolate_ && !close_.empty()) {
        auto hi = close_.lower_bound(day);
        if (hi != close_.end() && hi != close_.begin()) {
            auto lo = std::prev(hi);
            // linear between the surrounding closes, half-even on cents
            std::int64_t d0 = lo->first, d1 = hi->first;
            Cents r0 = lo->second, r1 = hi->second;
            std::int64_t num = (day - d0);
            std::int64_t den = (d1 - d0);
            Cents delta;
            if (r1 >= r0)
                delta = static_cast<Cents>(mul_div_half_even(static_cast<std::uint64_t>(r1 - r0),
                                                             static_cast<std::uint64_t>(num),
                                                             static_cast<std::uint64_t>(den)));
            else
                delta = -static_cast<Cents>(mul_div_half_even(static_cast<std::uint64_t>(r0 - r1),
                                                              static_cast<std::uint64_t>(num),
                                                              static_cast<std::uint64_t>(den)));
            return r0 + delta;
        }
    }
    fail_rate("no exchange rate for " + format_date(civil_from_days(day)));
}

Cents RateTable::rate_at(std::int64_t epoch_seconds) const {
    return rate_on_day(day_of_epoch_seconds(epoch_seconds));
}

RateLoad load_rates(const std::string& path) {
    RateLoad out;
    auto rows = read_csv(path, {"date", "close_usd"});
    for (const auto& row : rows) {
        auto where = [&] { return path + ":" + std::to_string(row.line) + ": "; };
        auto date = parse_date(row.fields[0]);
        if (!date) fail_input(where() + "bad date `" + row.fields[0] + "`");
        auto cents = parse_scaled_decimal(row.fields[1], 2);
        if (!cents) fail_input(where() + "bad price `" + row.fields[1] + "`");
        if (*cents <= 0)
            fail_input(where() + "non-positive price `" + row.fields[1] + "`");
        std::int64_t day = days_from_civil(date->year, date->month, date->day);
        if (out.table.days().count(day))
            fail_input(where() + "duplicate date " + row.fields[0]);
        out.table.set(day, *cents);
    }
    if (!out.table.empty()) {
        const auto& days = out.table.days();
        for (std::int64_t d = days.begin()->first; d < days.rbegin()->first; ++d)
            if (!days.count(d)) out.gap_days.push_back(d);
    }
    return out;
}

} // namespace flowtrace
