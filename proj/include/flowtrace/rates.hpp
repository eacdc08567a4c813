// Daily BTC/USD closing rates keyed by UTC date.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "flowtrace/dates.hpp"
#include "flowtrace/money.hpp"

namespace flowtrace {

class RateTable {
public:
    void set(std::int64_t day, Cents close) { close_[day] = close; }

    // Closing rate (cents per BTC) for the given epoch day. Missing days are
    // fatal unless interpolation is on and the day lies strictly inside the
    // table's range; then the rate is linearly interpolated, half-even.
    Cents rate_on_day(std::int64_t day) const;
    Cents rate_at(std::int64_t epoch_seconds) const;

    void enable_interpolation(bool on) { interpolate_ = on; }
    bool interpolation() const { return interpolate_; }

    std::size_t size() const { return close_.size(); }
    bool empty() const { return close_.empty(); }
    const std::map<std::int64_t, Cents>& days() const { return close_; }

private:
    std::map<std::int64_t, Cents> close_;
    bool interpolate_ = false;
};

struct RateLoad {
    RateTable table;
    std::vector<std::int64_t> gap_days;  // days missing between min and max date
};

// CSV `date,close_usd`, date = YYYY-MM-DD, close_usd a positive decimal with
// at most 2 fractional digits. Duplicate dates and non-positive prices are fatal.
RateLoad load_rates(const std::string& path);

} // namespace flowtrace
