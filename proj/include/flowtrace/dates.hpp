// Civil-date arithmetic on UTC epoch time. Days count from 1970-01-01.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace flowtrace {

inline constexpr std::int64_t kSecondsPerDay = 86400;

struct CivilDate {
    int year = 1970;
    unsigned month = 1;  // 1..12
    unsigned day = 1;    // 1..31

    friend bool operator==(const CivilDate&, const CivilDate&) = default;
};

struct YearMonth {
    int year = 1970;
    unsigned month = 1;

    friend bool operator==(const YearMonth&, const YearMonth&) = default;
    friend auto operator<=>(const YearMonth&, const YearMonth&) = default;
};

// Howard Hinnant's civil-from-days / days-from-civil algorithms.
std::int64_t days_from_civil(int y, unsigned m, unsigned d);
CivilDate civil_from_days(std::int64_t z);

// Floor division of epoch seconds into days (works for pre-1970 instants too).
std::int64_t day_of_epoch_seconds(std::int64_t t);
CivilDate civil_of_epoch_seconds(std::int64_t t);

// First UTC instant of a calendar month, as epoch seconds.
std::int64_t month_start_seconds(YearMonth ym);

// Bucket starts, in epoch days.
std::int64_t week_start_day(std::int64_t day);   // Monday-based
std::int64_t month_start_day(std::int64_t day);

std::string format_date(CivilDate d);                 // YYYY-MM-DD
std::string format_month(YearMonth ym);               // YYYY-MM
std::optional<CivilDate> parse_date(std::string_view s);
std::optional<YearMonth> parse_month(std::string_view s);

} // namespace flowtrace
