#include "flowtrace/dates.hpp"

#include <cstdio>

namespace flowtrace {

std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);                   // [0, 399]
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;         // [0, 365]
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;                  // [0, 146096]
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

CivilDate civil_from_days(std::int64_t z) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);                // [0, 146096]
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;  // [0, 399]
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);                // [0, 365]
    const unsigned mp = (5 * doy + 2) / 153;                                     // [0, 11]
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;                             // [1, 31]
    const unsigned m = mp + (mp < 10 ? 3 : -9);                                  // [1, 12]
    return CivilDate{static_cast<int>(y + (m <= 2)), m, d};
}

std::int64_t day_of_epoch_seconds(std::int64_t t) {
    std::int64_t d = t / kSecondsPerDay;
    if (t % kSecondsPerDay < 0) --d;
    return d;
}

CivilDate civil_of_epoch_seconds(std::int64_t t) {
    return civil_from_days(day_of_epoch_seconds(t));
}

std::int64_t month_start_seconds(YearMonth ym) {
    return days_from_civil(ym.year, ym.month, 1) * kSecondsPerDay;
}

std::int64_t week_start_day(std::int64_t day) {
    // 1970-01-01 was a Thursday; shift so Monday == 0.
    std::int64_t wd = (day + 3) % 7;
    if (wd < 0) wd += 7;
    return day - wd;
}

std::int64_t month_start_day(std::int64_t day) {
    CivilDate c = civil_from_days(day);
    return days_from_civil(c.year, c.month, 1);
}

std::string format_date(CivilDate d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", d.year, d.month, d.day);
    return buf;
}

std::string format_month(YearMonth ym) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u", ym.year, ym.month);
    return buf;
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

unsigned days_in_month(int y, unsigned m) {
    static const unsigned lens[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2) {
        bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
        return leap ? 29 : 28;
    }
    return lens[m - 1];
}

} // namespace

std::optional<CivilDate> parse_date(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
    auto ys = s.substr(0, 4), ms = s.substr(5, 2), ds = s.substr(8, 2);
    if (!all_digits(ys) || !all_digits(ms) || !all_digits(ds)) return std::nullopt;
    CivilDate d;
    d.year = std::stoi(std::string(ys));
    d.month = static_cast<unsigned>(std::stoi(std::string(ms)));
    d.day = static_cast<unsigned>(std::stoi(std::string(ds)));
    if (d.month < 1 || d.month > 12) return std::nullopt;
    if (d.day < 1 || d.day > days_in_month(d.year, d.month)) return std::nullopt;
    return d;
}

std::optional<YearMonth> parse_month(std::string_view s) {
    if (s.size() != 7 || s[4] != '-') return std::nullopt;
    auto ys = s.substr(0, 4), ms = s.substr(5, 2);
    if (!all_digits(ys) || !all_digits(ms)) return std::nullopt;
    YearMonth ym;
    ym.year = std::stoi(std::string(ys));
    ym.month = static_cast<unsigned>(std::stoi(std::string(ms)));
    if (ym.month < 1 || ym.month > 12) return std::nullopt;
    return ym;
}

} // namespace flowtrace
