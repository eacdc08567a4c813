#include "flowtrace/money.hpp"

#include <cstdio>

namespace flowtrace {

namespace {

using u128 = unsigned __int128;

std::uint64_t div_half_even_u128(u128 n, u128 d) {
    u128 q = n / d;
    u128 r = n % d;
    u128 twice = r * 2;
    if (twice > d || (twice == d && (q & 1)))
        ++q;
    return static_cast<std::uint64_t>(q);
}

} // namespace

std::uint64_t mul_div_half_even(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
    return div_half_even_u128(static_cast<u128>(a) * b, q);
}

unsigned __int128 div_half_even_wide(unsigned __int128 n, unsigned __int128 d) {
    u128 q = n / d;
    u128 r = n % d;
    u128 twice = r * 2;
    if (twice > d || (twice == d && (q & 1)))
        ++q;
    return q;
}

Cents usd_cents(Sat amount, Cents rate_cents) {
    return static_cast<Cents>(mul_div_half_even(amount, static_cast<std::uint64_t>(rate_cents), kSatPerBtc));
}

namespace {

std::string format_hundredths(std::int64_t hundredths) {
    bool neg = hundredths < 0;
    std::uint64_t v = neg ? static_cast<std::uint64_t>(-(hundredths + 1)) + 1
                          : static_cast<std::uint64_t>(hundredths);
    char buf[40];
    std::snprintf(buf, sizeof buf, "%s%llu.%02llu", neg ? "-" : "",
                  static_cast<unsigned long long>(v / 100),
                  static_cast<unsigned long long>(v % 100));
    return buf;
}

} // namespace

std::string format_btc_2dp(Sat amount) {
    // satoshi -> hundredths of BTC, half-even
    std::uint64_t hundredths = mul_div_half_even(amount, 1, kSatPerBtc / 100);
    return format_hundredths(static_cast<std::int64_t>(hundredths));
}

std::string format_cents_2dp(Cents amount) {
    return format_hundredths(amount);
}

std::string format_usd_whole(Cents amount) {
    bool neg = amount < 0;
    std::uint64_t v = neg ? static_cast<std::uint64_t>(-(amount + 1)) + 1
                          : static_cast<std::uint64_t>(amount);
    std::uint64_t dollars = div_half_even_u128(v, 100);
    return (neg && dollars) ? "-" + std::to_string(dollars) : std::to_string(dollars);
}

std::optional<std::int64_t> parse_scaled_decimal(std::string_view s, int scale) {
    if (s.empty() || scale < 0) return std::nullopt;
    std::string_view ip = s, fp;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        ip = s.substr(0, dot);
        fp = s.substr(dot + 1);
        if (fp.empty()) return std::nullopt;
    }
    if (ip.empty() || static_cast<int>(fp.size()) > scale) return std::nullopt;
    std::int64_t value = 0;
    auto accumulate = [&value](std::string_view digits) -> bool {
        for (char c : digits) {
            if (c < '0' || c > '9') return false;
            if (value > (INT64_MAX - (c - '0')) / 10) return false;  // overflow
            value = value * 10 + (c - '0');
        }
        return true;
    };
    if (!accumulate(ip)) return std::nullopt;
    if (!accumulate(fp)) return std::nullopt;
    for (int i = static_cast<int>(fp.size()); i < scale; ++i) {
        if (value > INT64_MAX / 10) return std::nullopt;
        value *= 10;
    }
    return value;
}

} // namespace flowtrace
