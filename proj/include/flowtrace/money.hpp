// Integer money arithmetic. Satoshis everywhere; USD held as integer cents.
// BTC and decimal dollars exist only at formatting boundaries.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace flowtrace {

using Sat = std::uint64_t;    // 1e-8 BTC
using Cents = std::int64_t;   // 1e-2 USD

inline constexpr Sat kSatPerBtc = 100'000'000;

// round(a * b / q) with ties to even, computed exactly in 128-bit.
std::uint64_t mul_div_half_even(std::uint64_t a, std::uint64_t b, std::uint64_t q);

// round(n / d) with ties to even at full 128-bit width.
unsigned __int128 div_half_even_wide(unsigned __int128 n, unsigned __int128 d);

// USD cents for `amount` satoshi at `rate_cents` (cents per BTC), half-even.
Cents usd_cents(Sat amount, Cents rate_cents);

std::string format_btc_2dp(Sat amount);       // "15399.01"
std::string format_cents_2dp(Cents amount);   // "1878696.00"
std::string format_usd_whole(Cents amount);   // "1878696", half-even to dollars

// Parses a non-negative decimal with at most `scale` fractional digits into an
// integer scaled by 10^scale ("431.25", scale 2 -> 43125). Rejects anything else.
std::optional<std::int64_t> parse_scaled_decimal(std::string_view s, int scale);

} // namespace flowtrace
