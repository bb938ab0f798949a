#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "gfpe/bigint.hpp"
#include "gfpe/format.hpp"

namespace gfpe {

struct Rank {
   BigInt value;
   BigInt domain_size;
};

// Index of text in the format's canonical order: the first unit is least
// significant. Throws Error(NotInFormat).
Rank rank(const Format& format, std::string_view text);

// Throws Error(RankOutOfRange) unless 0 <= r < size.
std::string unrank(const Format& format, const BigInt& r);

// Area/group/serial layout of a social security number. A number is valid
// when 0 < area < area_limit, area != excluded_area, group != 0, serial != 0.
struct SsnRules {
   unsigned area_digits = 3;
   unsigned group_digits = 2;
   unsigned serial_digits = 4;
   std::uint64_t area_limit = 900;
   std::uint64_t excluded_area = 666;

   std::uint64_t modulus() const noexcept;  // 10^(total digits)
   std::uint64_t valid_count() const noexcept;
   bool valid(std::uint64_t n) const noexcept;
};

inline constexpr SsnRules us_ssn_rules{};

// Closed form, for 0 <= n <= modulus.
std::uint64_t count_valid_ssn_below(std::uint64_t n, const SsnRules& rules = us_ssn_rules);
std::uint64_t count_invalid_ssn_below(std::uint64_t n, const SsnRules& rules = us_ssn_rules);

std::uint64_t ssn_rank(std::uint64_t ssn, const SsnRules& rules = us_ssn_rules);
// Smallest s with count_valid_ssn_below(s + 1) > r.
std::uint64_t ssn_unrank(std::uint64_t r, const SsnRules& rules = us_ssn_rules);

// Check digit for a 15-digit card prefix. Throws BadLength / NonDigit.
int luhn_digit(std::string_view digits);

// Units (days or seconds) from minD to d. Throws Error(OutOfRange) if d < minD.
std::int64_t date_offset(const CivilDateTime& min, const CivilDateTime& d, Granularity g);
CivilDateTime offset_to_date(const CivilDateTime& min, std::int64_t r, Granularity g);

}  // namespace gfpe
