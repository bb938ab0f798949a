#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "gfpe/format.hpp"

namespace gfpe::detail {

struct FormatNode {
   FormatSpec spec;
   std::vector<Format> children;
   BigInt size;
   CharSet alphabet;
   bool rigid = false;
   bool nullable = false;

   // VarString/DelimVarString: cumulative[i] = members of length < min + i.
   // Range: cumulative[i] = members with fewer than min + i repetitions.
   // Union: offsets. Concat: scalers. Both indexed by part.
   std::vector<BigInt> cumulative;
   std::vector<BigInt> weights;

   // String sets: declared (deduplicated) order.
   std::unordered_map<std::u32string, std::size_t> index;
   std::vector<std::size_t> lengths;  // distinct member lengths, ascending

   // Date: offset of minD from the epoch in the node's granularity.
   std::int64_t min_epoch = 0;

   static Format wrap(std::shared_ptr<const FormatNode> node) { return Format(std::move(node)); }

   template <class T>
   const T& as() const {
      return std::get<T>(spec.node);
   }
};

// Structural cut of a text into sub-format pieces. Pieces exclude
// delimiters. Union yields one piece (the whole text) tagged with its part.
struct Cut {
   std::vector<std::u32string_view> pieces;
   std::vector<std::size_t> index;
   std::size_t repetitions = 0;
};

// nullopt if the text cannot be cut; pieces are not checked for membership.
std::optional<Cut> cut(const FormatNode& node, std::u32string_view text);

bool member(const FormatNode& node, std::u32string_view text);

// Length of the member at the start of text, for rigid primitives only.
std::optional<std::size_t> rigid_prefix(const FormatNode& node, std::u32string_view text);

BigInt rank32(const FormatNode& node, std::u32string_view text);
std::u32string unrank32(const FormatNode& node, const BigInt& rank);

// Calendar helpers, proleptic Gregorian.
bool is_leap(std::int64_t year) noexcept;
int days_in_month(std::int64_t year, int month) noexcept;
bool valid_civil(const CivilDateTime& d) noexcept;
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) noexcept;
CivilDateTime civil_from_days(std::int64_t days) noexcept;
std::int64_t to_epoch(const CivilDateTime& d, Granularity g) noexcept;
CivilDateTime from_epoch(std::int64_t units, Granularity g) noexcept;

std::u32string date_text(const CivilDateTime& d, Granularity g);
std::optional<CivilDateTime> parse_date_text(std::u32string_view text, Granularity g);
std::size_t date_text_length(Granularity g) noexcept;

bool ssn_valid(std::uint64_t n) noexcept;
bool luhn_valid(std::u32string_view digits) noexcept;

std::u32string integral_text(const BigInt& n);
std::optional<BigInt> parse_integral_text(std::u32string_view text);

std::optional<std::uint64_t> parse_digits(std::u32string_view text) noexcept;
// Zero-padded decimal.
std::u32string digits_text(std::uint64_t v, std::size_t width);

}  // namespace gfpe::detail
