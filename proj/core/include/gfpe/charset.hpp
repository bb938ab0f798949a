#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gfpe {

// A set of Unicode scalar values stored as sorted, disjoint, non-adjacent
// intervals. The canonical ordering of members is ascending code point, so
// index_of/at form the bijection between the set and [0, size()).
class CharSet {
public:
   struct Interval {
      char32_t lo;
      char32_t hi;  // inclusive
      bool operator==(const Interval&) const = default;
   };

   CharSet() = default;

   static CharSet of(std::u32string_view chars);
   static CharSet range(char32_t lo, char32_t hi);
   static CharSet from_intervals(std::vector<Interval> intervals);

   // Mini-syntax: "a-zA-Z0-9", backslash escapes the next character
   // ("\-", "\\"). Input is UTF-8. Throws Error(BadParameter).
   static CharSet parse(std::string_view text);

   static CharSet digits() { return range(U'0', U'9'); }
   static CharSet lower() { return range(U'a', U'z'); }
   static CharSet upper() { return range(U'A', U'Z'); }

   std::size_t size() const noexcept { return size_; }
   bool empty() const noexcept { return size_ == 0; }
   bool contains(char32_t c) const noexcept { return index_of(c).has_value(); }
   std::optional<std::size_t> index_of(char32_t c) const noexcept;
   char32_t at(std::size_t index) const;

   const std::vector<Interval>& intervals() const noexcept { return intervals_; }

   CharSet united(const CharSet& other) const;
   bool disjoint(const CharSet& other) const noexcept;

   // Canonical mini-syntax: runs of three or more become "x-y".
   std::string to_string() const;

   bool operator==(const CharSet& other) const { return intervals_ == other.intervals_; }

private:
   explicit CharSet(std::vector<Interval> normalized);

   std::vector<Interval> intervals_;
   std::vector<std::size_t> starts_;  // rank of each interval's first member
   std::size_t size_ = 0;
};

}  // namespace gfpe
