#pragma once

// Straightforward re-implementations used to cross-check the library.
// Deliberately naive: no shared code with core/.

#include <cstdint>
#include <string>
#include <utility>

namespace oracle {

inline bool luhn_ok(const std::string& digits) {
   int sum = 0;
   bool twice = false;
   for(auto it = digits.rbegin(); it != digits.rend(); ++it) {
      if(*it < '0' || *it > '9')
         return false;
      int d = *it - '0';
      if(twice) {
         d *= 2;
         if(d > 9)
            d -= 9;
      }
      sum += d;
      twice = !twice;
   }
   return sum % 10 == 0;
}

inline int luhn_check_digit(const std::string& payload) {
   for(int d = 0; d < 10; ++d)
      if(luhn_ok(payload + char('0' + d)))
         return d;
   return -1;
}

// area/group/serial digit counts, area limit and excluded area
struct SsnLayout {
   int area_digits, group_digits, serial_digits;
   long area_limit, excluded;
};

inline bool ssn_ok(long n, const SsnLayout& l) {
   long serial_mod = 1, group_mod = 1;
   for(int i = 0; i < l.serial_digits; ++i)
      serial_mod *= 10;
   for(int i = 0; i < l.group_digits; ++i)
      group_mod *= 10;
   const long serial = n % serial_mod;
   const long group = (n / serial_mod) % group_mod;
   const long area = n / serial_mod / group_mod;
   return area > 0 && area < l.area_limit && area != l.excluded && group != 0 && serial != 0;
}

inline bool leap(int y) {
   return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
}

inline int month_days(int y, int m) {
   static const int len[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
   return m == 2 && leap(y) ? 29 : len[m - 1];
}

struct Ymd {
   int y, m, d;
   bool operator==(const Ymd&) const = default;
};

inline Ymd next_day(Ymd t) {
   if(++t.d > month_days(t.y, t.m)) {
      t.d = 1;
      if(++t.m > 12) {
         t.m = 1;
         ++t.y;
      }
   }
   return t;
}

// Counts days by stepping; from must not be after to.
inline long days_between(Ymd from, const Ymd& to) {
   long n = 0;
   while(!(from == to)) {
      from = next_day(from);
      ++n;
   }
   return n;
}

// Smallest N' >= N with a divisor pair 1 < a <= b, and its most balanced pair.
struct Split {
   unsigned long a, b, n;
};

inline Split most_balanced_pair(unsigned long n) {
   unsigned long best_a = 0;
   for(unsigned long a = 2; a * a <= n; ++a)
      if(n % a == 0)
         best_a = a;
   return {best_a, best_a ? n / best_a : 0, n};
}

}  // namespace oracle
