#include "gfpe/rank.hpp"

#include <algorithm>

#include "detail/format_node.hpp"
#include "gfpe/utf8.hpp"

namespace gfpe {

namespace {

std::uint64_t pow10(unsigned k) noexcept {
   std::uint64_t v = 1;
   while(k--) {
      v *= 10;
   }
   return v;
}

}  // namespace

std::uint64_t SsnRules::modulus() const noexcept {
   return pow10(area_digits + group_digits + serial_digits);
}

std::uint64_t SsnRules::valid_count() const noexcept {
   return count_valid_ssn_below(modulus(), *this);
}

bool SsnRules::valid(std::uint64_t n) const noexcept {
   const auto area = n / pow10(group_digits + serial_digits);
   const auto group = n / pow10(serial_digits) % pow10(group_digits);
   const auto serial = n % pow10(serial_digits);
   return n < modulus() && area != 0 && area < area_limit && area != excluded_area && group != 0 && serial != 0;
}

std::uint64_t count_valid_ssn_below(std::uint64_t n, const SsnRules& rules) {
   const auto gs = pow10(rules.group_digits + rules.serial_digits);
   const auto ss = pow10(rules.serial_digits);
   const auto per_area = (pow10(rules.group_digits) - 1) * (ss - 1);
   const auto area = n / gs;
   const auto group = n / ss % pow10(rules.group_digits);
   const auto serial = n % ss;

   // Areas strictly below this one.
   const auto top = std::min<std::uint64_t>(area, rules.area_limit);
   std::uint64_t areas = top > 0 ? top - 1 : 0;
   if(rules.excluded_area > 0 && rules.excluded_area < top) {
      --areas;
   }
   std::uint64_t count = areas * per_area;

   const bool area_ok = area > 0 && area < rules.area_limit && area != rules.excluded_area;
   if(area_ok) {
      count += (group > 0 ? group - 1 : 0) * (ss - 1);
      if(group > 0) {
         count += serial > 0 ? serial - 1 : 0;
      }
   }
   return count;
}

std::uint64_t count_invalid_ssn_below(std::uint64_t n, const SsnRules& rules) {
   return n - count_valid_ssn_below(n, rules);
}

std::uint64_t ssn_rank(std::uint64_t ssn, const SsnRules& rules) {
   if(!rules.valid(ssn)) {
      throw Error(ErrorCode::NotInFormat, "not a valid SSN: " + std::to_string(ssn));
   }
   return ssn - count_invalid_ssn_below(ssn, rules);
}

std::uint64_t ssn_unrank(std::uint64_t r, const SsnRules& rules) {
   if(r >= rules.valid_count()) {
      throw Error(ErrorCode::RankOutOfRange, "SSN rank out of range");
   }
   std::uint64_t lo = 0;
   std::uint64_t hi = rules.modulus() - 1;
   while(lo < hi) {
      const auto mid = lo + (hi - lo) / 2;
      if(count_valid_ssn_below(mid + 1, rules) > r) {
         hi = mid;
      } else {
         lo = mid + 1;
      }
   }
   return lo;
}

int luhn_digit(std::string_view digits) {
   if(digits.size() != 15) {
      throw Error(ErrorCode::BadLength, "Luhn prefix must have 15 digits, got " + std::to_string(digits.size()));
   }
   int sum = 0;
   // The check digit will sit right of the last prefix digit, so doubling
   // starts at the rightmost prefix digit.
   for(std::size_t i = 0; i < 15; ++i) {
      const char c = digits[14 - i];
      if(c < '0' || c > '9') {
         throw Error(ErrorCode::NonDigit, "non-digit in Luhn prefix");
      }
      int v = c - '0';
      if(i % 2 == 0) {
         v = v * 2 > 9 ? v * 2 - 9 : v * 2;
      }
      sum += v;
   }
   return (10 - sum % 10) % 10;
}

std::int64_t date_offset(const CivilDateTime& min, const CivilDateTime& d, Granularity g) {
   if(!detail::valid_civil(min) || !detail::valid_civil(d)) {
      throw Error(ErrorCode::OutOfRange, "invalid calendar date");
   }
   const auto off = detail::to_epoch(d, g) - detail::to_epoch(min, g);
   if(off < 0) {
      throw Error(ErrorCode::OutOfRange, "date precedes minD");
   }
   return off;
}

CivilDateTime offset_to_date(const CivilDateTime& min, std::int64_t r, Granularity g) {
   if(r < 0) {
      throw Error(ErrorCode::OutOfRange, "negative date offset");
   }
   const auto out = detail::from_epoch(detail::to_epoch(min, g) + r, g);
   if(!detail::valid_civil(out)) {
      throw Error(ErrorCode::OutOfRange, "date offset leaves the calendar range");
   }
   return out;
}

namespace detail {

namespace {

// Index of the block holding r in a cumulative table (cumulative[0] = 0).
std::size_t find_block(const std::vector<BigInt>& cumulative, const BigInt& r) {
   const std::size_t blocks = cumulative.size() - 1;
   if(blocks <= 64) {
      std::size_t i = 0;
      while(i + 1 < blocks && cumulative[i + 1] <= r) {
         ++i;
      }
      return i;
   }
   auto it = std::upper_bound(cumulative.begin(), cumulative.end(), r);
   return static_cast<std::size_t>(it - cumulative.begin()) - 1;
}

BigInt sas_rank(const CharSet& alphabet, std::u32string_view text) {
   BigInt r = 0;
   BigInt weight = 1;
   const BigInt n(static_cast<unsigned long>(alphabet.size()));
   for(char32_t c : text) {
      r += weight * static_cast<unsigned long>(*alphabet.index_of(c));
      weight *= n;
   }
   return r;
}

std::u32string sas_unrank(const CharSet& alphabet, std::size_t len, BigInt r) {
   std::u32string out;
   out.reserve(len);
   const BigInt n(static_cast<unsigned long>(alphabet.size()));
   BigInt digit;
   for(std::size_t i = 0; i < len; ++i) {
      mpz_fdiv_qr(r.get_mpz_t(), digit.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
      out.push_back(alphabet.at(digit.get_ui()));
   }
   return out;
}

}  // namespace

std::u32string digits_text(std::uint64_t v, std::size_t width) {
   std::u32string s(width, U'0');
   for(std::size_t i = width; i-- > 0; v /= 10) {
      s[i] = U'0' + static_cast<char32_t>(v % 10);
   }
   return s;
}

BigInt rank32(const FormatNode& node, std::u32string_view text) {
   switch(node.spec.kind()) {
      case NodeKind::ssn: return BigInt(static_cast<unsigned long>(ssn_rank(*parse_digits(text))));
      case NodeKind::ccn: return BigInt(static_cast<unsigned long>(*parse_digits(text.substr(0, 15))));
      case NodeKind::date: {
         const auto& d = node.as<spec::Date>();
         const auto parsed = *parse_date_text(text, d.granularity);
         return BigInt(static_cast<long>(to_epoch(parsed, d.granularity) - node.min_epoch));
      }
      case NodeKind::fixed_string: {
         const auto& sets = node.as<spec::FixedString>().charsets;
         BigInt r = 0;
         BigInt weight = 1;
         for(std::size_t i = 0; i < sets.size(); ++i) {
            r += weight * static_cast<unsigned long>(*sets[i].index_of(text[i]));
            weight *= static_cast<unsigned long>(sets[i].size());
         }
         return r;
      }
      case NodeKind::var_string: {
         const auto& v = node.as<spec::VarString>();
         return node.cumulative[text.size() - v.min] + sas_rank(v.alphabet, text);
      }
      case NodeKind::delim_var_string: {
         const auto& v = node.as<spec::DelimVarString>();
         const auto body = text.substr(0, text.size() - 1);
         return node.cumulative[body.size() - v.min] + sas_rank(v.alphabet, body);
      }
      case NodeKind::string_set:
      case NodeKind::delim_string_set:
         return BigInt(static_cast<unsigned long>(node.index.at(std::u32string(text))));
      case NodeKind::integral:
         return *parse_integral_text(text) - node.as<spec::IntegralDomain>().min;
      case NodeKind::union_of: {
         const auto c = *cut(node, text);
         const auto i = c.index.front();
         return node.weights[i] + rank32(node.children[i].node(), c.pieces.front());
      }
      case NodeKind::concat: {
         const auto c = *cut(node, text);
         BigInt r = 0;
         for(std::size_t i = 0; i < c.pieces.size(); ++i) {
            r += node.weights[i] * rank32(node.children[i].node(), c.pieces[i]);
         }
         return r;
      }
      case NodeKind::range: {
         const auto& rs = node.as<spec::Range>();
         const auto c = *cut(node, text);
         const auto& inner = node.children.front();
         BigInt r = 0;
         BigInt weight = 1;
         for(const auto& piece : c.pieces) {
            r += weight * rank32(inner.node(), piece);
            weight *= inner.size();
         }
         return node.cumulative[c.repetitions - rs.min] + r;
      }
   }
   return 0;
}

std::u32string unrank32(const FormatNode& node, const BigInt& rank) {
   switch(node.spec.kind()) {
      case NodeKind::ssn: return digits_text(ssn_unrank(*to_u64(rank)), 9);
      case NodeKind::ccn: {
         const auto prefix = digits_text(*to_u64(rank), 15);
         const int check = luhn_digit(utf8::encode(prefix));
         return prefix + static_cast<char32_t>(U'0' + check);
      }
      case NodeKind::date: {
         const auto& d = node.as<spec::Date>();
         return date_text(from_epoch(node.min_epoch + rank.get_si(), d.granularity), d.granularity);
      }
      case NodeKind::fixed_string: {
         const auto& sets = node.as<spec::FixedString>().charsets;
         std::u32string out;
         BigInt r = rank;
         BigInt digit;
         for(const auto& set : sets) {
            const BigInt n(static_cast<unsigned long>(set.size()));
            mpz_fdiv_qr(r.get_mpz_t(), digit.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
            out.push_back(set.at(digit.get_ui()));
         }
         return out;
      }
      case NodeKind::var_string: {
         const auto& v = node.as<spec::VarString>();
         const auto block = find_block(node.cumulative, rank);
         return sas_unrank(v.alphabet, v.min + block, rank - node.cumulative[block]);
      }
      case NodeKind::delim_var_string: {
         const auto& v = node.as<spec::DelimVarString>();
         const auto block = find_block(node.cumulative, rank);
         return sas_unrank(v.alphabet, v.min + block, rank - node.cumulative[block]) + v.delim;
      }
      case NodeKind::string_set: return node.as<spec::StringSet>().strings[rank.get_ui()];
      case NodeKind::delim_string_set: return node.as<spec::DelimStringSet>().strings[rank.get_ui()];
      case NodeKind::integral: return integral_text(node.as<spec::IntegralDomain>().min + rank);
      case NodeKind::union_of: {
         auto it = std::upper_bound(node.weights.begin(), node.weights.end(), rank);
         const auto i = static_cast<std::size_t>(it - node.weights.begin()) - 1;
         return unrank32(node.children[i].node(), rank - node.weights[i]);
      }
      case NodeKind::concat: {
         const auto& c = node.as<spec::Concat>();
         std::u32string out;
         BigInt r = rank;
         BigInt digit;
         for(std::size_t i = 0; i < node.children.size(); ++i) {
            const auto& child = node.children[i];
            mpz_fdiv_qr(r.get_mpz_t(), digit.get_mpz_t(), r.get_mpz_t(), child.size().get_mpz_t());
            out += unrank32(child.node(), digit);
            if(i < c.delimiters.size()) {
               out += c.delimiters[i];
            }
         }
         return out;
      }
      case NodeKind::range: {
         const auto& rs = node.as<spec::Range>();
         const auto& inner = node.children.front();
         const auto block = find_block(node.cumulative, rank);
         const auto k = rs.min + block;
         BigInt r = rank - node.cumulative[block];
         BigInt digit;
         std::u32string out;
         for(std::size_t i = 0; i < k; ++i) {
            mpz_fdiv_qr(r.get_mpz_t(), digit.get_mpz_t(), r.get_mpz_t(), inner.size().get_mpz_t());
            out += unrank32(inner.node(), digit);
            if(rs.last_delimited || i + 1 < k) {
               out += rs.delim;
            }
         }
         return out;
      }
   }
   return {};
}

}  // namespace detail

Rank rank(const Format& format, std::string_view text) {
   std::u32string decoded;
   try {
      decoded = utf8::decode(text);
   } catch(const Error& e) {
      throw Error(ErrorCode::NotInFormat, e.what());
   }
   if(!detail::member(format.node(), decoded)) {
      throw Error(ErrorCode::NotInFormat, "'" + std::string(text) + "' is not in the format");
   }
   return {detail::rank32(format.node(), decoded), format.size()};
}

std::string unrank(const Format& format, const BigInt& r) {
   if(r < 0 || r >= format.size()) {
      throw Error(ErrorCode::RankOutOfRange, "rank " + to_string(r) + " outside [0, " + to_string(format.size()) + ")");
   }
   return utf8::encode(detail::unrank32(format.node(), r));
}

}  // namespace gfpe
