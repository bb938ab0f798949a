#include "gfpe/format.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>

#include "detail/format_node.hpp"
#include "gfpe/utf8.hpp"

namespace gfpe {

bool spec::Union::operator==(const Union& other) const {
   return parts == other.parts;
}

bool spec::Concat::operator==(const Concat& other) const {
   return parts == other.parts && delimiters == other.delimiters;
}

bool spec::Range::operator==(const Range& other) const {
   return inner == other.inner && delim == other.delim && min == other.min && max == other.max &&
          last_delimited == other.last_delimited;
}

std::string_view to_string(NodeKind kind) {
   switch(kind) {
      case NodeKind::ssn: return "ssn";
      case NodeKind::ccn: return "ccn";
      case NodeKind::date: return "date";
      case NodeKind::fixed_string: return "fixed";
      case NodeKind::delim_var_string: return "delim_varstring";
      case NodeKind::var_string: return "varstring";
      case NodeKind::delim_string_set: return "delim_stringset";
      case NodeKind::string_set: return "stringset";
      case NodeKind::integral: return "integral";
      case NodeKind::union_of: return "union";
      case NodeKind::concat: return "concat";
      case NodeKind::range: return "range";
   }
   return "unknown";
}

namespace fmt {

FormatSpec ssn() {
   return {spec::Ssn{}};
}

FormatSpec ccn() {
   return {spec::Ccn{}};
}

FormatSpec date(CivilDateTime min, CivilDateTime max, Granularity granularity) {
   return {spec::Date{min, max, granularity}};
}

FormatSpec fixed(std::vector<CharSet> charsets) {
   return {spec::FixedString{std::move(charsets)}};
}

FormatSpec literal(std::u32string_view text) {
   std::vector<CharSet> sets;
   for(char32_t c : text) {
      sets.push_back(CharSet::of(std::u32string(1, c)));
   }
   return fixed(std::move(sets));
}

FormatSpec var_string(CharSet alphabet, std::size_t min, std::size_t max) {
   return {spec::VarString{min, max, std::move(alphabet)}};
}

FormatSpec delim_var_string(CharSet alphabet, std::size_t min, std::size_t max, char32_t delim) {
   return {spec::DelimVarString{min, max, std::move(alphabet), delim}};
}

FormatSpec string_set(std::vector<std::u32string> strings) {
   return {spec::StringSet{std::move(strings)}};
}

FormatSpec delim_string_set(std::vector<std::u32string> strings, char32_t delim) {
   return {spec::DelimStringSet{std::move(strings), delim}};
}

FormatSpec prefix_free_set(std::vector<std::u32string> strings) {
   return {spec::DelimStringSet{std::move(strings), std::nullopt}};
}

FormatSpec integral(BigInt min, BigInt max) {
   return {spec::IntegralDomain{std::move(min), std::move(max)}};
}

FormatSpec union_of(std::vector<FormatSpec> parts) {
   return {spec::Union{std::move(parts)}};
}

FormatSpec concat(std::vector<FormatSpec> parts, std::vector<char32_t> delimiters) {
   return {spec::Concat{std::move(parts), std::move(delimiters)}};
}

FormatSpec range(FormatSpec inner, char32_t delim, std::size_t min, std::size_t max, bool last_delimited) {
   return {spec::Range{Box<FormatSpec>(std::move(inner)), delim, min, max, last_delimited}};
}

}  // namespace fmt

NodeKind Format::kind() const noexcept {
   return node_->spec.kind();
}

const FormatSpec& Format::spec() const noexcept {
   return node_->spec;
}

const BigInt& Format::size() const noexcept {
   return node_->size;
}

const CharSet& Format::alphabet() const noexcept {
   return node_->alphabet;
}

bool Format::rigid() const noexcept {
   return node_->rigid;
}

bool Format::nullable() const noexcept {
   return node_->nullable;
}

std::span<const Format> Format::children() const noexcept {
   return node_->children;
}

namespace detail {

bool is_leap(std::int64_t year) noexcept {
   return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int days_in_month(std::int64_t year, int month) noexcept {
   static constexpr int days[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
   if(month == 2 && is_leap(year)) {
      return 29;
   }
   return days[month - 1];
}

bool valid_civil(const CivilDateTime& d) noexcept {
   return d.year >= 0 && d.year <= 9999 && d.month >= 1 && d.month <= 12 && d.day >= 1 &&
          d.day <= days_in_month(d.year, d.month) && d.hour >= 0 && d.hour < 24 && d.minute >= 0 &&
          d.minute < 60 && d.second >= 0 && d.second < 60;
}

// Howard Hinnant's days_from_civil / civil_from_days.
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) noexcept {
   y -= m <= 2;
   const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
   const auto yoe = static_cast<unsigned>(y - era * 400);
   const unsigned doy = (153 * (m > 2 ? m - 3 : m + 9) + 2) / 5 + d - 1;
   const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
   return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

CivilDateTime civil_from_days(std::int64_t z) noexcept {
   z += 719468;
   const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
   const auto doe = static_cast<unsigned>(z - era * 146097);
   const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
   const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
   const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
   const unsigned mp = (5 * doy + 2) / 153;
   const unsigned d = doy - (153 * mp + 2) / 5 + 1;
   const unsigned m = mp < 10 ? mp + 3 : mp - 9;
   CivilDateTime out;
   out.year = static_cast<int>(y + (m <= 2));
   out.month = static_cast<int>(m);
   out.day = static_cast<int>(d);
   return out;
}

std::int64_t to_epoch(const CivilDateTime& d, Granularity g) noexcept {
   const auto days = days_from_civil(d.year, static_cast<unsigned>(d.month), static_cast<unsigned>(d.day));
   if(g == Granularity::day) {
      return days;
   }
   return days * 86400 + d.hour * 3600 + d.minute * 60 + d.second;
}

CivilDateTime from_epoch(std::int64_t units, Granularity g) noexcept {
   if(g == Granularity::day) {
      return civil_from_days(units);
   }
   std::int64_t days = units / 86400;
   std::int64_t secs = units % 86400;
   if(secs < 0) {
      secs += 86400;
      --days;
   }
   auto out = civil_from_days(days);
   out.hour = static_cast<int>(secs / 3600);
   out.minute = static_cast<int>(secs % 3600 / 60);
   out.second = static_cast<int>(secs % 60);
   return out;
}

namespace {

void put_digits(std::u32string& out, int value, int width) {
   std::u32string tmp(static_cast<std::size_t>(width), U'0');
   for(int i = width - 1; i >= 0; --i) {
      tmp[static_cast<std::size_t>(i)] = U'0' + static_cast<char32_t>(value % 10);
      value /= 10;
   }
   out += tmp;
}

std::optional<int> read_digits(std::u32string_view text, std::size_t pos, std::size_t width) {
   int value = 0;
   for(std::size_t i = pos; i < pos + width; ++i) {
      if(text[i] < U'0' || text[i] > U'9') {
         return std::nullopt;
      }
      value = value * 10 + static_cast<int>(text[i] - U'0');
   }
   return value;
}

}  // namespace

std::size_t date_text_length(Granularity g) noexcept {
   return g == Granularity::day ? 10 : 19;
}

std::u32string date_text(const CivilDateTime& d, Granularity g) {
   std::u32string out;
   put_digits(out, d.day, 2);
   out += U'.';
   put_digits(out, d.month, 2);
   out += U'.';
   put_digits(out, d.year, 4);
   if(g == Granularity::second) {
      out += U' ';
      put_digits(out, d.hour, 2);
      out += U':';
      put_digits(out, d.minute, 2);
      out += U':';
      put_digits(out, d.second, 2);
   }
   return out;
}

std::optional<CivilDateTime> parse_date_text(std::u32string_view text, Granularity g) {
   if(text.size() != date_text_length(g) || text[2] != U'.' || text[5] != U'.') {
      return std::nullopt;
   }
   CivilDateTime d;
   auto day = read_digits(text, 0, 2);
   auto month = read_digits(text, 3, 2);
   auto year = read_digits(text, 6, 4);
   if(!day || !month || !year) {
      return std::nullopt;
   }
   d.day = *day;
   d.month = *month;
   d.year = *year;
   if(g == Granularity::second) {
      if(text[10] != U' ' || text[13] != U':' || text[16] != U':') {
         return std::nullopt;
      }
      auto h = read_digits(text, 11, 2);
      auto mi = read_digits(text, 14, 2);
      auto s = read_digits(text, 17, 2);
      if(!h || !mi || !s) {
         return std::nullopt;
      }
      d.hour = *h;
      d.minute = *mi;
      d.second = *s;
   }
   if(!valid_civil(d)) {
      return std::nullopt;
   }
   return d;
}

std::optional<std::uint64_t> parse_digits(std::u32string_view text) noexcept {
   if(text.empty() || text.size() > 19) {
      return std::nullopt;
   }
   std::uint64_t value = 0;
   for(char32_t c : text) {
      if(c < U'0' || c > U'9') {
         return std::nullopt;
      }
      value = value * 10 + (c - U'0');
   }
   return value;
}

bool ssn_valid(std::uint64_t n) noexcept {
   const auto area = n / 1000000;
   const auto group = n / 10000 % 100;
   const auto serial = n % 10000;
   return n < 1000000000 && area != 0 && area != 666 && area < 900 && group != 0 && serial != 0;
}

bool luhn_valid(std::u32string_view digits) noexcept {
   unsigned sum = 0;
   bool dbl = false;
   for(auto it = digits.rbegin(); it != digits.rend(); ++it) {
      if(*it < U'0' || *it > U'9') {
         return false;
      }
      unsigned v = *it - U'0';
      if(dbl) {
         v *= 2;
         if(v > 9) {
            v -= 9;
         }
      }
      sum += v;
      dbl = !dbl;
   }
   return sum % 10 == 0;
}

std::u32string integral_text(const BigInt& n) {
   const auto s = n.get_str(10);
   return std::u32string(s.begin(), s.end());
}

std::optional<BigInt> parse_integral_text(std::u32string_view text) {
   std::u32string_view digits = text;
   const bool negative = !digits.empty() && digits.front() == U'-';
   if(negative) {
      digits.remove_prefix(1);
   }
   if(digits.empty() || (digits.size() > 1 && digits.front() == U'0') || (negative && digits == U"0")) {
      return std::nullopt;
   }
   std::string ascii;
   ascii.reserve(text.size());
   if(negative) {
      ascii.push_back('-');
   }
   for(char32_t c : digits) {
      if(c < U'0' || c > U'9') {
         return std::nullopt;
      }
      ascii.push_back(static_cast<char>(c));
   }
   return BigInt(ascii, 10);
}

namespace {

bool all_in(const CharSet& set, std::u32string_view text) {
   return std::all_of(text.begin(), text.end(), [&](char32_t c) { return set.contains(c); });
}

}  // namespace

std::optional<std::size_t> rigid_prefix(const FormatNode& node, std::u32string_view text) {
   auto fixed_len = [&](std::size_t len) -> std::optional<std::size_t> {
      if(text.size() < len) {
         return std::nullopt;
      }
      return len;
   };
   switch(node.spec.kind()) {
      case NodeKind::ssn: return fixed_len(9);
      case NodeKind::ccn: return fixed_len(16);
      case NodeKind::date: return fixed_len(date_text_length(node.as<spec::Date>().granularity));
      case NodeKind::fixed_string: return fixed_len(node.as<spec::FixedString>().charsets.size());
      case NodeKind::delim_var_string: {
         const auto p = text.find(node.as<spec::DelimVarString>().delim);
         if(p == std::u32string_view::npos) {
            return std::nullopt;
         }
         return p + 1;
      }
      case NodeKind::delim_string_set: {
         const auto& s = node.as<spec::DelimStringSet>();
         if(s.delim) {
            const auto p = text.find(*s.delim);
            if(p == std::u32string_view::npos) {
               return std::nullopt;
            }
            return p + 1;
         }
         for(auto len : node.lengths) {
            if(len <= text.size() && node.index.count(std::u32string(text.substr(0, len)))) {
               return len;
            }
         }
         return std::nullopt;
      }
      default: return std::nullopt;
   }
}

std::optional<Cut> cut(const FormatNode& node, std::u32string_view text) {
   Cut out;
   switch(node.spec.kind()) {
      case NodeKind::union_of: {
         for(std::size_t i = 0; i < node.children.size(); ++i) {
            const auto& child = node.children[i];
            const bool match = text.empty() ? child.nullable() : child.alphabet().contains(text.front());
            if(match) {
               out.pieces.push_back(text);
               out.index.push_back(i);
               return out;
            }
         }
         return std::nullopt;
      }
      case NodeKind::concat: {
         const auto& c = node.as<spec::Concat>();
         const std::size_t k = node.children.size();
         std::size_t pos = 0;
         for(std::size_t i = 0; i < k; ++i) {
            const auto rest = text.substr(pos);
            std::size_t len = 0;
            std::size_t skip = 0;
            const auto& child = node.children[i];
            if(i + 1 == k) {
               len = rest.size();
            } else if(!c.delimiters.empty()) {
               const auto p = rest.find(c.delimiters[i]);
               if(p == std::u32string_view::npos) {
                  return std::nullopt;
               }
               len = p;
               skip = 1;
            } else if(child.rigid()) {
               const auto p = rigid_prefix(child.node(), rest);
               if(!p) {
                  return std::nullopt;
               }
               len = *p;
            } else {
               while(len < rest.size() && child.alphabet().contains(rest[len])) {
                  ++len;
               }
            }
            out.pieces.push_back(rest.substr(0, len));
            out.index.push_back(i);
            pos += len + skip;
         }
         return out;
      }
      case NodeKind::range: {
         const auto& r = node.as<spec::Range>();
         std::u32string_view body = text;
         if(r.last_delimited) {
            if(body.empty() || body.back() != r.delim) {
               return std::nullopt;
            }
            body.remove_suffix(1);
         }
         std::size_t start = 0;
         while(true) {
            const auto p = body.find(r.delim, start);
            if(p == std::u32string_view::npos) {
               out.pieces.push_back(body.substr(start));
               out.index.push_back(0);
               break;
            }
            out.pieces.push_back(body.substr(start, p - start));
            out.index.push_back(0);
            start = p + 1;
         }
         out.repetitions = out.pieces.size();
         if(out.repetitions < r.min || out.repetitions > r.max) {
            return std::nullopt;
         }
         return out;
      }
      default:
         out.pieces.push_back(text);
         out.index.push_back(0);
         return out;
   }
}

bool member(const FormatNode& node, std::u32string_view text) {
   switch(node.spec.kind()) {
      case NodeKind::ssn: {
         const auto v = text.size() == 9 ? parse_digits(text) : std::nullopt;
         return v && ssn_valid(*v);
      }
      case NodeKind::ccn: return text.size() == 16 && luhn_valid(text);
      case NodeKind::date: {
         const auto& d = node.as<spec::Date>();
         const auto parsed = parse_date_text(text, d.granularity);
         return parsed && *parsed >= d.min && *parsed <= d.max;
      }
      case NodeKind::fixed_string: {
         const auto& sets = node.as<spec::FixedString>().charsets;
         if(text.size() != sets.size()) {
            return false;
         }
         for(std::size_t i = 0; i < sets.size(); ++i) {
            if(!sets[i].contains(text[i])) {
               return false;
            }
         }
         return true;
      }
      case NodeKind::var_string: {
         const auto& v = node.as<spec::VarString>();
         return text.size() >= v.min && text.size() <= v.max && all_in(v.alphabet, text);
      }
      case NodeKind::delim_var_string: {
         const auto& v = node.as<spec::DelimVarString>();
         if(text.empty() || text.back() != v.delim) {
            return false;
         }
         const auto body = text.substr(0, text.size() - 1);
         return body.size() >= v.min && body.size() <= v.max && all_in(v.alphabet, body);
      }
      case NodeKind::delim_string_set:
      case NodeKind::string_set: return node.index.count(std::u32string(text)) > 0;
      case NodeKind::integral: {
         const auto& d = node.as<spec::IntegralDomain>();
         const auto v = parse_integral_text(text);
         return v && *v >= d.min && *v <= d.max;
      }
      case NodeKind::union_of:
      case NodeKind::concat:
      case NodeKind::range: {
         const auto c = cut(node, text);
         if(!c) {
            return false;
         }
         for(std::size_t i = 0; i < c->pieces.size(); ++i) {
            if(!member(node.children[c->index[i]].node(), c->pieces[i])) {
               return false;
            }
         }
         return true;
      }
   }
   return false;
}

}  // namespace detail

namespace {

using detail::FormatNode;

struct Builder {
   std::vector<Violation> violations;

   void flag(ErrorCode code, const std::string& path, std::string message) {
      violations.push_back({code, path, std::move(message)});
   }

   static CharSet chars_of(const std::vector<std::u32string>& strings) {
      std::u32string all;
      for(const auto& s : strings) {
         all += s;
      }
      return CharSet::of(all);
   }

   static std::vector<std::u32string> dedup(const std::vector<std::u32string>& strings) {
      std::vector<std::u32string> out;
      std::unordered_set<std::u32string> seen;
      for(const auto& s : strings) {
         if(seen.insert(s).second) {
            out.push_back(s);
         }
      }
      return out;
   }

   static void index_set(FormatNode& node, const std::vector<std::u32string>& strings) {
      std::vector<std::size_t> lengths;
      for(std::size_t i = 0; i < strings.size(); ++i) {
         node.index.emplace(strings[i], i);
         lengths.push_back(strings[i].size());
      }
      std::sort(lengths.begin(), lengths.end());
      lengths.erase(std::unique(lengths.begin(), lengths.end()), lengths.end());
      node.lengths = std::move(lengths);
      node.size = static_cast<unsigned long>(strings.size());
      node.nullable = node.index.count(U"") > 0;
   }

   static void power_sums(FormatNode& node, const BigInt& base, std::size_t min, std::size_t max) {
      BigInt term = pow(base, static_cast<unsigned long>(min));
      BigInt total = 0;
      node.cumulative.clear();
      node.cumulative.reserve(max - min + 2);
      for(std::size_t len = min; len <= max; ++len) {
         node.cumulative.push_back(total);
         total += term;
         term *= base;
      }
      node.cumulative.push_back(total);
      node.size = total;
   }

   // Returns nullptr when the subtree has violations; every violation in the
   // subtree is still reported.
   std::shared_ptr<FormatNode> build(const FormatSpec& spec, const std::string& path) {
      auto node = std::make_shared<FormatNode>();
      node->spec = spec;
      const std::size_t before = violations.size();

      std::visit([&](const auto& s) { fill(*node, s, path); }, spec.node);

      if(violations.size() != before) {
         return nullptr;
      }
      if(node->size == 0) {
         flag(ErrorCode::EmptyFormat, path, "format has no members");
         return nullptr;
      }
      return node;
   }

   void fill(FormatNode& node, const spec::Ssn&, const std::string&) {
      node.size = BigInt(898) * 99 * 9999;
      node.alphabet = CharSet::digits();
      node.rigid = true;
   }

   void fill(FormatNode& node, const spec::Ccn&, const std::string&) {
      node.size = pow(BigInt(10), 15);
      node.alphabet = CharSet::digits();
      node.rigid = true;
   }

   void fill(FormatNode& node, const spec::Date& d, const std::string& path) {
      node.rigid = true;
      node.alphabet = CharSet::digits().united(CharSet::of(U"."));
      if(d.granularity == Granularity::second) {
         node.alphabet = node.alphabet.united(CharSet::of(U" :"));
      }
      bool ok = true;
      for(const auto* bound : {&d.min, &d.max}) {
         if(!detail::valid_civil(*bound)) {
            flag(ErrorCode::InvalidParameter, path, "date bound is not a valid calendar date in years 0..9999");
            ok = false;
         } else if(d.granularity == Granularity::day && (bound->hour || bound->minute || bound->second)) {
            flag(ErrorCode::InvalidParameter, path, "day-granularity bound carries a time of day");
            ok = false;
         }
      }
      if(!ok) {
         return;
      }
      if(d.max < d.min) {
         flag(ErrorCode::InvalidParameter, path, "minD is after maxD");
         return;
      }
      node.min_epoch = detail::to_epoch(d.min, d.granularity);
      node.size = BigInt(static_cast<long>(detail::to_epoch(d.max, d.granularity) - node.min_epoch + 1));
   }

   void fill(FormatNode& node, const spec::FixedString& f, const std::string& path) {
      node.rigid = true;
      if(f.charsets.empty()) {
         flag(ErrorCode::InvalidParameter, path, "fixed string needs at least one position");
         return;
      }
      node.size = 1;
      for(std::size_t i = 0; i < f.charsets.size(); ++i) {
         if(f.charsets[i].empty()) {
            flag(ErrorCode::EmptyAlphabet, path + ".charsets[" + std::to_string(i) + "]", "empty character set");
         }
         node.alphabet = node.alphabet.united(f.charsets[i]);
         node.size *= static_cast<unsigned long>(f.charsets[i].size());
      }
   }

   bool check_lengths(std::size_t min, std::size_t max, const CharSet& alphabet, const std::string& path) {
      bool ok = true;
      if(alphabet.empty()) {
         flag(ErrorCode::EmptyAlphabet, path, "empty alphabet");
         ok = false;
      }
      if(min > max) {
         flag(ErrorCode::InvalidParameter, path, "min exceeds max");
         ok = false;
      }
      return ok;
   }

   void fill(FormatNode& node, const spec::VarString& v, const std::string& path) {
      node.alphabet = v.alphabet;
      node.nullable = v.min == 0;
      if(check_lengths(v.min, v.max, v.alphabet, path)) {
         power_sums(node, BigInt(static_cast<unsigned long>(v.alphabet.size())), v.min, v.max);
      }
   }

   void fill(FormatNode& node, const spec::DelimVarString& v, const std::string& path) {
      node.rigid = true;
      node.alphabet = v.alphabet.united(CharSet::of(std::u32string(1, v.delim)));
      bool ok = check_lengths(v.min, v.max, v.alphabet, path);
      if(v.alphabet.contains(v.delim)) {
         flag(ErrorCode::DelimiterInAlphabet, path, "delimiter is in the alphabet");
         ok = false;
      }
      if(ok) {
         power_sums(node, BigInt(static_cast<unsigned long>(v.alphabet.size())), v.min, v.max);
      }
   }

   void fill(FormatNode& node, const spec::StringSet& s, const std::string& path) {
      auto strings = dedup(s.strings);
      if(strings.empty()) {
         flag(ErrorCode::EmptyFormat, path, "string set is empty");
         return;
      }
      node.alphabet = chars_of(strings);
      index_set(node, strings);
      node.spec.node = spec::StringSet{std::move(strings)};
   }

   void fill(FormatNode& node, const spec::DelimStringSet& s, const std::string& path) {
      node.rigid = true;
      auto strings = dedup(s.strings);
      if(strings.empty()) {
         flag(ErrorCode::EmptyFormat, path, "string set is empty");
         return;
      }
      node.alphabet = chars_of(strings);
      if(s.delim) {
         node.alphabet = node.alphabet.united(CharSet::of(std::u32string(1, *s.delim)));
         for(std::size_t i = 0; i < strings.size(); ++i) {
            const auto& str = strings[i];
            const std::string where = path + ".strings[" + std::to_string(i) + "]";
            if(str.empty() || str.back() != *s.delim) {
               flag(ErrorCode::InvalidParameter, where, "member does not end with the delimiter");
            } else if(str.find(*s.delim) != str.size() - 1) {
               flag(ErrorCode::DelimiterInAlphabet, where, "delimiter occurs inside a member");
            }
         }
      } else {
         auto sorted = strings;
         std::sort(sorted.begin(), sorted.end());
         for(std::size_t i = 0; i + 1 < sorted.size(); ++i) {
            if(sorted[i + 1].compare(0, sorted[i].size(), sorted[i]) == 0) {
               flag(ErrorCode::NotPrefixFree, path,
                    "'" + utf8::encode(sorted[i]) + "' is a prefix of '" + utf8::encode(sorted[i + 1]) + "'");
            }
         }
      }
      index_set(node, strings);
      node.spec.node = spec::DelimStringSet{std::move(strings), s.delim};
   }

   void fill(FormatNode& node, const spec::IntegralDomain& d, const std::string& path) {
      node.alphabet = CharSet::digits();
      if(d.min < 0) {
         node.alphabet = node.alphabet.united(CharSet::of(U"-"));
      }
      if(d.min > d.max) {
         flag(ErrorCode::InvalidParameter, path, "min exceeds max");
         return;
      }
      node.size = d.max - d.min + 1;
   }

   // Builds every child so that all violations surface; false if any failed.
   bool build_children(FormatNode& node, const std::vector<const FormatSpec*>& specs,
                       const std::vector<std::string>& paths) {
      bool ok = true;
      for(std::size_t i = 0; i < specs.size(); ++i) {
         auto child = build(*specs[i], paths[i]);
         if(child) {
            node.children.push_back(FormatNode::wrap(std::move(child)));
         } else {
            ok = false;
         }
      }
      return ok;
   }

   static std::vector<std::string> part_paths(const std::string& path, std::size_t n) {
      std::vector<std::string> out;
      for(std::size_t i = 0; i < n; ++i) {
         out.push_back(path + ".parts[" + std::to_string(i) + "]");
      }
      return out;
   }

   void fill(FormatNode& node, const spec::Union& u, const std::string& path) {
      if(u.parts.empty()) {
         flag(ErrorCode::EmptyFormat, path, "union has no parts");
         return;
      }
      std::vector<const FormatSpec*> specs;
      for(const auto& p : u.parts) {
         specs.push_back(&p);
      }
      if(!build_children(node, specs, part_paths(path, u.parts.size()))) {
         return;
      }
      std::optional<std::size_t> nullable_part;
      for(std::size_t i = 0; i < node.children.size(); ++i) {
         const auto& a = node.children[i];
         for(std::size_t j = i + 1; j < node.children.size(); ++j) {
            if(!a.alphabet().disjoint(node.children[j].alphabet())) {
               flag(ErrorCode::OverlappingUnionAlphabets, path,
                    "parts " + std::to_string(i) + " and " + std::to_string(j) + " share characters");
            }
         }
         if(a.nullable()) {
            if(nullable_part) {
               flag(ErrorCode::OverlappingUnionAlphabets, path,
                    "parts " + std::to_string(*nullable_part) + " and " + std::to_string(i) +
                       " both contain the empty string");
            }
            nullable_part = i;
         }
      }
      BigInt offset = 0;
      for(const auto& child : node.children) {
         node.weights.push_back(offset);
         offset += child.size();
         node.alphabet = node.alphabet.united(child.alphabet());
      }
      node.size = offset;
      node.nullable = nullable_part.has_value();
   }

   void fill(FormatNode& node, const spec::Concat& c, const std::string& path) {
      if(c.parts.empty()) {
         flag(ErrorCode::EmptyFormat, path, "concatenation has no parts");
         return;
      }
      if(!c.delimiters.empty() && c.delimiters.size() + 1 != c.parts.size()) {
         flag(ErrorCode::InvalidParameter, path, "need exactly one delimiter between each pair of parts");
         return;
      }
      std::vector<const FormatSpec*> specs;
      for(const auto& p : c.parts) {
         specs.push_back(&p);
      }
      if(!build_children(node, specs, part_paths(path, c.parts.size()))) {
         return;
      }
      const auto& kids = node.children;
      for(std::size_t i = 0; i + 1 < kids.size(); ++i) {
         if(!c.delimiters.empty()) {
            if(kids[i].alphabet().contains(c.delimiters[i])) {
               flag(ErrorCode::DelimiterInAlphabet, path + ".parts[" + std::to_string(i) + "]",
                    "delimiter " + std::to_string(i) + " is in the part's alphabet");
            }
            continue;
         }
         if(kids[i].rigid()) {
            continue;
         }
         // A non-rigid part is cut at its longest alphabet run, so nothing
         // reachable after it through empty parts may share its characters.
         for(std::size_t j = i + 1; j < kids.size(); ++j) {
            if(!kids[i].alphabet().disjoint(kids[j].alphabet())) {
               flag(ErrorCode::InseparableConcat, path,
                    "part " + std::to_string(j) + " is not separable from part " + std::to_string(i));
               break;
            }
            if(!kids[j].nullable()) {
               break;
            }
         }
      }
      BigInt scaler = 1;
      node.nullable = c.delimiters.empty();
      for(const auto& child : kids) {
         node.weights.push_back(scaler);
         scaler *= child.size();
         node.alphabet = node.alphabet.united(child.alphabet());
         node.nullable = node.nullable && child.nullable();
      }
      node.alphabet = node.alphabet.united(CharSet::of(std::u32string(c.delimiters.begin(), c.delimiters.end())));
      node.size = scaler;
   }

   void fill(FormatNode& node, const spec::Range& r, const std::string& path) {
      bool ok = true;
      if(r.min < 1) {
         flag(ErrorCode::InvalidParameter, path, "min must be at least 1");
         ok = false;
      }
      if(r.min > r.max) {
         flag(ErrorCode::InvalidParameter, path, "min exceeds max");
         ok = false;
      }
      if(!build_children(node, {&*r.inner}, {path + ".inner"}) || !ok) {
         return;
      }
      const auto& inner = node.children.front();
      if(inner.alphabet().contains(r.delim)) {
         flag(ErrorCode::DelimiterInAlphabet, path, "delimiter is in the inner alphabet");
         return;
      }
      node.alphabet = inner.alphabet().united(CharSet::of(std::u32string(1, r.delim)));
      node.nullable = !r.last_delimited && r.min == 1 && inner.nullable();
      power_sums(node, inner.size(), r.min, r.max);
   }
};

std::u32string decode_or_throw(std::string_view text, ErrorCode code) {
   try {
      return utf8::decode(text);
   } catch(const Error& e) {
      throw Error(code, e.what());
   }
}

}  // namespace

Validation validate(const FormatSpec& spec) {
   Builder b;
   auto node = b.build(spec, "$");
   Validation out;
   if(node && b.violations.empty()) {
      out.format = FormatNode::wrap(std::move(node));
   }
   out.violations = std::move(b.violations);
   return out;
}

Format compile(const FormatSpec& spec) {
   auto v = validate(spec);
   if(!v.format) {
      throw FormatError(std::move(v.violations));
   }
   return *v.format;
}

bool contains(const Format& format, std::string_view text) {
   std::u32string decoded;
   try {
      decoded = utf8::decode(text);
   } catch(const Error&) {
      return false;
   }
   return detail::member(format.node(), decoded);
}

ParsePieces parse(const Format& format, std::string_view text) {
   const auto decoded = decode_or_throw(text, ErrorCode::ParseFailure);
   const auto& node = format.node();
   if(!detail::member(node, decoded)) {
      throw Error(ErrorCode::ParseFailure, "'" + std::string(text) + "' is not a member of the " +
                                              std::string(to_string(format.kind())) + " format");
   }
   const auto c = detail::cut(node, decoded);
   ParsePieces out;
   out.repetitions = c->repetitions;
   for(std::size_t i = 0; i < c->pieces.size(); ++i) {
      out.pieces.push_back({utf8::encode(c->pieces[i]), c->index[i]});
   }
   return out;
}

std::string reassemble(const Format& format, const ParsePieces& pieces) {
   std::string out;
   const auto& s = format.spec();
   if(const auto* c = std::get_if<spec::Concat>(&s.node)) {
      for(std::size_t i = 0; i < pieces.pieces.size(); ++i) {
         out += pieces.pieces[i].text;
         if(!c->delimiters.empty() && i < c->delimiters.size()) {
            out += utf8::encode(c->delimiters[i]);
         }
      }
      return out;
   }
   if(const auto* r = std::get_if<spec::Range>(&s.node)) {
      for(std::size_t i = 0; i < pieces.pieces.size(); ++i) {
         out += pieces.pieces[i].text;
         if(r->last_delimited || i + 1 < pieces.pieces.size()) {
            out += utf8::encode(r->delim);
         }
      }
      return out;
   }
   for(const auto& p : pieces.pieces) {
      out += p.text;
   }
   return out;
}

namespace {

using Strings = std::vector<std::u32string>;

// Mixed-radix odometer, first digit fastest. Calls emit with the digit
// vector until budget members are produced or the odometer wraps.
void odometer(const std::vector<BigInt>& radix, std::size_t budget,
              const std::function<void(const std::vector<std::size_t>&)>& emit) {
   std::vector<std::size_t> digit(radix.size(), 0);
   for(std::size_t produced = 0; produced < budget; ++produced) {
      emit(digit);
      std::size_t j = 0;
      for(; j < digit.size(); ++j) {
         ++digit[j];
         if(BigInt(static_cast<unsigned long>(digit[j])) < radix[j]) {
            break;
         }
         digit[j] = 0;
      }
      if(j == digit.size()) {
         break;
      }
   }
}

Strings charset_list(const CharSet& set, std::size_t limit) {
   Strings out;
   for(const auto& iv : set.intervals()) {
      for(char32_t c = iv.lo; c <= iv.hi && out.size() < limit; ++c) {
         out.emplace_back(1, c);
      }
   }
   return out;
}

std::size_t capped(const BigInt& size, std::size_t limit) {
   return size < BigInt(static_cast<unsigned long>(limit)) ? size.get_ui() : limit;
}

Strings enum_node(const detail::FormatNode& node, std::size_t limit);

// Every choice of one member per list, first list fastest, joined with the
// separators (separators[i] follows list i; empty entries mean none).
void enum_product(const std::vector<const Strings*>& lists, const std::vector<BigInt>& radix,
                  const std::vector<std::u32string>& separators, std::size_t limit, Strings& out) {
   odometer(radix, limit - out.size(), [&](const std::vector<std::size_t>& digit) {
      std::u32string s;
      for(std::size_t i = 0; i < digit.size(); ++i) {
         s += (*lists[i])[digit[i]];
         s += separators[i];
      }
      out.push_back(std::move(s));
   });
}

Strings enum_node(const detail::FormatNode& node, std::size_t limit) {
   Strings out;
   if(limit == 0) {
      return out;
   }
   switch(node.spec.kind()) {
      case NodeKind::ssn:
         for(std::uint64_t v = 0; v < 1000000000 && out.size() < limit; ++v) {
            if(detail::ssn_valid(v)) {
               std::u32string s(9, U'0');
               auto x = v;
               for(int i = 8; i >= 0; --i, x /= 10) {
                  s[static_cast<std::size_t>(i)] = U'0' + static_cast<char32_t>(x % 10);
               }
               out.push_back(std::move(s));
            }
         }
         break;
      case NodeKind::ccn:
         for(std::uint64_t p = 0; p < 1000000000000000ULL && out.size() < limit; ++p) {
            std::u32string s(16, U'0');
            auto x = p;
            for(int i = 14; i >= 0; --i, x /= 10) {
               s[static_cast<std::size_t>(i)] = U'0' + static_cast<char32_t>(x % 10);
            }
            for(char32_t check = U'0'; check <= U'9'; ++check) {
               s[15] = check;
               if(detail::luhn_valid(s)) {
                  break;
               }
            }
            out.push_back(std::move(s));
         }
         break;
      case NodeKind::date: {
         const auto& d = node.as<spec::Date>();
         auto cur = d.min;
         while(cur <= d.max && out.size() < limit) {
            out.push_back(detail::date_text(cur, d.granularity));
            bool carry = true;
            if(d.granularity == Granularity::second) {
               carry = ++cur.second == 60;
               if(carry) {
                  cur.second = 0;
                  carry = ++cur.minute == 60;
               }
               if(carry) {
                  cur.minute = 0;
                  carry = ++cur.hour == 24;
               }
               if(carry) {
                  cur.hour = 0;
               }
            }
            if(carry && ++cur.day > detail::days_in_month(cur.year, cur.month)) {
               cur.day = 1;
               if(++cur.month > 12) {
                  cur.month = 1;
                  ++cur.year;
               }
            }
         }
         break;
      }
      case NodeKind::fixed_string: {
         const auto& sets = node.as<spec::FixedString>().charsets;
         std::vector<Strings> lists;
         std::vector<BigInt> radix;
         for(const auto& set : sets) {
            lists.push_back(charset_list(set, limit));
            radix.emplace_back(static_cast<unsigned long>(set.size()));
         }
         std::vector<const Strings*> ptrs;
         for(const auto& l : lists) {
            ptrs.push_back(&l);
         }
         enum_product(ptrs, radix, Strings(sets.size()), limit, out);
         break;
      }
      case NodeKind::var_string:
      case NodeKind::delim_var_string: {
         std::size_t min = 0;
         std::size_t max = 0;
         CharSet alphabet;
         std::u32string tail;
         if(const auto* v = std::get_if<spec::VarString>(&node.spec.node)) {
            min = v->min;
            max = v->max;
            alphabet = v->alphabet;
         } else {
            const auto& dv = node.as<spec::DelimVarString>();
            min = dv.min;
            max = dv.max;
            alphabet = dv.alphabet;
            tail = std::u32string(1, dv.delim);
         }
         const auto list = charset_list(alphabet, limit);
         for(std::size_t len = min; len <= max && out.size() < limit; ++len) {
            std::vector<const Strings*> ptrs(len, &list);
            std::vector<BigInt> radix(len, BigInt(static_cast<unsigned long>(alphabet.size())));
            Strings seps(len);
            if(len > 0) {
               seps.back() = tail;
               enum_product(ptrs, radix, seps, limit, out);
            } else {
               out.push_back(tail);
            }
         }
         break;
      }
      case NodeKind::string_set: {
         const auto& strings = node.as<spec::StringSet>().strings;
         for(std::size_t i = 0; i < strings.size() && out.size() < limit; ++i) {
            out.push_back(strings[i]);
         }
         break;
      }
      case NodeKind::delim_string_set: {
         const auto& strings = node.as<spec::DelimStringSet>().strings;
         for(std::size_t i = 0; i < strings.size() && out.size() < limit; ++i) {
            out.push_back(strings[i]);
         }
         break;
      }
      case NodeKind::integral: {
         const auto& d = node.as<spec::IntegralDomain>();
         for(BigInt v = d.min; v <= d.max && out.size() < limit; ++v) {
            out.push_back(detail::integral_text(v));
         }
         break;
      }
      case NodeKind::union_of:
         for(const auto& child : node.children) {
            if(out.size() >= limit) {
               break;
            }
            auto part = enum_node(child.node(), limit - out.size());
            out.insert(out.end(), part.begin(), part.end());
         }
         break;
      case NodeKind::concat: {
         const auto& c = node.as<spec::Concat>();
         std::vector<Strings> lists;
         std::vector<BigInt> radix;
         BigInt below = 1;
         for(const auto& child : node.children) {
            // Only the first ceil(limit / below) members of this part can appear.
            BigInt need = (BigInt(static_cast<unsigned long>(limit)) + below - 1) / below;
            lists.push_back(enum_node(child.node(), capped(need, limit)));
            radix.push_back(child.size());
            below *= child.size();
         }
         std::vector<const Strings*> ptrs;
         for(const auto& l : lists) {
            ptrs.push_back(&l);
         }
         Strings seps(lists.size());
         for(std::size_t i = 0; i < c.delimiters.size(); ++i) {
            seps[i] = std::u32string(1, c.delimiters[i]);
         }
         enum_product(ptrs, radix, seps, limit, out);
         break;
      }
      case NodeKind::range: {
         const auto& r = node.as<spec::Range>();
         const auto& inner = node.children.front();
         const auto list = enum_node(inner.node(), limit);
         const std::u32string d(1, r.delim);
         for(std::size_t k = r.min; k <= r.max && out.size() < limit; ++k) {
            std::vector<const Strings*> ptrs(k, &list);
            std::vector<BigInt> radix(k, inner.size());
            Strings seps(k, d);
            if(!r.last_delimited) {
               seps.back().clear();
            }
            enum_product(ptrs, radix, seps, limit, out);
         }
         break;
      }
   }
   return out;
}

}  // namespace

std::vector<std::string> enumerate(const Format& format, std::size_t limit) {
   std::vector<std::string> out;
   for(const auto& s : enum_node(format.node(), limit)) {
      out.push_back(utf8::encode(s));
   }
   return out;
}

}  // namespace gfpe
