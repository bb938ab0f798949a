#include "gfpe/dsl.hpp"

#include <fstream>
#include <iterator>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "gfpe/utf8.hpp"

namespace gfpe {

using json = nlohmann::json;

DslError::DslError(ErrorCode code, const std::string& message, std::size_t line, std::size_t column,
                   std::string pointer) :
      Error(code, message + " at " + (pointer.empty() ? std::string("/") : pointer) + " (line " +
                     std::to_string(line) + ", column " + std::to_string(column) + ")"),
      line_(line),
      column_(column),
      pointer_(std::move(pointer)) {}

namespace {

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
   std::size_t line = 1;
   std::size_t column = 1;
   for(std::size_t i = 0; i < offset && i < text.size(); ++i) {
      if(text[i] == '\n') {
         ++line;
         column = 1;
      } else if((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) {
         ++column;
      }
   }
   return {line, column};
}

// JSON pointer token escaping ("~" -> "~0", "/" -> "~1").
std::string escape_token(const std::string& key) {
   std::string out;
   for(char c : key) {
      if(c == '~') {
         out += "~0";
      } else if(c == '/') {
         out += "~1";
      } else {
         out += c;
      }
   }
   return out;
}

// Forward iterator over the text that records how far the parser has read.
class CountingIterator {
public:
   using iterator_category = std::forward_iterator_tag;
   using value_type = char;
   using difference_type = std::ptrdiff_t;
   using pointer = const char*;
   using reference = const char&;

   CountingIterator() = default;
   CountingIterator(const char* p, const char* base, std::size_t* consumed) : p_(p), base_(base), consumed_(consumed) {}

   reference operator*() const { return *p_; }
   CountingIterator& operator++() {
      ++p_;
      if(consumed_) {
         *consumed_ = static_cast<std::size_t>(p_ - base_);
      }
      return *this;
   }
   CountingIterator operator++(int) {
      auto copy = *this;
      ++*this;
      return copy;
   }
   bool operator==(const CountingIterator& other) const { return p_ == other.p_; }
   bool operator!=(const CountingIterator& other) const { return p_ != other.p_; }

private:
   const char* p_ = nullptr;
   const char* base_ = nullptr;
   std::size_t* consumed_ = nullptr;
};

// Records, for every value, the read offset when the parser reported it.
class PositionSax : public nlohmann::json_sax<json> {
public:
   explicit PositionSax(const std::size_t* consumed) : consumed_(consumed) {}

   std::map<std::string, std::size_t> positions;

   bool null() override { return value(); }
   bool boolean(bool) override { return value(); }
   bool number_integer(number_integer_t) override { return value(); }
   bool number_unsigned(number_unsigned_t) override { return value(); }
   bool number_float(number_float_t, const string_t&) override { return value(); }
   bool string(string_t&) override { return value(); }
   bool binary(binary_t&) override { return value(); }
   bool start_object(std::size_t) override {
      mark();
      frames_.push_back({false, 0, {}});
      return true;
   }
   bool key(string_t& key) override {
      frames_.back().key = key;
      positions.emplace(pointer(), *consumed_);
      return true;
   }
   bool end_object() override { return close(); }
   bool start_array(std::size_t) override {
      mark();
      frames_.push_back({true, 0, {}});
      return true;
   }
   bool end_array() override { return close(); }
   bool parse_error(std::size_t, const std::string&, const nlohmann::detail::exception&) override { return false; }

private:
   struct Frame {
      bool array;
      std::size_t index;
      std::string key;
   };

   std::string pointer() const {
      std::string out;
      for(const auto& f : frames_) {
         out += '/';
         out += f.array ? std::to_string(f.index) : escape_token(f.key);
      }
      return out;
   }

   void mark() { positions.try_emplace(pointer(), *consumed_); }

   bool value() {
      mark();
      advance();
      return true;
   }

   bool close() {
      frames_.pop_back();
      advance();
      return true;
   }

   void advance() {
      if(!frames_.empty() && frames_.back().array) {
         ++frames_.back().index;
      }
   }

   const std::size_t* consumed_;
   std::vector<Frame> frames_;
};

class Decoder {
public:
   explicit Decoder(std::string_view text) : text_(text) {}

   [[noreturn]] void fail(ErrorCode code, const std::string& pointer, const std::string& message) const {
      std::size_t consumed = 0;
      PositionSax sax(&consumed);
      CountingIterator first(text_.data(), text_.data(), &consumed);
      CountingIterator last(text_.data() + text_.size(), text_.data(), nullptr);
      json::sax_parse(first, last, &sax);
      std::size_t offset = 0;
      // Nearest recorded ancestor of the pointer.
      std::string p = pointer;
      while(true) {
         auto it = sax.positions.find(p);
         if(it != sax.positions.end()) {
            offset = it->second;
            break;
         }
         if(p.empty()) {
            break;
         }
         p.erase(p.rfind('/'));
      }
      const auto [line, column] = line_column(text_, offset);
      throw DslError(code, message, line, column, pointer);
   }

   FormatSpec node(const json& j, const std::string& ptr) {
      if(!j.is_object()) {
         fail(ErrorCode::BadParameter, ptr, "format node must be an object");
      }
      auto type_it = j.find("type");
      if(type_it == j.end() || !type_it->is_string()) {
         fail(ErrorCode::BadParameter, ptr, "format node needs a string \"type\"");
      }
      const auto type = type_it->get<std::string>();
      auto allow = [&](std::initializer_list<const char*> keys) {
         std::set<std::string> ok(keys.begin(), keys.end());
         ok.insert("type");
         for(const auto& [k, v] : j.items()) {
            if(!ok.count(k)) {
               fail(ErrorCode::BadParameter, ptr + "/" + escape_token(k),
                    "unknown parameter '" + k + "' for " + type);
            }
         }
      };
      if(type == "ssn") {
         allow({});
         return fmt::ssn();
      }
      if(type == "ccn") {
         allow({});
         return fmt::ccn();
      }
      if(type == "date") {
         allow({"min", "max", "granularity"});
         Granularity g = Granularity::day;
         if(j.contains("granularity")) {
            const auto& v = j.at("granularity");
            if(v == "day") {
               g = Granularity::day;
            } else if(v == "second") {
               g = Granularity::second;
            } else {
               fail(ErrorCode::BadParameter, ptr + "/granularity", "granularity must be \"day\" or \"second\"");
            }
         }
         return fmt::date(date(j, "min", ptr), date(j, "max", ptr), g);
      }
      if(type == "fixed") {
         allow({"charsets"});
         const auto& arr = required(j, "charsets", ptr);
         if(!arr.is_array()) {
            fail(ErrorCode::BadParameter, ptr + "/charsets", "charsets must be an array of strings");
         }
         std::vector<CharSet> sets;
         for(std::size_t i = 0; i < arr.size(); ++i) {
            sets.push_back(charset(arr[i], ptr + "/charsets/" + std::to_string(i)));
         }
         return fmt::fixed(std::move(sets));
      }
      if(type == "varstring") {
         allow({"min", "max", "alphabet"});
         return fmt::var_string(charset(required(j, "alphabet", ptr), ptr + "/alphabet"), count(j, "min", ptr),
                                count(j, "max", ptr));
      }
      if(type == "delim_varstring") {
         allow({"min", "max", "alphabet", "delim"});
         return fmt::delim_var_string(charset(required(j, "alphabet", ptr), ptr + "/alphabet"), count(j, "min", ptr),
                                      count(j, "max", ptr), character(j, "delim", ptr));
      }
      if(type == "stringset") {
         allow({"strings"});
         return fmt::string_set(strings(j, ptr));
      }
      if(type == "delim_stringset") {
         allow({"strings", "delim", "prefix_free"});
         bool prefix_free = false;
         if(j.contains("prefix_free")) {
            if(!j.at("prefix_free").is_boolean()) {
               fail(ErrorCode::BadParameter, ptr + "/prefix_free", "prefix_free must be a boolean");
            }
            prefix_free = j.at("prefix_free").get<bool>();
         }
         const bool has_delim = j.contains("delim");
         if(prefix_free == has_delim) {
            fail(ErrorCode::BadParameter, ptr, "delim_stringset needs exactly one of \"delim\" or \"prefix_free\": true");
         }
         if(prefix_free) {
            return fmt::prefix_free_set(strings(j, ptr));
         }
         return fmt::delim_string_set(strings(j, ptr), character(j, "delim", ptr));
      }
      if(type == "integral") {
         allow({"min", "max"});
         return fmt::integral(integer(j, "min", ptr), integer(j, "max", ptr));
      }
      if(type == "union") {
         allow({"parts"});
         auto parts = children(j, ptr);
         if(parts.empty()) {
            fail(ErrorCode::BadParameter, ptr + "/parts", "union needs at least one part");
         }
         return fmt::union_of(std::move(parts));
      }
      if(type == "concat") {
         allow({"parts", "delims"});
         auto parts = children(j, ptr);
         if(parts.empty()) {
            fail(ErrorCode::BadParameter, ptr + "/parts", "concat needs at least one part");
         }
         std::vector<char32_t> delims;
         if(j.contains("delims")) {
            const auto& arr = j.at("delims");
            if(!arr.is_array()) {
               fail(ErrorCode::BadParameter, ptr + "/delims", "delims must be an array of characters");
            }
            for(std::size_t i = 0; i < arr.size(); ++i) {
               delims.push_back(single_char(arr[i], ptr + "/delims/" + std::to_string(i)));
            }
            if(!delims.empty() && delims.size() + 1 != parts.size()) {
               fail(ErrorCode::BadParameter, ptr + "/delims", "need one delimiter between each pair of parts");
            }
         }
         return fmt::concat(std::move(parts), std::move(delims));
      }
      if(type == "range") {
         allow({"inner", "delim", "min", "max", "last_delimited"});
         bool last = true;
         if(j.contains("last_delimited")) {
            if(!j.at("last_delimited").is_boolean()) {
               fail(ErrorCode::BadParameter, ptr + "/last_delimited", "last_delimited must be a boolean");
            }
            last = j.at("last_delimited").get<bool>();
         }
         auto inner = node(required(j, "inner", ptr), ptr + "/inner");
         return fmt::range(std::move(inner), character(j, "delim", ptr), count(j, "min", ptr), count(j, "max", ptr),
                           last);
      }
      fail(ErrorCode::UnknownNodeType, ptr + "/type", "unknown node type '" + type + "'");
   }

private:
   const json& required(const json& j, const char* key, const std::string& ptr) {
      auto it = j.find(key);
      if(it == j.end()) {
         fail(ErrorCode::BadParameter, ptr, std::string("missing parameter '") + key + "'");
      }
      return *it;
   }

   std::size_t count(const json& j, const char* key, const std::string& ptr) {
      const auto& v = required(j, key, ptr);
      if(!v.is_number_unsigned()) {
         fail(ErrorCode::BadParameter, ptr + "/" + key, std::string("'") + key + "' must be a non-negative integer");
      }
      return v.get<std::size_t>();
   }

   BigInt integer(const json& j, const char* key, const std::string& ptr) {
      const auto& v = required(j, key, ptr);
      if(v.is_number_unsigned()) {
         return BigInt(std::to_string(v.get<std::uint64_t>()));
      }
      if(v.is_number_integer()) {
         return BigInt(std::to_string(v.get<std::int64_t>()));
      }
      if(v.is_string()) {
         try {
            return parse_bigint(v.get<std::string>());
         } catch(const Error&) {
         }
      }
      fail(ErrorCode::BadParameter, ptr + "/" + key, std::string("'") + key + "' must be an integer or decimal string");
   }

   char32_t single_char(const json& v, const std::string& ptr) {
      if(v.is_string()) {
         try {
            const auto s = utf8::decode(v.get<std::string>());
            if(s.size() == 1) {
               return s.front();
            }
         } catch(const Error&) {
         }
      }
      fail(ErrorCode::BadParameter, ptr, "expected a single character");
   }

   char32_t character(const json& j, const char* key, const std::string& ptr) {
      return single_char(required(j, key, ptr), ptr + "/" + key);
   }

   CharSet charset(const json& v, const std::string& ptr) {
      if(!v.is_string()) {
         fail(ErrorCode::BadParameter, ptr, "character set must be a string such as \"a-zA-Z\"");
      }
      try {
         return CharSet::parse(v.get<std::string>());
      } catch(const Error& e) {
         fail(ErrorCode::BadParameter, ptr, e.what());
      }
   }

   std::vector<std::u32string> strings(const json& j, const std::string& ptr) {
      const auto& arr = required(j, "strings", ptr);
      if(!arr.is_array()) {
         fail(ErrorCode::BadParameter, ptr + "/strings", "strings must be an array of strings");
      }
      std::vector<std::u32string> out;
      for(std::size_t i = 0; i < arr.size(); ++i) {
         const auto where = ptr + "/strings/" + std::to_string(i);
         if(!arr[i].is_string()) {
            fail(ErrorCode::BadParameter, where, "expected a string");
         }
         try {
            out.push_back(utf8::decode(arr[i].get<std::string>()));
         } catch(const Error& e) {
            fail(ErrorCode::BadParameter, where, e.what());
         }
      }
      return out;
   }

   CivilDateTime date(const json& j, const char* key, const std::string& ptr) {
      const auto& v = required(j, key, ptr);
      const auto where = ptr + "/" + key;
      if(!v.is_string()) {
         fail(ErrorCode::BadParameter, where, "date must be an ISO-8601 string");
      }
      const auto s = v.get<std::string>();
      CivilDateTime d;
      char sep1 = 0;
      char sep2 = 0;
      int consumed = 0;
      bool ok = std::sscanf(s.c_str(), "%4d%c%2d%c%2d%n", &d.year, &sep1, &d.month, &sep2, &d.day, &consumed) == 5 &&
                sep1 == '-' && sep2 == '-' && consumed == 10;
      if(ok && s.size() > 10) {
         char t = 0;
         char c1 = 0;
         char c2 = 0;
         int rest = 0;
         ok = std::sscanf(s.c_str() + 10, "%c%2d%c%2d%c%2d%n", &t, &d.hour, &c1, &d.minute, &c2, &d.second, &rest) ==
                 6 &&
              t == 'T' && c1 == ':' && c2 == ':' && rest == 9 && s.size() == 19;
      } else if(ok) {
         ok = s.size() == 10;
      }
      if(!ok) {
         fail(ErrorCode::BadParameter, where, "expected YYYY-MM-DD or YYYY-MM-DDThh:mm:ss, got '" + s + "'");
      }
      return d;
   }

   std::vector<FormatSpec> children(const json& j, const std::string& ptr) {
      const auto& arr = required(j, "parts", ptr);
      if(!arr.is_array()) {
         fail(ErrorCode::BadParameter, ptr + "/parts", "parts must be an array");
      }
      std::vector<FormatSpec> out;
      for(std::size_t i = 0; i < arr.size(); ++i) {
         out.push_back(node(arr[i], ptr + "/parts/" + std::to_string(i)));
      }
      return out;
   }

   std::string_view text_;
};

std::string date_iso(const CivilDateTime& d, Granularity g) {
   char buf[32];
   if(g == Granularity::day) {
      std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
   } else {
      std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02d", d.year, d.month, d.day, d.hour, d.minute,
                    d.second);
   }
   return buf;
}

json integer_json(const BigInt& v) {
   if(v.fits_slong_p()) {
      return static_cast<std::int64_t>(v.get_si());
   }
   return to_string(v);
}

json strings_json(const std::vector<std::u32string>& strings) {
   json arr = json::array();
   std::unordered_set<std::u32string> seen;
   for(const auto& s : strings) {
      if(seen.insert(s).second) {
         arr.push_back(utf8::encode(s));
      }
   }
   return arr;
}

json to_json(const FormatSpec& spec) {
   json j;
   j["type"] = std::string(to_string(spec.kind()));
   std::visit(
      [&](const auto& s) {
         using T = std::decay_t<decltype(s)>;
         if constexpr(std::is_same_v<T, spec::Date>) {
            j["min"] = date_iso(s.min, s.granularity);
            j["max"] = date_iso(s.max, s.granularity);
            j["granularity"] = s.granularity == Granularity::day ? "day" : "second";
         } else if constexpr(std::is_same_v<T, spec::FixedString>) {
            j["charsets"] = json::array();
            for(const auto& c : s.charsets) {
               j["charsets"].push_back(c.to_string());
            }
         } else if constexpr(std::is_same_v<T, spec::VarString>) {
            j["min"] = s.min;
            j["max"] = s.max;
            j["alphabet"] = s.alphabet.to_string();
         } else if constexpr(std::is_same_v<T, spec::DelimVarString>) {
            j["min"] = s.min;
            j["max"] = s.max;
            j["alphabet"] = s.alphabet.to_string();
            j["delim"] = utf8::encode(s.delim);
         } else if constexpr(std::is_same_v<T, spec::StringSet>) {
            j["strings"] = strings_json(s.strings);
         } else if constexpr(std::is_same_v<T, spec::DelimStringSet>) {
            j["strings"] = strings_json(s.strings);
            j["prefix_free"] = !s.delim.has_value();
            if(s.delim) {
               j["delim"] = utf8::encode(*s.delim);
            }
         } else if constexpr(std::is_same_v<T, spec::IntegralDomain>) {
            j["min"] = integer_json(s.min);
            j["max"] = integer_json(s.max);
         } else if constexpr(std::is_same_v<T, spec::Union>) {
            j["parts"] = json::array();
            for(const auto& p : s.parts) {
               j["parts"].push_back(to_json(p));
            }
         } else if constexpr(std::is_same_v<T, spec::Concat>) {
            j["parts"] = json::array();
            for(const auto& p : s.parts) {
               j["parts"].push_back(to_json(p));
            }
            j["delims"] = json::array();
            for(char32_t d : s.delimiters) {
               j["delims"].push_back(utf8::encode(d));
            }
         } else if constexpr(std::is_same_v<T, spec::Range>) {
            j["inner"] = to_json(*s.inner);
            j["delim"] = utf8::encode(s.delim);
            j["min"] = s.min;
            j["max"] = s.max;
            j["last_delimited"] = s.last_delimited;
         }
      },
      spec.node);
   return j;
}

}  // namespace

FormatSpec parse_spec(std::string_view text) {
   json doc;
   try {
      doc = json::parse(text.begin(), text.end());
   } catch(const json::parse_error& e) {
      const auto offset = e.byte > 0 ? e.byte - 1 : 0;
      const auto [line, column] = line_column(text, offset);
      std::string what = e.what();
      // nlohmann prefixes its own "[json.exception.parse_error.101] parse error at line.. :"
      if(auto p = what.find(": "); p != std::string::npos) {
         what = what.substr(p + 2);
      }
      throw DslError(ErrorCode::SyntaxError, what, line, column, "");
   }
   return Decoder(text).node(doc, "");
}

std::string serialize_spec(const FormatSpec& spec) {
   return to_json(spec).dump();
}

FormatSpec load_spec(const std::string& path) {
   std::ifstream in(path, std::ios::binary);
   if(!in) {
      throw Error(ErrorCode::Io, "cannot read format file " + path);
   }
   std::stringstream buf;
   buf << in.rdbuf();
   return parse_spec(buf.str());
}

Format load_format(const std::string& path) {
   return compile(load_spec(path));
}

}  // namespace gfpe
