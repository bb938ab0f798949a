#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gfpe/bigint.hpp"
#include "gfpe/charset.hpp"
#include "gfpe/error.hpp"

namespace gfpe {

// Value-semantic owning pointer, used to nest a FormatSpec inside itself.
template <class T>
class Box {
public:
   Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}
   Box(const Box& other) : ptr_(std::make_unique<T>(*other.ptr_)) {}
   Box(Box&&) noexcept = default;
   Box& operator=(const Box& other) {
      ptr_ = std::make_unique<T>(*other.ptr_);
      return *this;
   }
   Box& operator=(Box&&) noexcept = default;

   const T& operator*() const { return *ptr_; }
   const T* operator->() const { return ptr_.get(); }
   T& operator*() { return *ptr_; }

   bool operator==(const Box& other) const { return *ptr_ == *other.ptr_; }

private:
   std::unique_ptr<T> ptr_;
};

enum class Granularity { day, second };

// Proleptic Gregorian calendar, no leap seconds.
struct CivilDateTime {
   int year = 1970;
   int month = 1;
   int day = 1;
   int hour = 0;
   int minute = 0;
   int second = 0;

   auto operator<=>(const CivilDateTime&) const = default;
};

struct FormatSpec;

namespace spec {

struct Ssn {
   bool operator==(const Ssn&) const = default;
};

struct Ccn {
   bool operator==(const Ccn&) const = default;
};

// Members render as "dd.mm.yyyy" (day) or "dd.mm.yyyy hh:mm:ss" (second).
struct Date {
   CivilDateTime min;
   CivilDateTime max;
   Granularity granularity = Granularity::day;
   bool operator==(const Date&) const = default;
};

struct FixedString {
   std::vector<CharSet> charsets;
   bool operator==(const FixedString&) const = default;
};

// Members are s·delim with min <= |s| <= max over the alphabet.
struct DelimVarString {
   std::size_t min = 0;
   std::size_t max = 0;
   CharSet alphabet;
   char32_t delim = U' ';
   bool operator==(const DelimVarString&) const = default;
};

struct VarString {
   std::size_t min = 0;
   std::size_t max = 0;
   CharSet alphabet;
   bool operator==(const VarString&) const = default;
};

// With a delimiter every member ends with it and it occurs nowhere else.
// Without one the set must be prefix-free.
struct DelimStringSet {
   std::vector<std::u32string> strings;
   std::optional<char32_t> delim;
   bool operator==(const DelimStringSet&) const = default;
};

struct StringSet {
   std::vector<std::u32string> strings;
   bool operator==(const StringSet&) const = default;
};

// Members render as canonical decimal integers.
struct IntegralDomain {
   BigInt min;
   BigInt max;
   bool operator==(const IntegralDomain& other) const { return min == other.min && max == other.max; }
};

struct Union {
   std::vector<FormatSpec> parts;
   bool operator==(const Union&) const;
};

// delimiters is empty, or holds exactly parts.size() - 1 characters.
struct Concat {
   std::vector<FormatSpec> parts;
   std::vector<char32_t> delimiters;
   bool operator==(const Concat&) const;
};

// s_1 d s_2 d ... s_k d with min <= k <= max; the final d is dropped when
// last_delimited is false.
struct Range {
   Box<FormatSpec> inner;
   char32_t delim = U' ';
   std::size_t min = 1;
   std::size_t max = 1;
   bool last_delimited = true;
   bool operator==(const Range&) const;
};

}  // namespace spec

enum class NodeKind {
   ssn,
   ccn,
   date,
   fixed_string,
   delim_var_string,
   var_string,
   delim_string_set,
   string_set,
   integral,
   union_of,
   concat,
   range,
};

std::string_view to_string(NodeKind kind);

struct FormatSpec {
   using Node = std::variant<spec::Ssn, spec::Ccn, spec::Date, spec::FixedString, spec::DelimVarString,
                             spec::VarString, spec::DelimStringSet, spec::StringSet, spec::IntegralDomain,
                             spec::Union, spec::Concat, spec::Range>;
   Node node;

   NodeKind kind() const noexcept { return static_cast<NodeKind>(node.index()); }
   bool operator==(const FormatSpec&) const = default;
};

// Builders for hand-written specs.
namespace fmt {
FormatSpec ssn();
FormatSpec ccn();
FormatSpec date(CivilDateTime min, CivilDateTime max, Granularity granularity = Granularity::day);
FormatSpec fixed(std::vector<CharSet> charsets);
FormatSpec literal(std::u32string_view text);  // fixed string of singleton charsets
FormatSpec var_string(CharSet alphabet, std::size_t min, std::size_t max);
FormatSpec delim_var_string(CharSet alphabet, std::size_t min, std::size_t max, char32_t delim);
FormatSpec string_set(std::vector<std::u32string> strings);
FormatSpec delim_string_set(std::vector<std::u32string> strings, char32_t delim);
FormatSpec prefix_free_set(std::vector<std::u32string> strings);
FormatSpec integral(BigInt min, BigInt max);
FormatSpec union_of(std::vector<FormatSpec> parts);
FormatSpec concat(std::vector<FormatSpec> parts, std::vector<char32_t> delimiters = {});
FormatSpec range(FormatSpec inner, char32_t delim, std::size_t min, std::size_t max, bool last_delimited = true);
}  // namespace fmt

namespace detail {
struct FormatNode;
}

// A validated, immutable format. Cheap to copy; safe to share across threads.
class Format {
public:
   NodeKind kind() const noexcept;
   // This node's spec; string sets are deduplicated.
   const FormatSpec& spec() const noexcept;
   const BigInt& size() const noexcept;
   // Every character that can occur in a member.
   const CharSet& alphabet() const noexcept;
   // Prefix-parsable primitive.
   bool rigid() const noexcept;
   // Contains the empty string.
   bool nullable() const noexcept;
   std::span<const Format> children() const noexcept;

   const detail::FormatNode& node() const noexcept { return *node_; }

   bool same_node(const Format& other) const noexcept { return node_ == other.node_; }

private:
   friend struct detail::FormatNode;
   explicit Format(std::shared_ptr<const detail::FormatNode> node) : node_(std::move(node)) {}

   std::shared_ptr<const detail::FormatNode> node_;
};

struct Validation {
   std::optional<Format> format;
   std::vector<Violation> violations;

   explicit operator bool() const noexcept { return format.has_value(); }
};

// Reports every violated rule with its node path.
Validation validate(const FormatSpec& spec);

// validate() that throws FormatError on any violation.
Format compile(const FormatSpec& spec);

bool contains(const Format& format, std::string_view text);

struct Piece {
   std::string text;
   std::size_t index = 0;  // sub-format index (Concat/Union part); 0 otherwise
   bool operator==(const Piece&) const = default;
};

struct ParsePieces {
   std::vector<Piece> pieces;
   std::size_t repetitions = 0;  // Range only: k
};

// One-pass split into sub-format pieces. Delimiters are not part of pieces.
// Throws Error(ParseFailure) if the text is not a member.
ParsePieces parse(const Format& format, std::string_view text);

// Inverse of parse: re-attaches delimiters in declared order.
std::string reassemble(const Format& format, const ParsePieces& pieces);

// Members in rank order, up to limit. Built by direct structural generation
// (odometers and calendar stepping), independent of the rank arithmetic, so
// tests can use it as an oracle.
std::vector<std::string> enumerate(const Format& format, std::size_t limit);

}  // namespace gfpe
