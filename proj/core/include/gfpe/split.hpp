#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gfpe/bigint.hpp"
#include "gfpe/format.hpp"

namespace gfpe {

// Upper bound on any integer-FPE domain; nullopt means unbounded.
using MaxSize = std::optional<BigInt>;

// Parses "inf", decimal or "2^k".
MaxSize parse_max_size(std::string_view text);
std::string to_string(const MaxSize& max);

enum class PlanKind {
   whole,            // the format is one slot
   union_groups,     // runs of union parts
   concat_groups,    // runs of concatenated parts
   length_groups,    // runs of repetition counts / string lengths (Range, VarString, DelimVarString)
   repeat,           // one oversized repetition count: k inner copies
   char_blocks,      // one oversized string length: runs of positions
   fixed_blocks,     // FixedString positions
   ssn_blocks,       // area, group, serial
   ccn_blocks,       // the 15 payload digits; the check digit is recomputed
   interval_blocks,  // IntegralDomain / Date: contiguous rank blocks of width maxS
};

std::string_view to_string(PlanKind kind);

struct PlanNode;

// A run [first, last] of parts, counts or positions. A leaf group is one
// slot; a group holding a single element larger than maxS either recurses
// (sub) or, if the element cannot be divided further, is oversized and its
// rank is enciphered in contiguous blocks of width maxS.
struct PlanGroup {
   std::size_t first = 0;
   std::size_t last = 0;
   BigInt size;
   std::shared_ptr<const PlanNode> sub;
   bool oversized = false;
   std::uint64_t slot = 0;  // structural slot id, unique within the plan
};

struct PlanNode {
   PlanKind kind = PlanKind::whole;
   Format format;
   std::uint64_t id = 0;
   std::size_t count = 0;  // repeat: k; char_blocks: length
   std::vector<PlanGroup> groups;
};

class SplitPlan {
public:
   const PlanNode& root() const noexcept { return *root_; }
   const Format& format() const noexcept { return root_->format; }
   const MaxSize& max_size() const noexcept { return max_; }
   // Every leaf slot, depth-first; for inspection and tests.
   std::vector<const PlanGroup*> leaf_groups() const;

private:
   friend SplitPlan split(const Format& format, const MaxSize& max);
   std::shared_ptr<const PlanNode> root_;
   MaxSize max_;
};

// Greedy left-to-right grouping, recursing into oversized elements.
// Throws Error(UnsplittableAtom) for string sets larger than maxS.
SplitPlan split(const Format& format, const MaxSize& max);

struct SlotId {
   std::uint64_t id = 0;
   BigInt block;  // interval block index; 0 elsewhere
   bool operator==(const SlotId& other) const { return id == other.id && block == other.block; }
};

struct RankVector {
   std::vector<BigInt> ranks;
   std::vector<BigInt> sizes;
   std::vector<SlotId> slots;

   std::size_t size() const noexcept { return ranks.size(); }
};

// Depth-first, left-to-right slot order. Throws Error(NotInFormat).
RankVector rank_multi(const SplitPlan& plan, std::string_view m);
RankVector rank_multi(const Format& format, const MaxSize& max, std::string_view m);

// f resolves every variant choice. Throws ExampleFormatMismatch if f is not
// a member and VectorShapeMismatch if v does not fit f's slots.
std::string unrank_multi(const SplitPlan& plan, const RankVector& v, std::string_view f);
std::string unrank_multi(const Format& format, const MaxSize& max, const RankVector& v, std::string_view f);

// The variant choices a ciphertext of m exposes (union groups, count groups,
// interval blocks), as a stable key. Empty when the plan is a single slot.
std::string variant_path(const SplitPlan& plan, std::string_view m);

}  // namespace gfpe
