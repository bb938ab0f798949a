#include <gtest/gtest.h>

#include <gfpe/catalog.hpp>
#include <gfpe/rank.hpp>
#include <gfpe/split.hpp>

using namespace gfpe;

namespace {

BigInt dname_size() {
   const auto spec = catalog::address();
   return compile(std::get<spec::Concat>(spec.node).parts[3]).size();
}

}  // namespace

TEST(MaxSizeLiteral, Parses) {
   EXPECT_FALSE(parse_max_size("inf").has_value());
   EXPECT_EQ(*parse_max_size("2^64"), pow(BigInt(2), 64));
   EXPECT_EQ(*parse_max_size("1000"), 1000);
   EXPECT_THROW(parse_max_size("1"), Error);
   EXPECT_THROW(parse_max_size("2^x"), Error);
   EXPECT_EQ(to_string(parse_max_size("2^8")), "256");
   EXPECT_EQ(to_string(MaxSize{}), "inf");
}

TEST(Plan, UnboundedIsOneSlot) {
   const auto f = compile(catalog::address());
   const auto plan = split(f, std::nullopt);
   EXPECT_EQ(plan.root().kind, PlanKind::whole);
   EXPECT_EQ(plan.leaf_groups().size(), 1u);
   EXPECT_EQ(variant_path(plan, "Jane Doe 53 Cherry Tree Road New York 12345 NY"), "");
}

TEST(Plan, AddressGroupsNameNumberSpaceThenStreetZipSpaceThenState) {
   const auto f = compile(catalog::address());
   const BigInt max = dname_size() * 100000;
   const auto plan = split(f, max);
   ASSERT_EQ(plan.root().kind, PlanKind::concat_groups);
   const auto& g = plan.root().groups;
   ASSERT_EQ(g.size(), 3u);
   EXPECT_EQ(g[0].first, 0u);
   EXPECT_EQ(g[0].last, 2u);
   EXPECT_EQ(g[1].first, 3u);
   EXPECT_EQ(g[1].last, 5u);
   EXPECT_EQ(g[2].first, 6u);
   EXPECT_EQ(g[2].size, 51);
   EXPECT_EQ(g[1].size, max);
}

TEST(Plan, EverySlotWithinBound) {
   const auto f = compile(catalog::address());
   for(unsigned bits : {64u, 128u, 256u}) {
      const BigInt max = pow(BigInt(2), bits);
      const auto plan = split(f, max);
      for(const auto* g : plan.leaf_groups()) {
         EXPECT_LE(g->size, max);
         EXPECT_FALSE(g->oversized);
      }
      const auto v = rank_multi(plan, "Jane Doe 53 Cherry Tree Road New York 12345 NY");
      ASSERT_EQ(v.ranks.size(), v.sizes.size());
      for(std::size_t i = 0; i < v.size(); ++i) {
         EXPECT_LT(v.ranks[i], v.sizes[i]);
         EXPECT_LE(v.sizes[i], max);
      }
   }
}

TEST(Plan, PrimitiveBlocks) {
   const auto ssn = split(compile(fmt::ssn()), BigInt(10000));
   EXPECT_EQ(ssn.root().kind, PlanKind::ssn_blocks);
   EXPECT_EQ(ssn.leaf_groups().size(), 3u);
   const auto ccn = split(compile(fmt::ccn()), BigInt(1000));
   EXPECT_EQ(ccn.root().kind, PlanKind::ccn_blocks);
   EXPECT_EQ(ccn.leaf_groups().size(), 5u);
   const auto date = split(compile(fmt::date({1900, 1, 1}, {2013, 9, 23})), BigInt(1000));
   EXPECT_EQ(date.root().kind, PlanKind::interval_blocks);
   EXPECT_THROW(split(compile(fmt::string_set({U"a", U"b", U"c"})), BigInt(2)), Error);
}

TEST(Plan, IndivisibleElementsUseBlocksOfMaxWidth) {
   const auto f = compile(fmt::ssn());
   const auto plan = split(f, BigInt(1000));
   // the 9999 serials cannot be divided by position
   EXPECT_TRUE(plan.leaf_groups().back()->oversized);
   const auto v = rank_multi(plan, "123459999");
   ASSERT_EQ(v.size(), 3u);
   EXPECT_EQ(v.slots[2].block, 9);
   EXPECT_EQ(v.sizes[2], 999);
   EXPECT_EQ(v.ranks[2], 998);
   EXPECT_EQ(unrank_multi(plan, v, "123459999"), "123459999");
   EXPECT_NE(variant_path(plan, "123459999"), variant_path(plan, "123450001"));
}

TEST(RankVectorTest, RoundTripsThroughUnrankMulti) {
   const auto f = compile(catalog::transaction());
   for(const char* s : {"01.01.1900, 001010001, 0000000000000000", "23.09.2013, 899999999, 4532015112830366"}) {
      for(const char* m : {"2^16", "1000", "2^64", "inf"}) {
         const auto max = parse_max_size(m);
         const auto v = rank_multi(f, max, s);
         EXPECT_EQ(unrank_multi(f, max, v, s), s) << m;
         for(std::size_t i = 0; i < v.size(); ++i)
            if(max)
               EXPECT_LE(v.sizes[i], *max);
      }
   }
}

TEST(RankVectorTest, ExampleOnlyResolvesVariants) {
   const auto f = compile(fmt::range(fmt::var_string(CharSet::lower(), 1, 3), U' ', 1, 3));
   const BigInt max = 100;
   const auto plan = split(f, max);
   const auto v = rank_multi(plan, "ab cd ");
   // any example with the same variant choices reproduces the message
   EXPECT_EQ(unrank_multi(plan, v, "xy zw "), "ab cd ");
   EXPECT_EQ(variant_path(plan, "ab cd "), variant_path(plan, "xy zw "));
   EXPECT_NE(variant_path(plan, "ab cd "), variant_path(plan, "abc d "));
   try {
      unrank_multi(plan, v, "AB");
      FAIL();
   } catch(const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::ExampleFormatMismatch);
   }
   RankVector shorter = v;
   shorter.ranks.pop_back();
   shorter.sizes.pop_back();
   shorter.slots.pop_back();
   try {
      unrank_multi(plan, shorter, "ab cd ");
      FAIL();
   } catch(const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::VectorShapeMismatch);
   }
}

TEST(RankVectorTest, SingleSlotEqualsPlainRank) {
   const auto f = compile(catalog::transaction());
   const std::string s = "15.06.1977, 123456789, 4532015112830366";
   const auto v = rank_multi(f, std::nullopt, s);
   ASSERT_EQ(v.size(), 1u);
   EXPECT_EQ(v.ranks[0], rank(f, s).value);
   EXPECT_EQ(v.sizes[0], f.size());
}
