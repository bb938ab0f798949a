#include <gtest/gtest.h>

#include <gfpe/catalog.hpp>
#include <gfpe/format.hpp>
#include <gfpe/utf8.hpp>

using namespace gfpe;

namespace {

ErrorCode first_code(const FormatSpec& s) {
   const auto v = validate(s);
   return v.violations.empty() ? ErrorCode::Io : v.violations.front().code;
}

}  // namespace

TEST(CharSetTest, ParseAndNormalize) {
   const auto s = CharSet::parse("c-ea-c\\-");
   EXPECT_EQ(s.size(), 6u);
   EXPECT_EQ(s.to_string(), "\\-a-e");
   EXPECT_EQ(*s.index_of(U'a'), 1u);
   EXPECT_EQ(s.at(0), U'-');
   EXPECT_FALSE(s.contains(U'f'));
   EXPECT_TRUE(CharSet::of(U"ab").disjoint(CharSet::of(U"cd")));
   EXPECT_THROW(CharSet::parse("z-a"), Error);
}

TEST(Utf8Test, StrictDecoding) {
   EXPECT_EQ(utf8::decode("\xc3\xa4"), U"ä");
   EXPECT_THROW(utf8::decode("\xc0\xaf"), Error);      // overlong
   EXPECT_THROW(utf8::decode("\xed\xa0\x80"), Error);  // surrogate
   EXPECT_THROW(utf8::decode("\xf4\x90\x80\x80"), Error);
   EXPECT_EQ(utf8::encode(U"\U0001F600"), "\xf0\x9f\x98\x80");
}

TEST(Validation, ReportsEachRule) {
   EXPECT_EQ(first_code(fmt::fixed({CharSet()})), ErrorCode::EmptyAlphabet);
   EXPECT_EQ(first_code(fmt::union_of({fmt::fixed({CharSet::of(U"ab")}), fmt::fixed({CharSet::of(U"bc")})})),
             ErrorCode::OverlappingUnionAlphabets);
   EXPECT_EQ(first_code(fmt::concat({fmt::var_string(CharSet::of(U"ab"), 1, 2), fmt::var_string(CharSet::of(U"b"), 1, 2)})),
             ErrorCode::InseparableConcat);
   EXPECT_EQ(first_code(fmt::delim_var_string(CharSet::of(U"ab;"), 1, 2, U';')), ErrorCode::DelimiterInAlphabet);
   EXPECT_EQ(first_code(fmt::prefix_free_set({U"a", U"ab"})), ErrorCode::NotPrefixFree);
   EXPECT_EQ(first_code(fmt::string_set({})), ErrorCode::EmptyFormat);
   EXPECT_EQ(first_code(fmt::integral(5, 4)), ErrorCode::InvalidParameter);
   EXPECT_EQ(first_code(fmt::date({2001, 2, 29}, {2002, 1, 1})), ErrorCode::InvalidParameter);
}

TEST(Validation, ViolationPathsPointAtTheNode) {
   const auto v = validate(fmt::concat({fmt::fixed({CharSet::digits()}), fmt::range(fmt::fixed({CharSet()}), U' ', 1, 2)}));
   ASSERT_FALSE(v);
   ASSERT_FALSE(v.violations.empty());
   EXPECT_EQ(v.violations.front().path, "$.parts[1].inner.charsets[0]");
   try {
      compile(fmt::fixed({CharSet()}));
      FAIL();
   } catch(const FormatError& e) {
      EXPECT_EQ(e.code(), ErrorCode::EmptyAlphabet);
   }
}

TEST(Validation, RigidPrefixMakesConcatSeparable) {
   EXPECT_TRUE(validate(fmt::concat({fmt::fixed({CharSet::of(U"ab")}), fmt::var_string(CharSet::of(U"ab"), 0, 3)})));
   EXPECT_TRUE(validate(fmt::concat({fmt::var_string(CharSet::of(U"ab"), 1, 3), fmt::var_string(CharSet::of(U"ab"), 1, 3)},
                                    {U'-'})));
}

TEST(Parse, AddressSplitsIntoSevenPieces) {
   const auto f = compile(catalog::address());
   const std::string s = "Jane Doe 53 Cherry Tree Road New York 12345 NY";
   const auto p = parse(f, s);
   ASSERT_EQ(p.pieces.size(), 7u);
   const std::vector<std::string> want = {"Jane Doe ", "53", " ", "Cherry Tree Road New York ", "12345", " ", "NY"};
   for(std::size_t i = 0; i < 7; ++i) {
      EXPECT_EQ(p.pieces[i].text, want[i]);
      EXPECT_EQ(p.pieces[i].index, i);
   }
   EXPECT_EQ(reassemble(f, p), s);
   EXPECT_THROW(parse(f, "Jane Doe 53 Cherry Road 12345 XX"), Error);
}

TEST(Parse, RangeAndDelimitedConcat) {
   const auto r = compile(fmt::range(fmt::var_string(CharSet::of(U"xy"), 1, 2), U',', 1, 3, false));
   const auto p = parse(r, "x,yy,y");
   EXPECT_EQ(p.repetitions, 3u);
   ASSERT_EQ(p.pieces.size(), 3u);
   EXPECT_EQ(p.pieces[1].text, "yy");
   EXPECT_EQ(reassemble(r, p), "x,yy,y");

   const auto c = compile(fmt::concat({fmt::fixed({CharSet::upper()}), fmt::integral(0, 99)}, {U'-'}));
   const auto q = parse(c, "Q-42");
   ASSERT_EQ(q.pieces.size(), 2u);
   EXPECT_EQ(q.pieces[1].text, "42");
   EXPECT_EQ(reassemble(c, q), "Q-42");
}

TEST(Parse, UnionTagsThePart) {
   const auto u = compile(fmt::union_of({fmt::integral(0, 9), fmt::var_string(CharSet::lower(), 1, 3)}));
   const auto p = parse(u, "abc");
   ASSERT_EQ(p.pieces.size(), 1u);
   EXPECT_EQ(p.pieces[0].index, 1u);
}

TEST(Membership, NullableAndSets) {
   const auto v = compile(fmt::var_string(CharSet::of(U"ab"), 0, 2));
   EXPECT_TRUE(v.nullable());
   EXPECT_TRUE(contains(v, ""));
   const auto s = compile(fmt::string_set({U"red", U"green", U"red"}));
   EXPECT_EQ(s.size(), 2);
   EXPECT_TRUE(contains(s, "green"));
   EXPECT_FALSE(contains(s, "gree"));
   const auto d = compile(fmt::delim_string_set({U"NY|", U"LA|"}, U'|'));
   EXPECT_TRUE(d.rigid());
   EXPECT_TRUE(contains(d, "LA|"));
   EXPECT_FALSE(contains(d, "LA"));
}

TEST(Enumerate, HonoursLimitAndOrder) {
   const auto f = compile(fmt::fixed({CharSet::of(U"ab"), CharSet::of(U"01")}));
   EXPECT_EQ(enumerate(f, 10), (std::vector<std::string>{"a0", "b0", "a1", "b1"}));
   EXPECT_EQ(enumerate(f, 3).size(), 3u);
   const auto ccn = compile(fmt::ccn());
   const auto first = enumerate(ccn, 2);
   EXPECT_EQ(first[0], "0000000000000000");
   // card numbers count up like integers
   EXPECT_EQ(first[1], "0000000000000018");
}
