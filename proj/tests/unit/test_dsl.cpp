#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include <gfpe/catalog.hpp>
#include <gfpe/dsl.hpp>

using namespace gfpe;

#ifndef GFPE_CORPUS_DIR
#error "GFPE_CORPUS_DIR must be defined"
#endif

namespace {

template <class F>
DslError dsl_error(F&& f) {
   try {
      f();
   } catch(const DslError& e) {
      return e;
   }
   ADD_FAILURE() << "no DslError";
   return DslError(ErrorCode::Io, "", 0, 0, "");
}

}  // namespace

TEST(Dsl, CanonicalFormIsSortedAndExplicit) {
   EXPECT_EQ(serialize_spec(fmt::fixed({CharSet::parse("ba")})), R"({"charsets":["ab"],"type":"fixed"})");
   EXPECT_EQ(serialize_spec(parse_spec(R"({"type":"date","min":"2000-01-01","max":"2000-12-31"})")),
             R"({"granularity":"day","max":"2000-12-31","min":"2000-01-01","type":"date"})");
   EXPECT_EQ(serialize_spec(parse_spec(R"({"type":"stringset","strings":["b","a","b"]})")),
             R"({"strings":["b","a"],"type":"stringset"})");
   EXPECT_EQ(serialize_spec(fmt::integral(parse_bigint("-99999999999999999999"), 0)),
             R"({"max":0,"min":"-99999999999999999999","type":"integral"})");
}

TEST(Dsl, CorpusRoundTripsThroughCanonicalText) {
   std::size_t n = 0;
   for(const auto& entry : std::filesystem::directory_iterator(GFPE_CORPUS_DIR)) {
      const auto spec = load_spec(entry.path().string());
      const auto text = serialize_spec(spec);
      const auto again = parse_spec(text);
      EXPECT_EQ(serialize_spec(again), text) << entry.path();
      EXPECT_TRUE(validate(again)) << entry.path();
      ++n;
   }
   EXPECT_GE(n, 25u);
}

TEST(Dsl, CatalogFormatsSurviveSerialization) {
   for(const auto& spec : {catalog::address(), catalog::transaction(), catalog::transaction_sgfpe()}) {
      const auto back = parse_spec(serialize_spec(spec));
      EXPECT_EQ(compile(back).size(), compile(spec).size());
   }
}

TEST(Dsl, SyntaxErrorHasPosition) {
   const auto e = dsl_error([] { parse_spec("{\n  \"type\": \"fixed\",\n  \"charsets\": [\"a\",]\n}"); });
   EXPECT_EQ(e.code(), ErrorCode::SyntaxError);
   EXPECT_EQ(e.line(), 3u);
   EXPECT_GT(e.column(), 1u);
}

TEST(Dsl, UnknownTypeAndBadParameterCarryPointers) {
   auto e = dsl_error([] { parse_spec(R"({"type":"concat","parts":[{"type":"ssn"},{"type":"iban"}]})"); });
   EXPECT_EQ(e.code(), ErrorCode::UnknownNodeType);
   EXPECT_EQ(e.pointer(), "/parts/1/type");
   EXPECT_EQ(e.line(), 1u);

   e = dsl_error([] { parse_spec("{\"type\":\"range\",\n \"inner\":{\"type\":\"ssn\"},\"delim\":\" \",\"min\":1,\"max\":2,\n \"colour\":1}"); });
   EXPECT_EQ(e.code(), ErrorCode::BadParameter);
   EXPECT_EQ(e.pointer(), "/colour");
   EXPECT_EQ(e.line(), 3u);

   e = dsl_error([] { parse_spec(R"({"type":"varstring","alphabet":"a-z","min":-1,"max":2})"); });
   EXPECT_EQ(e.pointer(), "/min");
   e = dsl_error([] { parse_spec(R"({"type":"delim_stringset","strings":["a"]})"); });
   EXPECT_EQ(e.code(), ErrorCode::BadParameter);
   e = dsl_error([] { parse_spec(R"({"type":"date","min":"2000-1-1","max":"2000-12-31"})"); });
   EXPECT_EQ(e.pointer(), "/min");
}

TEST(Dsl, SemanticRulesAreLeftToValidation) {
   const auto spec = parse_spec(R"({"type":"integral","min":5,"max":4})");
   EXPECT_FALSE(validate(spec));
}

TEST(Dsl, MissingFile) {
   try {
      load_spec("/nonexistent/x.fmt");
      FAIL();
   } catch(const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::Io);
   }
}
