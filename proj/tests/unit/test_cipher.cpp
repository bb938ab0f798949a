#include <gtest/gtest.h>

#include <random>

#include <gfpe/catalog.hpp>
#include <gfpe/cipher.hpp>
#include <gfpe/rank.hpp>

#include "oracles.hpp"

using namespace gfpe;

namespace {

IntFpeKey fixed_key() {
   return key_from_hex("000102030405060708090a0b0c0d0e0f101112131415161718191a1b1c1d1e1f");
}

CipherConfig with_max(const char* m) {
   CipherConfig c;
   c.max_size = parse_max_size(m);
   return c;
}

}  // namespace

TEST(Keygen, SizesAndErrors) {
   EXPECT_EQ(keygen(128).secret.size(), 16u);
   EXPECT_EQ(keygen(256).secret.size(), 32u);
   EXPECT_NE(keygen().secret, keygen().secret);
   try {
      keygen(192);
      FAIL();
   } catch(const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::UnsupportedKeySize);
   }
}

TEST(CipherTest, TransactionRoundTripsAndKeepsLuhn) {
   const auto f = compile(catalog::transaction());
   const Cipher c(f, fixed_key());
   const std::string m = "15.06.1977, 123456789, 4532015112830366";
   const auto x = c.encrypt(m);
   EXPECT_NE(x, m);
   EXPECT_TRUE(contains(f, x));
   EXPECT_TRUE(oracle::luhn_ok(x.substr(x.size() - 16)));
   EXPECT_EQ(c.decrypt(x), m);
   EXPECT_EQ(c.encrypt(m), x);
}

TEST(CipherTest, CallerTweakAndBoundChangeCiphertext) {
   const auto f = compile(catalog::transaction());
   const Cipher a(f, fixed_key());
   const Cipher b(f, fixed_key(), with_max("2^64"));
   const std::string m = "15.06.1977, 123456789, 4532015112830366";
   const std::uint8_t col[3] = {'c', 'o', 'l'};
   EXPECT_NE(a.encrypt(m), a.encrypt(m, col));
   EXPECT_EQ(a.decrypt(a.encrypt(m, col), col), m);
   EXPECT_NE(a.fingerprint(), b.fingerprint());
   EXPECT_EQ(b.decrypt(b.encrypt(m)), m);
}

TEST(CipherTest, TraceShowsBoundedDomains) {
   const auto f = compile(catalog::address());
   const Cipher c(f, fixed_key(), with_max("2^128"));
   std::vector<SlotTrace> trace;
   const std::string m = "Jane Doe 53 Cherry Tree Road New York 12345 NY";
   const auto x = c.encrypt(m, {}, &trace);
   ASSERT_GT(trace.size(), 1u);
   for(const auto& t : trace) {
      EXPECT_LE(t.domain, pow(BigInt(2), 128));
      EXPECT_GE(t.steps, t.domain > 1 ? 1u : 0u);
   }
   EXPECT_TRUE(contains(f, x));
   EXPECT_EQ(c.decrypt(x), m);
}

TEST(CipherTest, SharedSlotGivesSharedCiphertextSlot) {
   const auto spec = catalog::address();
   const auto f = compile(spec);
   const auto& parts = std::get<spec::Concat>(spec.node).parts;
   CipherConfig cfg;
   cfg.max_size = compile(parts[3]).size() * 100000;
   const Cipher c(f, fixed_key(), cfg);
   const auto a = parse(f, c.encrypt("Jane Doe 53 Cherry Tree Road New York 12345 NY"));
   const auto b = parse(f, c.encrypt("Jane Doe 53 Oak Lane Springfield 99999 OH"));
   const auto d = parse(f, c.encrypt("Jane Doe 54 Oak Lane Springfield 99999 OH"));
   EXPECT_EQ(a.pieces[0].text, b.pieces[0].text);
   EXPECT_EQ(a.pieces[1].text, b.pieces[1].text);
   EXPECT_NE(a.pieces[3].text, b.pieces[3].text);
   // name and number are enciphered together, so a new number hides the name
   EXPECT_NE(b.pieces[0].text, d.pieces[0].text);
   EXPECT_EQ(b.pieces[3].text, d.pieces[3].text);
}

TEST(CipherTest, ErrorsAndConfig) {
   const auto f = compile(fmt::ssn());
   const Cipher c(f, fixed_key());
   try {
      c.encrypt("666000000");
      FAIL();
   } catch(const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::NotInFormat);
   }
   CipherConfig bad;
   bad.rounds = 1;
   EXPECT_THROW(Cipher(f, fixed_key(), bad), Error);
   CipherConfig unknown;
   unknown.backend = "nope";
   EXPECT_THROW(Cipher(f, fixed_key(), unknown), Error);
}

TEST(CipherTest, SingletonFormatIsFixed) {
   const auto f = compile(fmt::integral(7, 7));
   EXPECT_EQ(encrypt({}, fixed_key(), f, "7"), "7");
   EXPECT_EQ(decrypt({}, fixed_key(), f, "7"), "7");
}

TEST(CipherTest, RandomDatesRoundTrip) {
   const auto f = compile(fmt::date({1900, 1, 1}, {2013, 9, 23}));
   const Cipher c(f, fixed_key());
   std::mt19937_64 rng(11);
   for(int i = 0; i < 300; ++i) {
      const auto m = unrank(f, static_cast<unsigned long>(rng() % 41539));
      const auto x = c.encrypt(m);
      ASSERT_TRUE(contains(f, x));
      ASSERT_EQ(c.decrypt(x), m);
   }
}
