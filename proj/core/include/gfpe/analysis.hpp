#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "gfpe/bigint.hpp"
#include "gfpe/cipher.hpp"
#include "gfpe/format.hpp"
#include "gfpe/int_fpe.hpp"
#include "gfpe/split.hpp"

namespace gfpe {

enum class CharClass { upper, lower, digit, literal };

// Per-position character class of a string; literal positions keep their
// character. Equal signatures map to the same simplified format.
struct Signature {
   std::vector<CharClass> classes;
   std::u32string literals;  // the character at literal positions, 0 elsewhere

   // "U", "l", "d" per class position, the character itself for literals.
   std::string to_string() const;
   bool operator==(const Signature&) const = default;
};

Signature sgfpe_signature(std::string_view s);

// Fixed-length format of location-specific charsets: A-Z, a-z, 0-9 or {c}.
FormatSpec sgfpe_format(const Signature& signature);

// The simplified-format baseline: every string is enciphered inside the
// fixed-length format of its own signature. Thread-safe.
class SgfpeCipher {
public:
   explicit SgfpeCipher(IntFpeKey key, unsigned rounds = 12);

   std::string encrypt(std::string_view s) const;
   std::string decrypt(std::string_view s) const;

private:
   std::shared_ptr<const Cipher> cipher_for(std::string_view s) const;

   IntFpeKey key_;
   unsigned rounds_;
   mutable std::mutex mutex_;
   mutable std::unordered_map<std::string, std::shared_ptr<const Cipher>> cache_;
};

std::string sgfpe_encrypt(const IntFpeKey& key, std::string_view s);
std::string sgfpe_decrypt(const IntFpeKey& key, std::string_view s);

struct CurvePoint {
   double threshold;
   double fraction;  // share of records identifiable with probability >= threshold
};

struct IdentificationCurve {
   std::vector<CurvePoint> points;  // ascending threshold
   std::size_t records = 0;
   std::size_t groups = 0;

   double fraction_at(double threshold) const;

   std::vector<std::size_t> group_sizes;  // per record: size of its group
};

// Records sharing a key form one group; each is identified with probability
// 1 / group size. Thresholds are every distinct probability plus a decade grid.
IdentificationCurve curve_from_keys(const std::vector<std::string>& keys);
IdentificationCurve curve_from_group_sizes(const std::vector<std::size_t>& group_of_record);

IdentificationCurve sgfpe_curve(const std::vector<std::string>& records);
// Throws Error(NotInFormat) for records outside the plan's format.
IdentificationCurve gfpe_curve(const std::vector<std::string>& records, const SplitPlan& plan);

// Header "threshold,fraction".
void write_curve_csv(const IdentificationCurve& curve, std::ostream& out);

struct MrEstimate {
   double advantage = 0;
   double adversary_success = 0;
   double guesser_success = 0;
   double sigma = 0;  // binomial standard deviation of the estimate
   std::uint64_t trials = 0;
};

// Message recovery on the sparse format {a, aa, ..., a^k} under the
// baseline: the adversary answers the message whose length matches the
// ciphertext, the degenerate guesser answers uniformly at random.
MrEstimate mr_advantage_sparse(std::size_t k, std::uint64_t trials, std::uint64_t seed, const IntFpeKey& key);

// Number of strings of length 1..max_length over an alphabet of the given size.
BigInt sparse_message_count(unsigned alphabet, unsigned max_length);

struct BenchReport {
   std::uint64_t trials = 0;
   double al_cy = 0;  // mean permutation applications per encryption
   mpq_class expansion;
   double t_rank_us = 0;
   double t_int_enc_us = 0;  // one walk step: permutation plus membership test
   double t_unrank_us = 0;
   double t_enc_us = 0;
   std::map<std::uint64_t, std::uint64_t> walk_histogram;
};

mpq_class exact_expansion(const Format& original, const Format& simplified);

// Encrypts uniformly sampled members of original by ranking in simplified
// and cycle-walking until the result is back in original. Each trial uses a
// fresh tweak. Throws Error(NotSubset) if a sampled member of original is
// not in simplified.
BenchReport expansion_and_cycles(const Format& original, const Format& simplified, std::uint64_t trials,
                                 const IntFpeKey& key, std::uint64_t seed);

void write_bench_csv(const BenchReport& report, std::ostream& out);

// Synthetic "name number street zip state" records that are members of
// catalog::address(max_word_letters).
std::vector<std::string> synth_addresses(std::size_t count, std::uint64_t seed, std::size_t max_word_letters = 15);

}  // namespace gfpe
