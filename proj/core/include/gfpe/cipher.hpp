#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "gfpe/format.hpp"
#include "gfpe/int_fpe.hpp"
#include "gfpe/split.hpp"

namespace gfpe {

struct CipherConfig {
   MaxSize max_size;  // nullopt: no splitting
   unsigned rounds = 12;
   std::string backend = "fe1";
   std::uint64_t walk_budget = default_walk_budget;

   void check() const;  // throws Error(InvalidParameter)
};

// Uniform secret from the OS generator. bits must be 128 or 256.
IntFpeKey keygen(unsigned bits = 256);

// SHA-256 over the canonical spec text, a newline, and maxS ("inf" if unbounded).
std::array<std::uint8_t, 32> format_fingerprint(const Format& format, const MaxSize& max);

// Per-slot record of one encryption, for tests and benchmarks.
struct SlotTrace {
   BigInt domain;
   std::uint64_t steps = 0;
};

// Rank-then-encipher over one format. Immutable and thread-safe.
class Cipher {
public:
   Cipher(Format format, const IntFpeKey& key, CipherConfig config = {});
   // Uses the given integer cipher instead of config.backend.
   Cipher(Format format, std::shared_ptr<const IntegerCipher> backend, CipherConfig config = {});

   // Throws Error(NotInFormat) for non-members. The optional tweak binds the
   // ciphertext to a caller context (for example a column name).
   std::string encrypt(std::string_view m, std::span<const std::uint8_t> tweak = {},
                       std::vector<SlotTrace>* trace = nullptr) const;
   std::string decrypt(std::string_view c, std::span<const std::uint8_t> tweak = {}) const;

   const Format& format() const noexcept { return plan_.format(); }
   const SplitPlan& plan() const noexcept { return plan_; }
   const CipherConfig& config() const noexcept { return config_; }
   const std::array<std::uint8_t, 32>& fingerprint() const noexcept { return fingerprint_; }

private:
   RankVector transform(const RankVector& v, std::span<const std::uint8_t> tweak, bool forward,
                        std::vector<SlotTrace>* trace) const;

   CipherConfig config_;
   SplitPlan plan_;
   std::shared_ptr<const IntegerCipher> backend_;
   std::array<std::uint8_t, 32> fingerprint_{};
};

std::string encrypt(const CipherConfig& config, const IntFpeKey& key, const Format& format, std::string_view m);
std::string decrypt(const CipherConfig& config, const IntFpeKey& key, const Format& format, std::string_view c);

}  // namespace gfpe
