#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gfpe/bigint.hpp"
#include "gfpe/error.hpp"

namespace gfpe {

struct IntFpeKey {
   std::vector<std::uint8_t> secret;  // 16 or 32 bytes
   unsigned rounds = 12;

   void check() const;  // throws Error(BadKey)
};

// Key file: hex secret followed by a newline.
std::string key_to_hex(const IntFpeKey& key);
IntFpeKey key_from_hex(std::string_view text, unsigned rounds = 12);
void save_key(const IntFpeKey& key, const std::string& path);
IntFpeKey load_key(const std::string& path, unsigned rounds = 12);

struct Tweak {
   std::vector<std::uint8_t> bytes;

   // Binds a permutation to one format (by fingerprint) and one split slot.
   // variant distinguishes the blocks of a contiguous interval split.
   static Tweak for_slot(std::span<const std::uint8_t> fingerprint, std::uint64_t slot,
                         std::span<const std::uint8_t> caller = {}, std::span<const std::uint8_t> variant = {});
   bool operator==(const Tweak&) const = default;
};

struct BalancedFactor {
   BigInt a;
   BigInt b;
   BigInt n_prime;  // a * b >= N
};

// a = floor(sqrt(N)), b = ceil(N / a); (2, 2) below 4. (a, b) is the most
// balanced divisor pair of N' and N' < N + a.
BalancedFactor balanced_factor(const BigInt& n);

// FE1-style Feistel permutation of [0, N') for N' = balanced_factor(N).n_prime.
class Fe1Permutation {
public:
   Fe1Permutation(const IntFpeKey& key, const Tweak& tweak, const BigInt& n);
   ~Fe1Permutation();
   Fe1Permutation(const Fe1Permutation&) = delete;
   Fe1Permutation& operator=(const Fe1Permutation&) = delete;

   const BigInt& domain() const noexcept { return factor_.n_prime; }

   // Throw Error(InputOutOfDomain) unless 0 <= x < N'.
   BigInt encrypt(const BigInt& x) const;
   BigInt decrypt(const BigInt& y) const;

private:
   BigInt round_value(unsigned round, const BigInt& r) const;

   struct State;
   std::unique_ptr<State> state_;
   BalancedFactor factor_;
   unsigned rounds_;
};

BigInt feistel_encrypt(const IntFpeKey& key, const Tweak& tweak, const BigInt& n, const BigInt& x);
BigInt feistel_decrypt(const IntFpeKey& key, const Tweak& tweak, const BigInt& n, const BigInt& y);

struct WalkResult {
   BigInt value;
   std::uint64_t steps = 0;  // permutation applications
};

inline constexpr std::uint64_t default_walk_budget = 1000000;

// Permutation of [0, M) by cycle-walking the Feistel permutation over N' >= M.
WalkResult cycle_walk_encrypt(const IntFpeKey& key, const Tweak& tweak, const BigInt& m, const BigInt& x,
                              std::uint64_t budget = default_walk_budget);
WalkResult cycle_walk_decrypt(const IntFpeKey& key, const Tweak& tweak, const BigInt& m, const BigInt& y,
                              std::uint64_t budget = default_walk_budget);

// A keyed family of permutations of [0, M), selected by tweak.
class IntegerCipher {
public:
   virtual ~IntegerCipher() = default;
   virtual std::string_view name() const = 0;
   virtual WalkResult encrypt(const Tweak& tweak, const BigInt& m, const BigInt& x) const = 0;
   virtual WalkResult decrypt(const Tweak& tweak, const BigInt& m, const BigInt& y) const = 0;
};

using BackendFactory = std::function<std::unique_ptr<IntegerCipher>(const IntFpeKey&, std::uint64_t walk_budget)>;

// "fe1" is registered by default.
void register_backend(const std::string& name, BackendFactory factory);
std::unique_ptr<IntegerCipher> make_backend(const std::string& name, const IntFpeKey& key,
                                            std::uint64_t walk_budget = default_walk_budget);
std::vector<std::string> backend_names();

}  // namespace gfpe
