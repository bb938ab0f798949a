#include "gfpe/cipher.hpp"

#include <sodium.h>

#include "gfpe/dsl.hpp"

namespace gfpe {

void CipherConfig::check() const {
   if(max_size && *max_size < 2) {
      throw Error(ErrorCode::InvalidParameter, "maxS must be at least 2");
   }
   if(rounds < 3) {
      throw Error(ErrorCode::InvalidParameter, "at least 3 rounds are required");
   }
   if(walk_budget == 0) {
      throw Error(ErrorCode::InvalidParameter, "walk budget must be positive");
   }
}

IntFpeKey keygen(unsigned bits) {
   if(bits != 128 && bits != 256) {
      throw Error(ErrorCode::UnsupportedKeySize, "key size must be 128 or 256 bits, got " + std::to_string(bits));
   }
   if(sodium_init() < 0) {
      throw Error(ErrorCode::EntropyUnavailable, "libsodium failed to initialize");
   }
   IntFpeKey key;
   key.secret.resize(bits / 8);
   randombytes_buf(key.secret.data(), key.secret.size());
   return key;
}

std::array<std::uint8_t, 32> format_fingerprint(const Format& format, const MaxSize& max) {
   const std::string text = serialize_spec(format.spec()) + "\n" + to_string(max);
   std::array<std::uint8_t, 32> out{};
   crypto_hash_sha256(out.data(), reinterpret_cast<const unsigned char*>(text.data()), text.size());
   return out;
}

namespace {

IntFpeKey with_rounds(IntFpeKey key, unsigned rounds) {
   key.rounds = rounds;
   return key;
}

}  // namespace

Cipher::Cipher(Format format, const IntFpeKey& key, CipherConfig config) :
      Cipher(format, nullptr, std::move(config)) {
   backend_ = make_backend(config_.backend, with_rounds(key, config_.rounds), config_.walk_budget);
}

Cipher::Cipher(Format format, std::shared_ptr<const IntegerCipher> backend, CipherConfig config) :
      config_(std::move(config)), plan_(split(format, config_.max_size)), backend_(std::move(backend)) {
   config_.check();
   fingerprint_ = format_fingerprint(format, config_.max_size);
}

RankVector Cipher::transform(const RankVector& v, std::span<const std::uint8_t> tweak, bool forward,
                             std::vector<SlotTrace>* trace) const {
   RankVector out = v;
   for(std::size_t i = 0; i < v.size(); ++i) {
      const auto variant = to_bytes(v.slots[i].block);
      const auto t = Tweak::for_slot(fingerprint_, v.slots[i].id, tweak, variant);
      const auto r = forward ? backend_->encrypt(t, v.sizes[i], v.ranks[i]) : backend_->decrypt(t, v.sizes[i], v.ranks[i]);
      out.ranks[i] = r.value;
      if(trace) {
         trace->push_back({v.sizes[i], r.steps});
      }
   }
   return out;
}

std::string Cipher::encrypt(std::string_view m, std::span<const std::uint8_t> tweak,
                            std::vector<SlotTrace>* trace) const {
   const auto v = rank_multi(plan_, m);
   return unrank_multi(plan_, transform(v, tweak, true, trace), m);
}

std::string Cipher::decrypt(std::string_view c, std::span<const std::uint8_t> tweak) const {
   const auto v = rank_multi(plan_, c);
   return unrank_multi(plan_, transform(v, tweak, false, nullptr), c);
}

std::string encrypt(const CipherConfig& config, const IntFpeKey& key, const Format& format, std::string_view m) {
   return Cipher(format, key, config).encrypt(m);
}

std::string decrypt(const CipherConfig& config, const IntFpeKey& key, const Format& format, std::string_view c) {
   return Cipher(format, key, config).decrypt(c);
}

}  // namespace gfpe
