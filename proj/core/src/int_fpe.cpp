#include "gfpe/int_fpe.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#include <sodium.h>

#include "gfpe/error.hpp"

namespace gfpe {

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
   for(int shift = 24; shift >= 0; shift -= 8) {
      out.push_back(static_cast<std::uint8_t>(v >> shift));
   }
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
   for(int shift = 56; shift >= 0; shift -= 8) {
      out.push_back(static_cast<std::uint8_t>(v >> shift));
   }
}

void put_field(std::vector<std::uint8_t>& out, std::span<const std::uint8_t> bytes) {
   put_u32(out, static_cast<std::uint32_t>(bytes.size()));
   out.insert(out.end(), bytes.begin(), bytes.end());
}

void ensure_sodium() {
   if(sodium_init() < 0) {
      throw Error(ErrorCode::EntropyUnavailable, "libsodium failed to initialize");
   }
}

}  // namespace

void IntFpeKey::check() const {
   if(secret.size() != 16 && secret.size() != 32) {
      throw Error(ErrorCode::BadKey, "secret must be 16 or 32 bytes, got " + std::to_string(secret.size()));
   }
   if(rounds < 3) {
      throw Error(ErrorCode::BadKey, "at least 3 rounds are required");
   }
}

std::string key_to_hex(const IntFpeKey& key) {
   key.check();
   std::string hex(key.secret.size() * 2 + 1, '\0');
   sodium_bin2hex(hex.data(), hex.size(), key.secret.data(), key.secret.size());
   hex.pop_back();
   return hex + "\n";
}

IntFpeKey key_from_hex(std::string_view text, unsigned rounds) {
   while(!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
      text.remove_suffix(1);
   }
   while(!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
      text.remove_prefix(1);
   }
   IntFpeKey key;
   key.rounds = rounds;
   key.secret.resize(text.size() / 2);
   std::size_t len = 0;
   const char* end = nullptr;
   if(sodium_hex2bin(key.secret.data(), key.secret.size(), text.data(), text.size(), nullptr, &len, &end) != 0 ||
      end != text.data() + text.size()) {
      throw Error(ErrorCode::BadKey, "key is not valid hex");
   }
   key.secret.resize(len);
   key.check();
   return key;
}

void save_key(const IntFpeKey& key, const std::string& path) {
   std::ofstream out(path, std::ios::binary | std::ios::trunc);
   if(!out) {
      throw Error(ErrorCode::Io, "cannot write key file " + path);
   }
   out << key_to_hex(key);
}

IntFpeKey load_key(const std::string& path, unsigned rounds) {
   std::ifstream in(path, std::ios::binary);
   if(!in) {
      throw Error(ErrorCode::Io, "cannot read key file " + path);
   }
   std::stringstream buf;
   buf << in.rdbuf();
   return key_from_hex(buf.str(), rounds);
}

Tweak Tweak::for_slot(std::span<const std::uint8_t> fingerprint, std::uint64_t slot,
                      std::span<const std::uint8_t> caller, std::span<const std::uint8_t> variant) {
   Tweak t;
   put_field(t.bytes, fingerprint);
   put_u64(t.bytes, slot);
   put_field(t.bytes, caller);
   put_field(t.bytes, variant);
   return t;
}

BalancedFactor balanced_factor(const BigInt& n) {
   if(n < 1) {
      throw Error(ErrorCode::InvalidParameter, "balanced_factor needs N >= 1");
   }
   if(n < 4) {
      return {BigInt(2), BigInt(2), BigInt(4)};
   }
   BalancedFactor f;
   mpz_sqrt(f.a.get_mpz_t(), n.get_mpz_t());
   mpz_cdiv_q(f.b.get_mpz_t(), n.get_mpz_t(), f.a.get_mpz_t());
   f.n_prime = f.a * f.b;
   return f;
}

struct Fe1Permutation::State {
   crypto_auth_hmacsha256_state prefix;
   std::size_t bits = 0;  // of a - 1
   std::size_t nbytes = 0;
   std::uint64_t small_a = 0;  // a when it fits in 64 bits, else 0
};

Fe1Permutation::Fe1Permutation(const IntFpeKey& key, const Tweak& tweak, const BigInt& n) :
      state_(std::make_unique<State>()), factor_(balanced_factor(n)), rounds_(key.rounds) {
   key.check();
   ensure_sodium();
   std::vector<std::uint8_t> header = {'g', 'f', 'p', 'e', '.', 'f', 'e', '1'};
   put_field(header, to_bytes(factor_.n_prime));
   put_field(header, tweak.bytes);
   crypto_auth_hmacsha256_init(&state_->prefix, key.secret.data(), key.secret.size());
   crypto_auth_hmacsha256_update(&state_->prefix, header.data(), header.size());
   state_->bits = bit_length(factor_.a - 1);
   state_->nbytes = (state_->bits + 7) / 8;
   if(const auto a = to_u64(factor_.a)) {
      state_->small_a = *a;
   }
}

Fe1Permutation::~Fe1Permutation() {
   sodium_memzero(state_.get(), sizeof(State));
}

namespace {

void store_u32(std::uint8_t* out, std::uint32_t v) {
   out[0] = static_cast<std::uint8_t>(v >> 24);
   out[1] = static_cast<std::uint8_t>(v >> 16);
   out[2] = static_cast<std::uint8_t>(v >> 8);
   out[3] = static_cast<std::uint8_t>(v);
}

}  // namespace

// Uniform in [0, a): masked HMAC output with rejection. Each HMAC input is
// round || len(r) || r || counter.
BigInt Fe1Permutation::round_value(unsigned round, const BigInt& r) const {
   const State& st = *state_;
   if(st.bits == 0) {
      return 0;
   }
   const std::size_t rlen = r == 0 ? 0 : (mpz_sizeinbase(r.get_mpz_t(), 2) + 7) / 8;
   std::uint8_t small[96];
   std::vector<std::uint8_t> large;
   std::uint8_t* msg = small;
   if(rlen + 12 > sizeof(small)) {
      large.resize(rlen + 12);
      msg = large.data();
   }
   store_u32(msg, round);
   store_u32(msg + 4, static_cast<std::uint32_t>(rlen));
   if(rlen) {
      mpz_export(msg + 8, nullptr, 1, 1, 1, 0, r.get_mpz_t());
   }
   std::uint8_t* counter_at = msg + 8 + rlen;
   const std::size_t msg_len = rlen + 12;
   const unsigned spare = static_cast<unsigned>(st.nbytes * 8 - st.bits);

   std::uint32_t counter = 0;
   std::uint8_t mac[crypto_auth_hmacsha256_BYTES];
   auto next_block = [&] {
      store_u32(counter_at, counter++);
      auto h = st.prefix;
      crypto_auth_hmacsha256_update(&h, msg, msg_len);
      crypto_auth_hmacsha256_final(&h, mac);
   };

   if(st.small_a) {
      // Candidates are consecutive nbytes chunks of each block.
      for(;;) {
         next_block();
         for(std::size_t at = 0; at + st.nbytes <= sizeof(mac); at += st.nbytes) {
            std::uint64_t v = mac[at] & (0xFF >> spare);
            for(std::size_t i = 1; i < st.nbytes; ++i) {
               v = (v << 8) | mac[at + i];
            }
            if(v < st.small_a) {
               return BigInt(static_cast<unsigned long>(v));
            }
         }
      }
   }

   std::vector<std::uint8_t> stream;
   for(;;) {
      stream.clear();
      while(stream.size() < st.nbytes) {
         next_block();
         stream.insert(stream.end(), mac, mac + sizeof(mac));
      }
      stream.resize(st.nbytes);
      stream[0] &= static_cast<std::uint8_t>(0xFF >> spare);
      BigInt v = from_bytes(stream);
      if(v < factor_.a) {
         return v;
      }
   }
}

BigInt Fe1Permutation::encrypt(const BigInt& x) const {
   if(x < 0 || x >= factor_.n_prime) {
      throw Error(ErrorCode::InputOutOfDomain, "value outside [0, N')");
   }
   const BigInt& a = factor_.a;
   const BigInt& b = factor_.b;
   BigInt value = x;
   BigInt left;
   BigInt right;
   for(unsigned i = 0; i != rounds_; ++i) {
      mpz_fdiv_qr(left.get_mpz_t(), right.get_mpz_t(), value.get_mpz_t(), b.get_mpz_t());
      BigInt w = (left + round_value(i, right)) % a;
      value = a * right + w;
   }
   return value;
}

BigInt Fe1Permutation::decrypt(const BigInt& y) const {
   if(y < 0 || y >= factor_.n_prime) {
      throw Error(ErrorCode::InputOutOfDomain, "value outside [0, N')");
   }
   const BigInt& a = factor_.a;
   const BigInt& b = factor_.b;
   BigInt value = y;
   BigInt right;
   BigInt w;
   for(unsigned i = rounds_; i != 0; --i) {
      mpz_fdiv_qr(right.get_mpz_t(), w.get_mpz_t(), value.get_mpz_t(), a.get_mpz_t());
      BigInt left = w - round_value(i - 1, right);
      mpz_fdiv_r(left.get_mpz_t(), left.get_mpz_t(), a.get_mpz_t());
      value = b * left + right;
   }
   return value;
}

BigInt feistel_encrypt(const IntFpeKey& key, const Tweak& tweak, const BigInt& n, const BigInt& x) {
   return Fe1Permutation(key, tweak, n).encrypt(x);
}

BigInt feistel_decrypt(const IntFpeKey& key, const Tweak& tweak, const BigInt& n, const BigInt& y) {
   return Fe1Permutation(key, tweak, n).decrypt(y);
}

namespace {

template <class Step>
WalkResult walk(const BigInt& m, const BigInt& x, std::uint64_t budget, Step step) {
   if(x < 0 || x >= m) {
      throw Error(ErrorCode::InputOutOfDomain, "value outside [0, M)");
   }
   WalkResult out{x, 0};
   if(m == 1) {
      return out;
   }
   do {
      if(out.steps == budget) {
         throw Error(ErrorCode::WalkBudgetExceeded, "cycle walk exceeded " + std::to_string(budget) + " steps");
      }
      out.value = step(out.value);
      ++out.steps;
   } while(out.value >= m);
   return out;
}

}  // namespace

WalkResult cycle_walk_encrypt(const IntFpeKey& key, const Tweak& tweak, const BigInt& m, const BigInt& x,
                              std::uint64_t budget) {
   Fe1Permutation p(key, tweak, m);
   return walk(m, x, budget, [&](const BigInt& v) { return p.encrypt(v); });
}

WalkResult cycle_walk_decrypt(const IntFpeKey& key, const Tweak& tweak, const BigInt& m, const BigInt& y,
                              std::uint64_t budget) {
   Fe1Permutation p(key, tweak, m);
   return walk(m, y, budget, [&](const BigInt& v) { return p.decrypt(v); });
}

namespace {

class Fe1Backend final : public IntegerCipher {
public:
   Fe1Backend(const IntFpeKey& key, std::uint64_t budget) : key_(key), budget_(budget) { key_.check(); }

   std::string_view name() const override { return "fe1"; }

   WalkResult encrypt(const Tweak& tweak, const BigInt& m, const BigInt& x) const override {
      return cycle_walk_encrypt(key_, tweak, m, x, budget_);
   }

   WalkResult decrypt(const Tweak& tweak, const BigInt& m, const BigInt& y) const override {
      return cycle_walk_decrypt(key_, tweak, m, y, budget_);
   }

private:
   IntFpeKey key_;
   std::uint64_t budget_;
};

struct Registry {
   std::mutex mutex;
   std::map<std::string, BackendFactory> factories{
      {"fe1", [](const IntFpeKey& key, std::uint64_t budget) { return std::make_unique<Fe1Backend>(key, budget); }},
   };
};

Registry& registry() {
   static Registry r;
   return r;
}

}  // namespace

void register_backend(const std::string& name, BackendFactory factory) {
   auto& r = registry();
   std::lock_guard lock(r.mutex);
   r.factories[name] = std::move(factory);
}

std::unique_ptr<IntegerCipher> make_backend(const std::string& name, const IntFpeKey& key, std::uint64_t walk_budget) {
   BackendFactory factory;
   {
      auto& r = registry();
      std::lock_guard lock(r.mutex);
      auto it = r.factories.find(name);
      if(it == r.factories.end()) {
         throw Error(ErrorCode::UnknownBackend, "no integer FPE backend named '" + name + "'");
      }
      factory = it->second;
   }
   return factory(key, walk_budget);
}

std::vector<std::string> backend_names() {
   auto& r = registry();
   std::lock_guard lock(r.mutex);
   std::vector<std::string> out;
   for(const auto& [name, f] : r.factories) {
      out.push_back(name);
   }
   return out;
}

}  // namespace gfpe
