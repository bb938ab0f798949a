#include <string>
#include <vector>

#include <benchmark/benchmark.h>
#include <gfpe/gfpe.hpp>

namespace {

using namespace gfpe;

const IntFpeKey& bench_key() {
   static const IntFpeKey key = key_from_hex("000102030405060708090a0b0c0d0e0f101112131415161718191a1b1c1d1e1f");
   return key;
}

const std::vector<std::string>& addresses() {
   static const auto records = synth_addresses(256, 7);
   return records;
}

void BM_RankAddress(benchmark::State& state) {
   const Format f = compile(catalog::address());
   std::size_t i = 0;
   for(auto _ : state) {
      benchmark::DoNotOptimize(rank(f, addresses()[i++ % addresses().size()]));
   }
}
BENCHMARK(BM_RankAddress);

void BM_UnrankAddress(benchmark::State& state) {
   const Format f = compile(catalog::address());
   std::vector<BigInt> ranks;
   for(const auto& a : addresses()) {
      ranks.push_back(rank(f, a).value);
   }
   std::size_t i = 0;
   for(auto _ : state) {
      benchmark::DoNotOptimize(unrank(f, ranks[i++ % ranks.size()]));
   }
}
BENCHMARK(BM_UnrankAddress);

// Argument: log2 of the domain size.
void BM_Fe1(benchmark::State& state) {
   const BigInt n = pow(BigInt(2), static_cast<unsigned long>(state.range(0)));
   const Fe1Permutation p(bench_key(), Tweak{}, n);
   BigInt x = n / 3;
   for(auto _ : state) {
      x = p.encrypt(x);
      benchmark::DoNotOptimize(x);
   }
}
BENCHMARK(BM_Fe1)->Arg(16)->Arg(64)->Arg(128)->Arg(256)->Arg(936);

// Argument: log2 of maxS, 0 for unbounded.
void BM_EncryptAddress(benchmark::State& state) {
   CipherConfig config;
   if(state.range(0) != 0) {
      config.max_size = pow(BigInt(2), static_cast<unsigned long>(state.range(0)));
   }
   const Cipher cipher(compile(catalog::address()), bench_key(), config);
   std::size_t i = 0;
   for(auto _ : state) {
      benchmark::DoNotOptimize(cipher.encrypt(addresses()[i++ % addresses().size()]));
   }
}
BENCHMARK(BM_EncryptAddress)->Arg(64)->Arg(128)->Arg(256)->Arg(0)->Unit(benchmark::kMicrosecond);

void BM_EncryptTransaction(benchmark::State& state) {
   const Cipher cipher(compile(catalog::transaction()), bench_key());
   const std::string m = "24.12.1999, 123456789, 4111111111111111";
   for(auto _ : state) {
      benchmark::DoNotOptimize(cipher.encrypt(m));
   }
}
BENCHMARK(BM_EncryptTransaction)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
