// Runs every acceptance criterion and prints one PASS/FAIL line for each.
//
//   gfpe_acceptance --corpus DIR [--only N] [--strict]
//
// Exit status is non-zero if any of AC1-AC9 fails. AC10 is a timing shape
// that depends on the integer cipher's cost model; it is reported but only
// affects the exit status with --strict.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <gfpe/gfpe.hpp>

#include "oracles.hpp"

using namespace gfpe;
namespace fs = std::filesystem;

namespace {

struct Outcome {
   bool pass = true;
   std::string detail;

   void check(bool ok, const std::string& what) {
      if(!ok) {
         if(pass)
            detail = what;
         pass = false;
      }
   }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
   return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fixed3(double v) {
   char buf[64];
   std::snprintf(buf, sizeof(buf), "%.3f", v);
   return buf;
}

struct CorpusEntry {
   std::string name;
   FormatSpec spec;
   Format format;
};

std::vector<CorpusEntry> load_corpus(const std::string& dir) {
   std::vector<fs::path> paths;
   for(const auto& e : fs::directory_iterator(dir))
      if(e.path().extension() == ".fmt")
         paths.push_back(e.path());
   std::sort(paths.begin(), paths.end());
   std::vector<CorpusEntry> out;
   for(const auto& p : paths) {
      auto spec = load_spec(p.string());
      auto f = compile(spec);
      out.push_back({p.filename().string(), std::move(spec), std::move(f)});
   }
   return out;
}

void collect_kinds(const FormatSpec& s, std::set<NodeKind>& kinds, bool& delimited_concat, bool& plain_concat) {
   kinds.insert(s.kind());
   std::visit(
      [&](const auto& n) {
         using T = std::decay_t<decltype(n)>;
         if constexpr(std::is_same_v<T, spec::Union>) {
            for(const auto& p : n.parts)
               collect_kinds(p, kinds, delimited_concat, plain_concat);
         } else if constexpr(std::is_same_v<T, spec::Concat>) {
            (n.delimiters.empty() ? plain_concat : delimited_concat) = true;
            for(const auto& p : n.parts)
               collect_kinds(p, kinds, delimited_concat, plain_concat);
         } else if constexpr(std::is_same_v<T, spec::Range>) {
            collect_kinds(*n.inner, kinds, delimited_concat, plain_concat);
         }
      },
      s.node);
}

gmp_randclass& big_rng() {
   static gmp_randclass r(gmp_randinit_mt);
   static bool seeded = false;
   if(!seeded) {
      r.seed(20240601);
      seeded = true;
   }
   return r;
}

// AC1 ---------------------------------------------------------------------

Outcome ac1(const std::vector<CorpusEntry>& corpus) {
   Outcome o;
   std::set<NodeKind> kinds;
   bool delimited = false;
   bool plain = false;
   std::size_t exhaustive = 0;
   std::size_t windowed = 0;
   std::uint64_t checked = 0;
   for(const auto& e : corpus) {
      collect_kinds(e.spec, kinds, delimited, plain);
      const auto& f = e.format;
      if(f.size() <= 10000) {
         const auto n = f.size().get_ui();
         const auto all = enumerate(f, n + 1);
         o.check(all.size() == n, e.name + ": enumerate gave " + std::to_string(all.size()) + " of " + std::to_string(n));
         std::set<std::string> distinct(all.begin(), all.end());
         o.check(distinct.size() == all.size(), e.name + ": enumerate repeated a member");
         for(std::size_t i = 0; i < all.size(); ++i) {
            o.check(rank(f, all[i]).value == i, e.name + ": rank(" + all[i] + ") != " + std::to_string(i));
            o.check(unrank(f, static_cast<unsigned long>(i)) == all[i], e.name + ": unrank(" + std::to_string(i) + ")");
         }
         checked += all.size();
         ++exhaustive;
      } else {
         // too large to enumerate: the leading window against the oracle,
         // then random ranks both ways
         const auto head = enumerate(f, 10000);
         for(std::size_t i = 0; i < head.size(); ++i) {
            o.check(rank(f, head[i]).value == i, e.name + ": window rank " + std::to_string(i));
            o.check(unrank(f, static_cast<unsigned long>(i)) == head[i], e.name + ": window unrank " + std::to_string(i));
         }
         for(int i = 0; i < 10000; ++i) {
            const BigInt r = big_rng().get_z_range(f.size());
            const auto s = unrank(f, r);
            o.check(contains(f, s) && rank(f, s).value == r, e.name + ": random rank " + to_string(r));
         }
         const BigInt last = f.size() - 1;
         o.check(rank(f, unrank(f, last)).value == last, e.name + ": last rank");
         checked += head.size() + 10001;
         ++windowed;
      }
   }
   o.check(corpus.size() >= 25, "corpus has only " + std::to_string(corpus.size()) + " specs");
   o.check(kinds.size() == 12, "corpus covers " + std::to_string(kinds.size()) + " of 12 node kinds");
   o.check(delimited && plain, "corpus lacks a delimited or an undelimited concat");
   if(o.pass)
      o.detail = std::to_string(corpus.size()) + " specs, 12/12 node kinds, " + std::to_string(exhaustive) +
                 " exhaustive + " + std::to_string(windowed) + " windowed (ssn/ccn), " + std::to_string(checked) +
                 " members checked";
   return o;
}

// AC2 ---------------------------------------------------------------------

Outcome ac2(const std::vector<CorpusEntry>& corpus) {
   Outcome o;
   std::size_t specs = 0;
   std::uint64_t encryptions = 0;
   for(const auto& e : corpus) {
      if(e.format.size() > 4096)
         continue;
      ++specs;
      const auto all = enumerate(e.format, 4097);
      const std::set<std::string> domain(all.begin(), all.end());
      for(int k = 0; k < 5; ++k) {
         const Cipher c(e.format, keygen(k % 2 ? 128 : 256));
         std::set<std::string> image;
         for(const auto& m : all) {
            const auto x = c.encrypt(m);
            image.insert(x);
            o.check(c.decrypt(x) == m, e.name + ": Dec(Enc(" + m + ")) differs");
         }
         o.check(image == domain, e.name + ": image is not the format");
         encryptions += all.size();
      }
   }
   if(o.pass)
      o.detail = std::to_string(specs) + " specs x 5 keys, " + std::to_string(encryptions) + " encryptions";
   return o;
}

// AC3 ---------------------------------------------------------------------

Outcome ac3() {
   Outcome o;
   const auto f = compile(fmt::ssn());
   o.check(f.size() == BigInt(888931098), "size is " + to_string(f.size()));
   o.check(BigInt(898) * 99 * 9999 == f.size(), "closed form differs");

   // reduced analog: 2-digit area below 90 excluding 66, 1-digit group and serial
   const oracle::SsnLayout layout{2, 1, 1, 90, 66};
   const SsnRules rules{2, 1, 1, 90, 66};
   std::uint64_t brute = 0;
   for(long n = 0; n < 10000; ++n) {
      if(oracle::ssn_ok(n, layout)) {
         o.check(ssn_rank(static_cast<std::uint64_t>(n), rules) == brute, "reduced rank at " + std::to_string(n));
         o.check(ssn_unrank(brute, rules) == static_cast<std::uint64_t>(n), "reduced unrank at " + std::to_string(brute));
         ++brute;
      }
   }
   const std::uint64_t closed = (90 - 1 - 1) * (10 - 1) * (10 - 1);
   o.check(brute == closed && rules.valid_count() == brute,
           "reduced analog: brute " + std::to_string(brute) + ", closed " + std::to_string(closed));

   std::mt19937_64 rng(33);
   const oracle::SsnLayout us{3, 2, 4, 900, 666};
   int done = 0;
   while(done < 10000) {
      const long n = static_cast<long>(rng() % 1000000000);
      if(!oracle::ssn_ok(n, us))
         continue;
      char text[16];
      std::snprintf(text, sizeof(text), "%09ld", n);
      const auto r = rank(f, text).value;
      o.check(r < f.size() && unrank(f, r) == text, std::string("round trip of ") + text);
      ++done;
   }
   o.check(rank(f, "001010001").value == 0 && unrank(f, 0) == "001010001", "first extreme");
   o.check(rank(f, "899999999").value == BigInt(888931097) && unrank(f, BigInt(888931097)) == "899999999",
           "last extreme");
   if(o.pass)
      o.detail = "size 888931098 = 898*99*9999; reduced analog 7128 by brute force; 10000 random + 2 extremes";
   return o;
}

// AC4 ---------------------------------------------------------------------

Outcome ac4() {
   Outcome o;
   const auto f = compile(fmt::ccn());
   const Cipher c(f, keygen());
   std::mt19937_64 rng(44);
   for(int i = 0; i < 10000; ++i) {
      std::string p;
      for(int j = 0; j < 15; ++j)
         p.push_back(static_cast<char>('0' + rng() % 10));
      const std::string m = p + static_cast<char>('0' + oracle::luhn_check_digit(p));
      const auto x = c.encrypt(m);
      o.check(x.size() == 16 && oracle::luhn_ok(x), "ciphertext fails Luhn: " + x);
      o.check(c.decrypt(x) == m, "round trip of " + m);
   }
   if(o.pass)
      o.detail = "10000 round trips, every ciphertext Luhn-valid";
   return o;
}

// AC5 ---------------------------------------------------------------------

Outcome ac5() {
   Outcome o;
   o.check(date_offset({1900, 1, 1}, {1901, 1, 1}, Granularity::day) == 365, "1900-01-01 -> 1901-01-01");
   o.check(date_offset({2000, 2, 28}, {2000, 3, 1}, Granularity::day) == 2, "2000-02-28 -> 2000-03-01");
   o.check(oracle::days_between({1900, 1, 1}, {1901, 1, 1}) == 365 && oracle::days_between({2000, 2, 28}, {2000, 3, 1}) == 2,
           "oracle disagrees");

   // every day of the interval, generated by stepping
   std::vector<std::string> days;
   for(oracle::Ymd d{1900, 1, 1};; d = oracle::next_day(d)) {
      char buf[16];
      std::snprintf(buf, sizeof(buf), "%02d.%02d.%04d", d.d, d.m, d.y);
      days.push_back(buf);
      if(d == oracle::Ymd{2013, 9, 23})
         break;
   }
   const auto f = compile(fmt::date({1900, 1, 1}, {2013, 9, 23}));
   o.check(f.size() == days.size(), "size " + to_string(f.size()) + " vs " + std::to_string(days.size()));
   std::mt19937_64 rng(55);
   for(int i = 0; i < 10000; ++i) {
      const std::size_t k = rng() % days.size();
      const auto r = rank(f, days[k]).value;
      o.check(r == k, "rank of " + days[k]);
      o.check(unrank(f, r) == days[k], "unrank of " + days[k]);
   }
   if(o.pass)
      o.detail = "365 and 2 days; " + std::to_string(days.size()) + " days in range; 10000 random round trips";
   return o;
}

// AC6 ---------------------------------------------------------------------

Outcome ac6() {
   Outcome o;
   std::ostringstream d;
   const auto key = keygen();
   const std::uint64_t seed = (std::uint64_t{std::random_device{}()} << 32) | std::random_device{}();
   d << "seed=" << seed << "; ";
   for(std::size_t k : {2u, 4u, 16u}) {
      const auto e = mr_advantage_sparse(k, 100000, seed + k, key);
      const double want = 1.0 - 1.0 / static_cast<double>(k);
      const double z = std::fabs(e.advantage - want) / e.sigma;
      o.check(z <= 3.0, "seed " + std::to_string(seed) + " k=" + std::to_string(k) + ": advantage " + fixed3(e.advantage) + " is " + fixed3(z) + " sigma off");
      d << "k=" << k << " adv=" << fixed3(e.advantage) << " (" << fixed3(z) << " sigma); ";
   }
   std::uint64_t sum = 0;
   std::uint64_t p = 1;
   for(int i = 1; i <= 4; ++i) {
      p *= 64;
      sum += p;
   }
   o.check(sum == 17043520 && sparse_message_count(64, 4) == sum, "sparse count");
   d << "k(64,4)=" << sum;
   if(o.pass)
      o.detail = d.str();
   return o;
}

// AC7 ---------------------------------------------------------------------

Outcome ac7() {
   Outcome o;
   std::ostringstream d;
   const auto key = keygen();
   const auto digit = CharSet::digits();
   struct Pair {
      const char* label;
      FormatSpec f;
      FormatSpec sf;
   };
   const std::vector<Pair> pairs = {
      {"8/7", fmt::integral(0, 6999), fmt::integral(0, 7999)},
      {"10", fmt::fixed({digit, digit, digit, CharSet::of(U"0")}), fmt::fixed({digit, digit, digit, digit})},
      {"400", fmt::fixed({CharSet::range(U'0', U'4'), CharSet::range(U'0', U'4'), digit, CharSet::of(U"0"), CharSet::of(U"0")}),
       fmt::fixed({digit, digit, digit, digit, digit})},
   };
   std::uint64_t seed = 700;
   for(const auto& p : pairs) {
      const auto f = compile(p.f);
      const auto sf = compile(p.sf);
      const auto r = expansion_and_cycles(f, sf, 10000, key, ++seed);
      const double ratio = r.expansion.get_d();
      const double err = std::fabs(r.al_cy - ratio) / ratio;
      o.check(err <= 0.05, std::string("pair ") + p.label + ": AL_cy " + fixed3(r.al_cy) + " vs " + fixed3(ratio));
      d << p.label << ": " << r.expansion.get_str() << " AL_cy=" << fixed3(r.al_cy) << " (" << fixed3(100 * err)
        << "%); ";
   }

   // the transaction record and its fixed-charset simplification
   const auto t = compile(catalog::transaction());
   const auto st = compile(catalog::transaction_sgfpe());
   const auto q = exact_expansion(t, st);
   const long days = oracle::days_between({1900, 1, 1}, {2013, 9, 23}) + 1;
   BigInt f_size = BigInt(days) * 898 * 99 * 9999 * pow(BigInt(10), 15);
   BigInt sf_size = BigInt(4 * 10 * 2 * 10 * 2) * pow(BigInt(10), 3) * pow(BigInt(10), 9) * pow(BigInt(10), 16);
   mpq_class independent(sf_size, f_size);
   independent.canonicalize();
   o.check(q == independent, "transaction expansion " + q.get_str() + " vs " + independent.get_str());
   const auto measured = expansion_and_cycles(t, st, 300, key, 799);
   d << "transaction: exact " << q.get_str() << " = " << fixed3(q.get_d()) << " (quoted figure: >629), measured AL_cy "
     << fixed3(measured.al_cy) << " over 300 trials";
   o.detail = o.pass ? d.str() : o.detail + " | " + d.str();
   return o;
}

// AC8 ---------------------------------------------------------------------

// (slot id, block, occurrence) -> rank
std::map<std::tuple<std::uint64_t, std::string, std::size_t>, std::pair<BigInt, BigInt>> slot_map(const RankVector& v) {
   std::map<std::tuple<std::uint64_t, std::string, std::size_t>, std::pair<BigInt, BigInt>> out;
   std::map<std::pair<std::uint64_t, std::string>, std::size_t> seen;
   for(std::size_t i = 0; i < v.size(); ++i) {
      const auto key = std::make_pair(v.slots[i].id, to_string(v.slots[i].block));
      const auto occ = seen[key]++;
      out[{key.first, key.second, occ}] = {v.ranks[i], v.sizes[i]};
   }
   return out;
}

Outcome ac8() {
   Outcome o;
   std::ostringstream d;
   const auto f = compile(catalog::address());
   o.check(f.size() > pow(BigInt(2), 300), "address format is only " + std::to_string(bit_length(f.size())) + " bits");
   d << "|F| = 2^" << bit_length(f.size()) - 1 << "+; ";
   const auto key = keygen();
   const auto synthetic = synth_addresses(5000, 808);
   std::mt19937_64 rng(88);

   for(unsigned bits : {64u, 128u, 256u}) {
      const BigInt max = pow(BigInt(2), bits);
      CipherConfig cfg;
      cfg.max_size = max;
      const Cipher c(f, key, cfg);
      const auto& plan = c.plan();
      for(const auto* g : plan.leaf_groups())
         o.check(g->size <= max, "plan slot above maxS at 2^" + std::to_string(bits));

      // 10^4 round trips: 5000 uniform members and 5000 synthetic records
      BigInt largest = 0;
      std::uint64_t calls = 0;
      std::vector<std::string> messages = synthetic;
      for(int i = 0; i < 5000; ++i)
         messages.push_back(unrank(f, big_rng().get_z_range(f.size())));
      for(const auto& m : messages) {
         std::vector<SlotTrace> trace;
         const auto x = c.encrypt(m, {}, &trace);
         for(const auto& t : trace) {
            o.check(t.domain <= max, "integer cipher domain above maxS");
            if(t.domain > largest)
               largest = t.domain;
         }
         calls += trace.size();
         o.check(contains(f, x), "ciphertext outside the format");
         o.check(c.decrypt(x) == m, "round trip at 2^" + std::to_string(bits));
      }

      // pairs equal in all but one slot keep every other ciphertext slot
      std::uint64_t shared = 0;
      std::uint64_t shared_equal = 0;
      for(int i = 0; i < 1000; ++i) {
         const auto& m1 = messages[rng() % messages.size()];
         const auto v1 = rank_multi(plan, m1);
         auto v2 = v1;
         const std::size_t j = rng() % v2.size();
         v2.ranks[j] = big_rng().get_z_range(v2.sizes[j]);
         const auto m2 = unrank_multi(plan, v2, m1);
         const auto a = slot_map(v1);
         const auto b = slot_map(rank_multi(plan, m2));
         const auto ca = slot_map(rank_multi(plan, c.encrypt(m1)));
         const auto cb = slot_map(rank_multi(plan, c.encrypt(m2)));
         for(const auto& [slot, val] : a) {
            auto it = b.find(slot);
            if(it == b.end() || it->second != val)
               continue;
            ++shared;
            shared_equal += ca.at(slot) == cb.at(slot);
         }
      }
      o.check(shared_equal == shared, "identical slots gave different ciphertext slots at 2^" + std::to_string(bits));

      // pairs distinct in every slot
      std::uint64_t compared = 0;
      std::uint64_t differ = 0;
      for(int i = 0; i < 1000; ++i) {
         const auto& m1 = messages[rng() % messages.size()];
         const auto v1 = rank_multi(plan, m1);
         auto v2 = v1;
         for(std::size_t s = 0; s < v2.size(); ++s)
            if(v2.sizes[s] > 1)
               v2.ranks[s] = (v2.ranks[s] + 1 + big_rng().get_z_range(v2.sizes[s] - 1)) % v2.sizes[s];
         const auto m2 = unrank_multi(plan, v2, m1);
         const auto ca = rank_multi(plan, c.encrypt(m1));
         const auto cb = rank_multi(plan, c.encrypt(m2));
         if(ca.size() != cb.size()) {
            o.check(false, "distinct pair changed shape");
            continue;
         }
         for(std::size_t s = 0; s < ca.size(); ++s) {
            if(v1.sizes[s] <= 1)
               continue;
            ++compared;
            differ += ca.ranks[s] != cb.ranks[s];
         }
      }
      const double freq = compared ? static_cast<double>(differ) / static_cast<double>(compared) : 0;
      o.check(freq >= 1 - 1e-3, "distinct-slot frequency " + fixed3(freq) + " at 2^" + std::to_string(bits));

      d << "2^" << bits << ": " << plan.leaf_groups().size() << " plan slots, " << fixed3(static_cast<double>(calls) / 1e4)
        << " calls/msg, max domain 2^" << fixed3(std::log2(largest.get_d())) << ", " << shared << " shared slots equal, "
        << "distinct freq " << fixed3(freq) << "; ";
   }
   o.detail = o.pass ? d.str() : o.detail + " | " + d.str();
   return o;
}

// AC9 ---------------------------------------------------------------------

Outcome ac9() {
   Outcome o;
   std::ostringstream d;
   const auto records = synth_addresses(10000, 909);
   const auto f = compile(catalog::address());
   const auto s = sgfpe_curve(records);
   d << "sgfpe p>=0.5: " << fixed3(s.fraction_at(0.5)) << "; ";
   for(const char* m : {"2^64", "2^128", "2^256", "inf"}) {
      const auto g = gfpe_curve(records, split(f, parse_max_size(m)));
      std::set<double> thresholds;
      for(const auto& p : s.points)
         thresholds.insert(p.threshold);
      for(const auto& p : g.points)
         thresholds.insert(p.threshold);
      for(double t : thresholds)
         o.check(s.fraction_at(t) >= g.fraction_at(t), std::string("not dominated at ") + m + " p=" + std::to_string(t));
      d << m << ": " << g.groups << " groups, p>=0.5 " << fixed3(g.fraction_at(0.5)) << ", p>=1e-3 "
        << fixed3(g.fraction_at(1e-3)) << "; ";
      if(std::string(m) == "inf") {
         o.check(g.groups == 1, "unbounded GFPE has " + std::to_string(g.groups) + " groups");
         o.check(g.fraction_at(1.0 / 10000) == 1.0 && g.fraction_at(1.0 / 9999) == 0.0, "unbounded curve is not flat");
      }
   }
   o.detail = o.pass ? d.str() : o.detail + " | " + d.str();
   return o;
}

// AC10 --------------------------------------------------------------------

Outcome ac10() {
   Outcome o;
   std::ostringstream d;
   const auto f = compile(catalog::address());
   const auto records = synth_addresses(1000, 1010);
   const auto key = keygen();
   std::map<std::string, double> best;
   for(int rep = 0; rep < 3; ++rep) {
      for(const char* m : {"2^64", "2^128", "2^256", "inf"}) {
         CipherConfig cfg;
         cfg.max_size = parse_max_size(m);
         const Cipher c(f, key, cfg);
         const auto t0 = Clock::now();
         for(const auto& r : records)
            (void)c.encrypt(r);
         const double t = seconds_since(t0);
         if(!best.count(m) || t < best[m])
            best[m] = t;
      }
   }
   for(const char* m : {"2^64", "2^128", "2^256", "inf"})
      d << m << " " << fixed3(best[m] * 1000) << " ms; ";
   d << "(1000 records, best of 3)";
   o.check(best["2^256"] < best["inf"], "2^256 is not faster than unsplit");
   o.check(best["2^256"] < best["2^64"], "2^256 is not faster than 2^64");
   o.detail = o.pass ? d.str() : o.detail + " | " + d.str();
   return o;
}

}  // namespace

int main(int argc, char** argv) {
   std::string corpus_dir;
   int only = 0;
   bool strict = false;
   for(int i = 1; i < argc; ++i) {
      const std::string a = argv[i];
      if(a == "--corpus" && i + 1 < argc) {
         corpus_dir = argv[++i];
      } else if(a == "--only" && i + 1 < argc) {
         only = std::stoi(argv[++i]);
      } else if(a == "--strict") {
         strict = true;
      } else {
         std::cerr << "usage: gfpe_acceptance --corpus DIR [--only N] [--strict]\n";
         return 2;
      }
   }
   if(corpus_dir.empty()) {
      std::cerr << "usage: gfpe_acceptance --corpus DIR [--only N] [--strict]\n";
      return 2;
   }

   std::vector<CorpusEntry> corpus;
   try {
      corpus = load_corpus(corpus_dir);
   } catch(const std::exception& e) {
      std::cerr << "error: corpus: " << e.what() << "\n";
      return 1;
   }

   struct Criterion {
      int id;
      const char* title;
      double limit_s;  // 0: no limit
      std::function<Outcome()> run;
   };
   const std::vector<Criterion> criteria = {
      {1, "rank bijection", 60, [&] { return ac1(corpus); }},
      {2, "encryption is a permutation", 120, [&] { return ac2(corpus); }},
      {3, "SSN arithmetic", 0, ac3},
      {4, "Luhn", 0, ac4},
      {5, "date arithmetic", 0, ac5},
      {6, "sparse-format MR advantage", 30, ac6},
      {7, "cycle length vs expansion", 120, ac7},
      {8, "splitting", 300, ac8},
      {9, "leakage dominance", 0, ac9},
      {10, "timing shape", 0, ac10},
   };

   int hard_failures = 0;
   int failures = 0;
   for(const auto& c : criteria) {
      if(only && c.id != only)
         continue;
      const auto t0 = Clock::now();
      Outcome o;
      try {
         o = c.run();
      } catch(const std::exception& e) {
         o.pass = false;
         o.detail = std::string("exception: ") + e.what();
      }
      const double t = seconds_since(t0);
      if(c.limit_s > 0 && t >= c.limit_s) {
         o.pass = false;
         o.detail = "took " + fixed3(t) + " s, limit " + fixed3(c.limit_s) + " s | " + o.detail;
      }
      std::cout << "AC" << c.id << (c.id < 10 ? "  " : " ") << (o.pass ? "PASS" : "FAIL") << "  " << c.title << " ["
                << fixed3(t) << " s] " << o.detail << std::endl;
      if(!o.pass) {
         ++failures;
         if(c.id != 10 || strict)
            ++hard_failures;
      }
   }
   std::cout << (failures ? std::to_string(failures) + " criteria failed" : std::string("all criteria passed"));
   if(failures && !hard_failures)
      std::cout << " (timing shape only; see README)";
   std::cout << std::endl;
   return hard_failures ? 1 : 0;
}
