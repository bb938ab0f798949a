#include "gfpe/analysis.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <set>
#include <unordered_map>

#include "gfpe/catalog.hpp"
#include "gfpe/rank.hpp"
#include "gfpe/utf8.hpp"

namespace gfpe {

namespace {

CharClass classify(char32_t c) {
   if(c >= U'A' && c <= U'Z')
      return CharClass::upper;
   if(c >= U'a' && c <= U'z')
      return CharClass::lower;
   if(c >= U'0' && c <= U'9')
      return CharClass::digit;
   return CharClass::literal;
}

using Clock = std::chrono::steady_clock;

double micros(Clock::duration d) {
   return std::chrono::duration<double, std::micro>(d).count();
}

}  // namespace

std::string Signature::to_string() const {
   std::u32string out;
   out.reserve(classes.size());
   for(std::size_t i = 0; i < classes.size(); ++i) {
      switch(classes[i]) {
         case CharClass::upper:
            out.push_back(U'U');
            break;
         case CharClass::lower:
            out.push_back(U'l');
            break;
         case CharClass::digit:
            out.push_back(U'd');
            break;
         case CharClass::literal:
            out.push_back(literals[i]);
            break;
      }
   }
   return utf8::encode(out);
}

Signature sgfpe_signature(std::string_view s) {
   const auto text = utf8::decode(s);
   Signature sig;
   sig.classes.reserve(text.size());
   sig.literals.reserve(text.size());
   for(char32_t c : text) {
      const auto cls = classify(c);
      sig.classes.push_back(cls);
      sig.literals.push_back(cls == CharClass::literal ? c : 0);
   }
   return sig;
}

FormatSpec sgfpe_format(const Signature& signature) {
   std::vector<CharSet> sets;
   sets.reserve(signature.classes.size());
   for(std::size_t i = 0; i < signature.classes.size(); ++i) {
      switch(signature.classes[i]) {
         case CharClass::upper:
            sets.push_back(CharSet::upper());
            break;
         case CharClass::lower:
            sets.push_back(CharSet::lower());
            break;
         case CharClass::digit:
            sets.push_back(CharSet::digits());
            break;
         case CharClass::literal:
            sets.push_back(CharSet::of(std::u32string(1, signature.literals[i])));
            break;
      }
   }
   return fmt::fixed(std::move(sets));
}

SgfpeCipher::SgfpeCipher(IntFpeKey key, unsigned rounds) : key_(std::move(key)), rounds_(rounds) {
   key_.check();
}

std::shared_ptr<const Cipher> SgfpeCipher::cipher_for(std::string_view s) const {
   const auto sig = sgfpe_signature(s);
   const auto name = sig.to_string();
   {
      std::lock_guard lock(mutex_);
      if(auto it = cache_.find(name); it != cache_.end())
         return it->second;
   }
   CipherConfig cfg;
   cfg.rounds = rounds_;
   auto cipher = std::make_shared<const Cipher>(compile(sgfpe_format(sig)), key_, cfg);
   std::lock_guard lock(mutex_);
   return cache_.emplace(name, std::move(cipher)).first->second;
}

std::string SgfpeCipher::encrypt(std::string_view s) const {
   if(s.empty())
      return {};
   return cipher_for(s)->encrypt(s);
}

std::string SgfpeCipher::decrypt(std::string_view s) const {
   if(s.empty())
      return {};
   return cipher_for(s)->decrypt(s);
}

std::string sgfpe_encrypt(const IntFpeKey& key, std::string_view s) {
   return SgfpeCipher(key, key.rounds).encrypt(s);
}

std::string sgfpe_decrypt(const IntFpeKey& key, std::string_view s) {
   return SgfpeCipher(key, key.rounds).decrypt(s);
}

double IdentificationCurve::fraction_at(double threshold) const {
   if(group_sizes.empty())
      return 0;
   std::size_t hit = 0;
   for(auto g : group_sizes)
      if(1.0 / static_cast<double>(g) >= threshold)
         ++hit;
   return static_cast<double>(hit) / static_cast<double>(group_sizes.size());
}

IdentificationCurve curve_from_group_sizes(const std::vector<std::size_t>& group_of_record) {
   IdentificationCurve curve;
   curve.records = group_of_record.size();
   curve.group_sizes = group_of_record;

   std::set<double> thresholds;
   std::size_t singles = 0;
   std::unordered_map<std::size_t, std::size_t> per_size;
   for(auto g : group_of_record) {
      thresholds.insert(1.0 / static_cast<double>(g));
      ++per_size[g];
   }
   for(const auto& [size, n] : per_size)
      singles += n / size;
   curve.groups = singles;
   for(double t = 1.0; t >= 1e-5; t /= 10) {
      thresholds.insert(t);
      thresholds.insert(t / 2);
   }
   for(double t : thresholds)
      curve.points.push_back({t, curve.fraction_at(t)});
   return curve;
}

IdentificationCurve curve_from_keys(const std::vector<std::string>& keys) {
   std::unordered_map<std::string, std::size_t> count;
   for(const auto& k : keys)
      ++count[k];
   std::vector<std::size_t> sizes;
   sizes.reserve(keys.size());
   for(const auto& k : keys)
      sizes.push_back(count[k]);
   return curve_from_group_sizes(sizes);
}

IdentificationCurve sgfpe_curve(const std::vector<std::string>& records) {
   std::vector<std::string> keys;
   keys.reserve(records.size());
   for(const auto& r : records)
      keys.push_back(sgfpe_signature(r).to_string());
   return curve_from_keys(keys);
}

IdentificationCurve gfpe_curve(const std::vector<std::string>& records, const SplitPlan& plan) {
   std::vector<std::string> keys;
   keys.reserve(records.size());
   for(const auto& r : records)
      keys.push_back(variant_path(plan, r));
   return curve_from_keys(keys);
}

void write_curve_csv(const IdentificationCurve& curve, std::ostream& out) {
   out << "threshold,fraction\n";
   for(const auto& p : curve.points)
      out << p.threshold << ',' << p.fraction << '\n';
}

MrEstimate mr_advantage_sparse(std::size_t k, std::uint64_t trials, std::uint64_t seed, const IntFpeKey& key) {
   if(k < 1 || trials == 0)
      throw Error(ErrorCode::InvalidParameter, "k and trials must be positive");
   const SgfpeCipher baseline(key, key.rounds);

   // The cipher is deterministic, so each message has one ciphertext.
   std::vector<std::string> ciphertexts;
   ciphertexts.reserve(k);
   for(std::size_t i = 1; i <= k; ++i)
      ciphertexts.push_back(baseline.encrypt(std::string(i, 'a')));

   std::mt19937_64 rng(seed);
   std::uniform_int_distribution<std::size_t> pick(1, k);
   std::uint64_t adversary = 0;
   std::uint64_t guesser = 0;
   for(std::uint64_t t = 0; t < trials; ++t) {
      const std::size_t m = pick(rng);
      const auto& c = ciphertexts[m - 1];
      if(utf8::decode(c).size() == m)
         ++adversary;
      if(pick(rng) == m)
         ++guesser;
   }
   MrEstimate e;
   e.trials = trials;
   e.adversary_success = static_cast<double>(adversary) / static_cast<double>(trials);
   e.guesser_success = static_cast<double>(guesser) / static_cast<double>(trials);
   e.advantage = e.adversary_success - e.guesser_success;
   const double p = 1.0 / static_cast<double>(k);
   e.sigma = std::sqrt(p * (1 - p) / static_cast<double>(trials));
   return e;
}

BigInt sparse_message_count(unsigned alphabet, unsigned max_length) {
   BigInt total = 0;
   for(unsigned i = 1; i <= max_length; ++i)
      total += pow(BigInt(alphabet), i);
   return total;
}

mpq_class exact_expansion(const Format& original, const Format& simplified) {
   mpq_class q(simplified.size(), original.size());
   q.canonicalize();
   return q;
}

BenchReport expansion_and_cycles(const Format& original, const Format& simplified, std::uint64_t trials,
                                 const IntFpeKey& key, std::uint64_t seed) {
   if(trials == 0)
      throw Error(ErrorCode::InvalidParameter, "trials must be positive");
   BenchReport report;
   report.trials = trials;
   report.expansion = exact_expansion(original, simplified);

   gmp_randclass rng(gmp_randinit_mt);
   rng.seed(seed);
   const BigInt& sf = simplified.size();
   const std::array<std::uint8_t, 8> label = {'g', 'f', 'p', 'e', '.', 'c', 'y', 'c'};

   double t_rank = 0;
   double t_step = 0;
   double t_unrank = 0;
   double t_enc = 0;
   std::uint64_t total_steps = 0;

   for(std::uint64_t i = 0; i < trials; ++i) {
      const auto m = unrank(original, rng.get_z_range(original.size()));
      if(!contains(simplified, m))
         throw Error(ErrorCode::NotSubset, "member of the original format not in the simplified one: " + m);
      const auto tweak = Tweak::for_slot(label, seed, to_bytes(BigInt(static_cast<unsigned long>(i))));
      const Fe1Permutation perm(key, tweak, sf);

      const auto start = Clock::now();
      BigInt y = rank(simplified, m).value;
      const auto ranked = Clock::now();
      std::uint64_t steps = 0;
      std::string c;
      for(;;) {
         do {
            y = perm.encrypt(y);
         } while(y >= sf);
         ++steps;
         if(steps > default_walk_budget)
            throw Error(ErrorCode::WalkBudgetExceeded, "cycle walk exceeded the step budget");
         c = unrank(simplified, y);
         if(contains(original, c))
            break;
      }
      const auto walked = Clock::now();
      (void)unrank(simplified, y);
      const auto done = Clock::now();

      t_rank += micros(ranked - start);
      t_step += micros(walked - ranked);
      t_unrank += micros(done - walked);
      t_enc += micros(walked - start) + micros(done - walked);
      total_steps += steps;
      ++report.walk_histogram[steps];
   }
   const double n = static_cast<double>(trials);
   report.al_cy = static_cast<double>(total_steps) / n;
   report.t_rank_us = t_rank / n;
   report.t_int_enc_us = t_step / static_cast<double>(total_steps);
   report.t_unrank_us = t_unrank / n;
   report.t_enc_us = t_enc / n;
   return report;
}

void write_bench_csv(const BenchReport& report, std::ostream& out) {
   out << "metric,value\n";
   out << "trials," << report.trials << '\n';
   out << "al_cy," << report.al_cy << '\n';
   out << "expansion," << report.expansion.get_str() << '\n';
   out << "expansion_decimal," << report.expansion.get_d() << '\n';
   out << "t_rank_us," << report.t_rank_us << '\n';
   out << "t_int_enc_us," << report.t_int_enc_us << '\n';
   out << "t_unrank_us," << report.t_unrank_us << '\n';
   out << "t_enc_us," << report.t_enc_us << '\n';
   for(const auto& [steps, count] : report.walk_histogram)
      out << "walk_steps_" << steps << ',' << count << '\n';
}

namespace {

const std::vector<std::string> first_names = {
   "James", "Mary", "Robert", "Patricia", "John", "Jennifer", "Michael", "Linda", "David", "Elizabeth",
   "William", "Barbara", "Richard", "Susan", "Joseph", "Jessica", "Thomas", "Sarah", "Charles", "Karen",
   "Christopher", "Lisa", "Daniel", "Nancy", "Matthew", "Betty", "Anthony", "Margaret", "Mark", "Sandra",
   "Donald", "Ashley", "Steven", "Kimberly", "Paul", "Emily", "Andrew", "Donna", "Joshua", "Michelle",
   "Kenneth", "Carol", "Kevin", "Amanda", "Brian", "Dorothy", "George", "Melissa", "Timothy", "Deborah",
   "Ronald", "Stephanie", "Edward", "Rebecca", "Jason", "Sharon", "Jeffrey", "Laura", "Ryan", "Cynthia",
   "Jacob", "Kathleen", "Gary", "Amy", "Nicholas", "Angela", "Eric", "Shirley", "Jonathan", "Anna",
   "Stephen", "Brenda", "Larry", "Pamela", "Justin", "Emma", "Scott", "Nicole", "Brandon", "Helen",
   "Benjamin", "Samantha", "Samuel", "Katherine", "Gregory", "Christine", "Alexander", "Debra", "Frank",
   "Rachel", "Patrick", "Carolyn", "Raymond", "Janet", "Jack", "Catherine", "Dennis", "Maria", "Jerry",
   "Heather", "Tyler", "Diane", "Aaron", "Ruth", "Jose", "Julie", "Adam", "Olivia", "Nathan", "Joyce",
   "Henry", "Virginia", "Douglas", "Victoria", "Zachary", "Kelly", "Peter", "Lauren", "Kyle", "Christina",
   "Ethan", "Joan", "Walter", "Evelyn", "Noah", "Judith", "Jeremy", "Megan", "Christian", "Andrea", "Keith",
   "Cheryl", "Roger", "Hannah", "Terry", "Jacqueline", "Gerald", "Martha", "Harold", "Gloria", "Sean",
   "Teresa", "Austin", "Ann", "Carl", "Sara", "Arthur", "Madison", "Lawrence", "Frances", "Dylan", "Kathryn",
   "Jesse", "Janice", "Jordan", "Jean", "Bryan", "Abigail", "Billy", "Alice", "Joe", "Judy", "Bruce",
   "Sophia", "Gabriel", "Grace", "Logan", "Denise", "Albert", "Amber", "Willie", "Doris", "Alan", "Marilyn",
   "Juan", "Danielle", "Wayne", "Beverly", "Elijah", "Isabella", "Randy", "Theresa", "Roy", "Diana",
   "Vincent", "Natalie", "Ralph", "Brittany", "Eugene", "Charlotte", "Russell", "Marie", "Bobby", "Kayla",
   "Mason", "Alexis", "Philip", "Lori", "Louis", "Bartholomew", "Maximiliano", "Wilhelmina", "Constantine",
};

const std::vector<std::string> last_names = {
   "Smith", "Johnson", "Williams", "Brown", "Jones", "Garcia", "Miller", "Davis", "Rodriguez", "Martinez",
   "Hernandez", "Lopez", "Gonzalez", "Wilson", "Anderson", "Thomas", "Taylor", "Moore", "Jackson", "Martin",
   "Lee", "Perez", "Thompson", "White", "Harris", "Sanchez", "Clark", "Ramirez", "Lewis", "Robinson",
   "Walker", "Young", "Allen", "King", "Wright", "Scott", "Torres", "Nguyen", "Hill", "Flores", "Green",
   "Adams", "Nelson", "Baker", "Hall", "Rivera", "Campbell", "Mitchell", "Carter", "Roberts", "Gomez",
   "Phillips", "Evans", "Turner", "Diaz", "Parker", "Cruz", "Edwards", "Collins", "Reyes", "Stewart",
   "Morris", "Morales", "Murphy", "Cook", "Rogers", "Gutierrez", "Ortiz", "Morgan", "Cooper", "Peterson",
   "Bailey", "Reed", "Kelly", "Howard", "Ramos", "Kim", "Cox", "Ward", "Richardson", "Watson", "Brooks",
   "Chavez", "Wood", "James", "Bennett", "Gray", "Mendoza", "Ruiz", "Hughes", "Price", "Alvarez", "Castillo",
   "Sanders", "Patel", "Myers", "Long", "Ross", "Foster", "Jimenez", "Powell", "Jenkins", "Perry", "Russell",
   "Sullivan", "Bell", "Coleman", "Butler", "Henderson", "Barnes", "Gonzales", "Fisher", "Vasquez",
   "Simmons", "Romero", "Jordan", "Patterson", "Alexander", "Hamilton", "Graham", "Reynolds", "Griffin",
   "Wallace", "Moreno", "West", "Cole", "Hayes", "Bryant", "Herrera", "Gibson", "Ellis", "Tran", "Medina",
   "Aguilar", "Stevens", "Murray", "Ford", "Castro", "Marshall", "Owens", "Harrison", "Fernandez",
   "Mcdonald", "Woods", "Washington", "Kennedy", "Wells", "Vargas", "Henry", "Chen", "Freeman", "Webb",
   "Tucker", "Guzman", "Burns", "Crawford", "Olson", "Simpson", "Porter", "Hunter", "Gordon", "Mendez",
   "Silva", "Shaw", "Snyder", "Mason", "Dixon", "Munoz", "Hunt", "Hicks", "Holmes", "Palmer", "Wagner",
   "Black", "Robertson", "Boyd", "Rose", "Stone", "Salazar", "Fox", "Warren", "Mills", "Meyer", "Rice",
   "Schmidt", "Garza", "Daniels", "Ferguson", "Nichols", "Stephens", "Soto", "Weaver", "Ryan", "Gardner",
   "Payne", "Grant", "Dunn", "Kelley", "Spencer", "Hawkins", "Arnold", "Pierce", "Vazquez", "Hansen",
   "Peters", "Santos", "Hart", "Bradley", "Knight", "Elliott", "Cunningham", "Duncan", "Armstrong",
   "Hudson", "Carroll", "Lane", "Riley", "Andrews", "Alvarado", "Ray", "Delgado", "Berry", "Perkins",
   "Hoffman", "Johnston", "Matthews", "Pena", "Richards", "Willis", "Carpenter", "Lawrence", "Sandoval",
   "Oppenheimer", "Vanderbilt", "Wojciechowski", "Schwarzenegger",
};

const std::vector<std::string> street_words = {
   "Main", "Oak", "Pine", "Maple", "Cedar", "Elm", "Washington", "Lake", "Hill", "Park", "Walnut", "Spring",
   "North", "South", "East", "West", "Church", "Mill", "Cherry", "Tree", "River", "Sunset", "Highland",
   "Meadow", "Forest", "Ridge", "Valley", "Willow", "Jefferson", "Lincoln", "Franklin", "Madison", "Jackson",
   "Adams", "Chestnut", "Locust", "Hickory", "Birch", "Dogwood", "Magnolia", "Prospect", "Center", "Union",
   "College", "School", "Market", "Water", "Bridge", "Railroad", "Orchard", "Green", "Fairview", "Liberty",
   "Broad", "High", "Front", "Second", "Third", "Fourth", "Fifth", "Sixth", "Seventh", "Grove", "Vine",
   "Summit", "Laurel", "Heritage", "Canyon", "Creek", "Mountain", "Windsor", "Cambridge", "Oxford",
   "Stratford", "Brookside", "Greenwood", "Woodland", "Country", "Club", "Old", "New", "Harbor", "Bay",
};

const std::vector<std::string> suffixes = {
   "Road", "Street", "Avenue", "Lane", "Drive", "Court", "Place", "Boulevard", "Way", "Terrace", "Circle",
   "Parkway", "Trail", "Highway", "Square", "Row",
};

const std::vector<std::string> towns = {
   "New York", "Los Angeles", "Chicago", "Houston", "Phoenix", "Philadelphia", "San Antonio", "San Diego",
   "Dallas", "San Jose", "Austin", "Jacksonville", "Columbus", "Charlotte", "Indianapolis", "San Francisco",
   "Seattle", "Denver", "Boston", "El Paso", "Nashville", "Detroit", "Portland", "Memphis", "Louisville",
   "Baltimore", "Milwaukee", "Albuquerque", "Tucson", "Fresno", "Sacramento", "Kansas City", "Mesa",
   "Atlanta", "Omaha", "Colorado Springs", "Raleigh", "Miami", "Oakland", "Minneapolis", "Tulsa", "Wichita",
   "New Orleans", "Arlington", "Cleveland", "Bakersfield", "Tampa", "Aurora", "Honolulu", "Anaheim",
   "Springfield", "Greenville", "Franklin", "Clinton", "Salem", "Madison", "Georgetown", "Fairview",
   "Riverside", "Bristol", "Dover", "Manchester", "Oxford", "Ashland", "Burlington", "Jamestown", "Kingston",
   "Winchester", "Milford", "Hudson", "Newport", "Lexington", "Chester", "Marion", "Dayton", "Lebanon",
   "Mount Vernon", "Oak Grove", "Pleasant Hill", "Cedar Rapids", "Sioux Falls", "Little Rock", "Baton Rouge",
   "Salt Lake City", "Fort Wayne", "Saint Paul", "Grand Rapids", "Rancho Cucamonga", "Schenectady",
};

std::string clip(const std::string& word, std::size_t max_letters) {
   return word.substr(0, std::min(word.size(), max_letters + 1));
}

void append_words(std::string& out, const std::string& words, std::size_t max_letters) {
   std::size_t pos = 0;
   while(pos <= words.size()) {
      const auto next = std::min(words.find(' ', pos), words.size());
      out += clip(words.substr(pos, next - pos), max_letters);
      out += ' ';
      pos = next + 1;
   }
}

}  // namespace

std::vector<std::string> synth_addresses(std::size_t count, std::uint64_t seed, std::size_t max_word_letters) {
   std::mt19937_64 rng(seed);
   auto pick = [&](const std::vector<std::string>& pool) -> const std::string& {
      return pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
   };
   // Name word counts 1..4 and street-part word counts, skewed like real data.
   std::discrete_distribution<int> name_words({2, 70, 25, 3});
   std::discrete_distribution<int> street_prefix({55, 35, 10});
   std::geometric_distribution<int> number_tail(0.004);
   std::uniform_int_distribution<int> digit(0, 9);
   const auto states = catalog::us_state_codes();

   std::vector<std::string> out;
   out.reserve(count);
   for(std::size_t i = 0; i < count; ++i) {
      std::string r;
      const int nw = name_words(rng) + 1;
      if(nw == 1) {
         append_words(r, pick(last_names), max_word_letters);
      } else {
         for(int w = 0; w < nw - 1; ++w)
            append_words(r, pick(first_names), max_word_letters);
         append_words(r, pick(last_names), max_word_letters);
      }
      r += std::to_string(1 + std::min(number_tail(rng), 1052));
      r += ' ';

      // street words + suffix + town: at most 3 + 1 + 4 words, at least 2
      const int sw = street_prefix(rng) + 1;
      for(int w = 0; w < sw; ++w)
         append_words(r, pick(street_words), max_word_letters);
      append_words(r, pick(suffixes), max_word_letters);
      append_words(r, pick(towns), max_word_letters);

      for(int d = 0; d < 5; ++d)
         r.push_back(static_cast<char>('0' + digit(rng)));
      r += ' ';
      r += utf8::encode(states[std::uniform_int_distribution<std::size_t>(0, states.size() - 1)(rng)]);
      out.push_back(std::move(r));
   }
   return out;
}

}  // namespace gfpe
