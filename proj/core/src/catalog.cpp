#include "gfpe/catalog.hpp"

namespace gfpe::catalog {

std::vector<std::u32string> us_state_codes() {
   return {U"AL", U"AK", U"AZ", U"AR", U"CA", U"CO", U"CT", U"DE", U"DC", U"FL", U"GA", U"HI", U"ID",
           U"IL", U"IN", U"IA", U"KS", U"KY", U"LA", U"ME", U"MD", U"MA", U"MI", U"MN", U"MS", U"MO",
           U"MT", U"NE", U"NV", U"NH", U"NJ", U"NM", U"NY", U"NC", U"ND", U"OH", U"OK", U"OR", U"PA",
           U"RI", U"SC", U"SD", U"TN", U"TX", U"UT", U"VT", U"VA", U"WA", U"WV", U"WI", U"WY"};
}

FormatSpec word(std::size_t max_word_letters) {
   return fmt::concat({fmt::fixed({CharSet::upper()}), fmt::var_string(CharSet::lower(), 0, max_word_letters)});
}

FormatSpec address(std::size_t max_word_letters) {
   const auto w = word(max_word_letters);
   const auto space = fmt::literal(U" ");
   return fmt::concat({
      fmt::range(w, U' ', 1, 4),
      fmt::integral(1, 1053),
      space,
      fmt::range(w, U' ', 2, 8),
      fmt::fixed(std::vector<CharSet>(5, CharSet::digits())),
      space,
      fmt::prefix_free_set(us_state_codes()),
   });
}

FormatSpec transaction() {
   const auto comma = fmt::literal(U", ");
   return fmt::concat({
      fmt::date({1900, 1, 1}, {2013, 9, 23}),
      comma,
      fmt::ssn(),
      comma,
      fmt::ccn(),
   });
}

FormatSpec transaction_sgfpe() {
   const auto d = CharSet::digits();
   std::vector<CharSet> sets = {
      CharSet::range(U'0', U'3'), d, CharSet::of(U"."), CharSet::range(U'0', U'1'), d, CharSet::of(U"."),
      CharSet::range(U'1', U'2'), d, d, d, CharSet::of(U","), CharSet::of(U" "),
   };
   sets.insert(sets.end(), 9, d);
   sets.push_back(CharSet::of(U","));
   sets.push_back(CharSet::of(U" "));
   sets.insert(sets.end(), 16, d);
   return fmt::fixed(std::move(sets));
}

}  // namespace gfpe::catalog
