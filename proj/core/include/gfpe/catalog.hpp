#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gfpe/format.hpp"

namespace gfpe::catalog {

// The 50 states plus DC, as two-letter postal codes.
std::vector<std::u32string> us_state_codes();

// word = [A-Z][a-z]{0,max_word_letters}
FormatSpec word(std::size_t max_word_letters);

// name(1-4 words) num(1-1053) ' ' street(2-8 words) zip(5 digits) ' ' state,
// words space-delimited, e.g. "Jane Doe 53 Cherry Tree Road New York 12345 NY".
FormatSpec address(std::size_t max_word_letters = 15);

// "dd.mm.yyyy, SSN, CCN" with dates in [1900-01-01, 2013-09-23].
FormatSpec transaction();

// The same record simplified to fixed location-specific charsets:
// [0-3][0-9].[0-1][0-9].[1-2][0-9]{3}, [0-9]{9}, [0-9]{16}
FormatSpec transaction_sgfpe();

}  // namespace gfpe::catalog
