#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace gfpe {

// Every size and rank in the library is exact; formats routinely exceed 2^800.
using BigInt = mpz_class;

// Decimal, optional leading '-'. Throws Error(InvalidParameter) on junk.
BigInt parse_bigint(std::string_view text);

// Accepts decimal or a power-of-two literal "2^k".
BigInt parse_size_literal(std::string_view text);

std::string to_string(const BigInt& value);

BigInt pow(const BigInt& base, unsigned long exponent);

// Number of significant bits; 0 for 0.
std::size_t bit_length(const BigInt& value);

// Big-endian, minimal length (0 encodes as an empty vector). Value must be >= 0.
std::vector<std::uint8_t> to_bytes(const BigInt& value);
BigInt from_bytes(std::span<const std::uint8_t> bytes);

// Narrowing helper: nullopt if the value does not fit.
std::optional<std::uint64_t> to_u64(const BigInt& value);

}  // namespace gfpe
