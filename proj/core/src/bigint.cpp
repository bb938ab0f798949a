#include "gfpe/bigint.hpp"

#include <cctype>

#include "gfpe/error.hpp"

namespace gfpe {

BigInt parse_bigint(std::string_view text) {
   std::string_view digits = text;
   if(!digits.empty() && digits.front() == '-') {
      digits.remove_prefix(1);
   }
   if(digits.empty()) {
      throw Error(ErrorCode::InvalidParameter, "empty integer literal");
   }
   for(char c : digits) {
      if(!std::isdigit(static_cast<unsigned char>(c))) {
         throw Error(ErrorCode::InvalidParameter, "not an integer: '" + std::string(text) + "'");
      }
   }
   return BigInt(std::string(text), 10);
}

BigInt parse_size_literal(std::string_view text) {
   if(text.size() > 2 && text.substr(0, 2) == "2^") {
      const BigInt exponent = parse_bigint(text.substr(2));
      if(exponent < 0 || exponent > 1000000) {
         throw Error(ErrorCode::InvalidParameter, "exponent out of range: '" + std::string(text) + "'");
      }
      return pow(BigInt(2), exponent.get_ui());
   }
   return parse_bigint(text);
}

std::string to_string(const BigInt& value) {
   return value.get_str(10);
}

BigInt pow(const BigInt& base, unsigned long exponent) {
   BigInt result;
   mpz_pow_ui(result.get_mpz_t(), base.get_mpz_t(), exponent);
   return result;
}

std::size_t bit_length(const BigInt& value) {
   if(value == 0) {
      return 0;
   }
   return mpz_sizeinbase(value.get_mpz_t(), 2);
}

std::vector<std::uint8_t> to_bytes(const BigInt& value) {
   if(value < 0) {
      throw Error(ErrorCode::InvalidParameter, "to_bytes of a negative value");
   }
   if(value == 0) {
      return {};
   }
   std::vector<std::uint8_t> out((bit_length(value) + 7) / 8);
   std::size_t written = 0;
   mpz_export(out.data(), &written, 1, 1, 1, 0, value.get_mpz_t());
   out.resize(written);
   return out;
}

BigInt from_bytes(std::span<const std::uint8_t> bytes) {
   BigInt result;
   if(!bytes.empty()) {
      mpz_import(result.get_mpz_t(), bytes.size(), 1, 1, 1, 0, bytes.data());
   }
   return result;
}

std::optional<std::uint64_t> to_u64(const BigInt& value) {
   if(value < 0 || bit_length(value) > 64) {
      return std::nullopt;
   }
   const auto bytes = to_bytes(value);
   std::uint64_t out = 0;
   for(auto b : bytes) {
      out = (out << 8) | b;
   }
   return out;
}

}  // namespace gfpe
