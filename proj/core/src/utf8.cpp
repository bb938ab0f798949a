#include "gfpe/utf8.hpp"

#include "gfpe/error.hpp"

namespace gfpe::utf8 {

bool is_scalar_value(char32_t c) noexcept {
   return c <= 0x10FFFF && !(c >= 0xD800 && c <= 0xDFFF);
}

std::u32string decode(std::string_view text) {
   std::u32string out;
   out.reserve(text.size());
   std::size_t i = 0;
   auto fail = [&](const char* why) {
      throw Error(ErrorCode::InvalidEncoding, std::string(why) + " at byte " + std::to_string(i));
   };
   while(i < text.size()) {
      const auto b0 = static_cast<unsigned char>(text[i]);
      if(b0 < 0x80) {
         out.push_back(b0);
         ++i;
         continue;
      }
      std::size_t len = 0;
      char32_t cp = 0;
      char32_t min = 0;
      if((b0 & 0xE0) == 0xC0) {
         len = 2;
         cp = b0 & 0x1F;
         min = 0x80;
      } else if((b0 & 0xF0) == 0xE0) {
         len = 3;
         cp = b0 & 0x0F;
         min = 0x800;
      } else if((b0 & 0xF8) == 0xF0) {
         len = 4;
         cp = b0 & 0x07;
         min = 0x10000;
      } else {
         fail("invalid lead byte");
      }
      if(i + len > text.size()) {
         fail("truncated sequence");
      }
      for(std::size_t k = 1; k < len; ++k) {
         const auto b = static_cast<unsigned char>(text[i + k]);
         if((b & 0xC0) != 0x80) {
            fail("invalid continuation byte");
         }
         cp = (cp << 6) | (b & 0x3F);
      }
      if(cp < min) {
         fail("overlong encoding");
      }
      if(!is_scalar_value(cp)) {
         fail("not a scalar value");
      }
      out.push_back(cp);
      i += len;
   }
   return out;
}

std::string encode(char32_t c) {
   std::string out;
   if(c < 0x80) {
      out.push_back(static_cast<char>(c));
   } else if(c < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (c >> 6)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
   } else if(c < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (c >> 12)));
      out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
   } else {
      out.push_back(static_cast<char>(0xF0 | (c >> 18)));
      out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
   }
   return out;
}

std::string encode(std::u32string_view text) {
   std::string out;
   out.reserve(text.size());
   for(char32_t c : text) {
      out += encode(c);
   }
   return out;
}

}  // namespace gfpe::utf8
