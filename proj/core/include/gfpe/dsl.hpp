#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "gfpe/error.hpp"
#include "gfpe/format.hpp"

namespace gfpe {

// SyntaxError, UnknownNodeType or BadParameter, with a 1-based position and
// the JSON pointer of the offending node ("" for the document root).
class DslError : public Error {
public:
   DslError(ErrorCode code, const std::string& message, std::size_t line, std::size_t column, std::string pointer);

   std::size_t line() const noexcept { return line_; }
   std::size_t column() const noexcept { return column_; }
   const std::string& pointer() const noexcept { return pointer_; }

private:
   std::size_t line_;
   std::size_t column_;
   std::string pointer_;
};

// JSON object notation; see README for the node reference.
FormatSpec parse_spec(std::string_view text);

// Canonical text: sorted keys, compact, every default explicit, charsets
// normalized, string sets deduplicated. Byte-stable; feeds the cipher's
// format fingerprint.
std::string serialize_spec(const FormatSpec& spec);

FormatSpec load_spec(const std::string& path);
// load_spec + compile.
Format load_format(const std::string& path);

}  // namespace gfpe
