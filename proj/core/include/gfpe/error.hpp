#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gfpe {

enum class ErrorCode {
   // format validation
   EmptyAlphabet,
   OverlappingUnionAlphabets,
   InseparableConcat,
   DelimiterInAlphabet,
   NotPrefixFree,
   EmptyFormat,
   InvalidParameter,
   // membership / ranking
   InvalidEncoding,
   ParseFailure,
   NotInFormat,
   RankOutOfRange,
   BadLength,
   NonDigit,
   OutOfRange,
   // integer FPE
   InputOutOfDomain,
   WalkBudgetExceeded,
   UnknownBackend,
   BadKey,
   // splitting
   UnsplittableAtom,
   ExampleFormatMismatch,
   VectorShapeMismatch,
   // cipher
   EntropyUnavailable,
   UnsupportedKeySize,
   // format text
   SyntaxError,
   UnknownNodeType,
   BadParameter,
   // analysis / io
   NotSubset,
   Io,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
   Error(ErrorCode code, const std::string& message);

   ErrorCode code() const noexcept { return code_; }

private:
   ErrorCode code_;
};

struct Violation {
   ErrorCode code;
   std::string path;  // "$", "$.parts[1]", "$.inner", ...
   std::string message;
};

// Thrown by compile() when a spec breaks one or more well-formedness rules.
class FormatError : public Error {
public:
   explicit FormatError(std::vector<Violation> violations);

   const std::vector<Violation>& violations() const noexcept { return violations_; }

private:
   std::vector<Violation> violations_;
};

}  // namespace gfpe
