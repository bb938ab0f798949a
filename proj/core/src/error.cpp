#include "gfpe/error.hpp"

namespace gfpe {

std::string_view to_string(ErrorCode code) {
   switch(code) {
      case ErrorCode::EmptyAlphabet: return "EmptyAlphabet";
      case ErrorCode::OverlappingUnionAlphabets: return "OverlappingUnionAlphabets";
      case ErrorCode::InseparableConcat: return "InseparableConcat";
      case ErrorCode::DelimiterInAlphabet: return "DelimiterInAlphabet";
      case ErrorCode::NotPrefixFree: return "NotPrefixFree";
      case ErrorCode::EmptyFormat: return "EmptyFormat";
      case ErrorCode::InvalidParameter: return "InvalidParameter";
      case ErrorCode::InvalidEncoding: return "InvalidEncoding";
      case ErrorCode::ParseFailure: return "ParseFailure";
      case ErrorCode::NotInFormat: return "NotInFormat";
      case ErrorCode::RankOutOfRange: return "RankOutOfRange";
      case ErrorCode::BadLength: return "BadLength";
      case ErrorCode::NonDigit: return "NonDigit";
      case ErrorCode::OutOfRange: return "OutOfRange";
      case ErrorCode::InputOutOfDomain: return "InputOutOfDomain";
      case ErrorCode::WalkBudgetExceeded: return "WalkBudgetExceeded";
      case ErrorCode::UnknownBackend: return "UnknownBackend";
      case ErrorCode::BadKey: return "BadKey";
      case ErrorCode::UnsplittableAtom: return "UnsplittableAtom";
      case ErrorCode::ExampleFormatMismatch: return "ExampleFormatMismatch";
      case ErrorCode::VectorShapeMismatch: return "VectorShapeMismatch";
      case ErrorCode::EntropyUnavailable: return "EntropyUnavailable";
      case ErrorCode::UnsupportedKeySize: return "UnsupportedKeySize";
      case ErrorCode::SyntaxError: return "SyntaxError";
      case ErrorCode::UnknownNodeType: return "UnknownNodeType";
      case ErrorCode::BadParameter: return "BadParameter";
      case ErrorCode::NotSubset: return "NotSubset";
      case ErrorCode::Io: return "Io";
   }
   return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message) :
      std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

namespace {

std::string summarize(const std::vector<Violation>& violations) {
   std::string out = std::to_string(violations.size()) + " violation(s)";
   for(const auto& v : violations) {
      out += "; ";
      out += to_string(v.code);
      out += " at " + v.path + ": " + v.message;
   }
   return out;
}

ErrorCode first_code(const std::vector<Violation>& violations) {
   return violations.empty() ? ErrorCode::InvalidParameter : violations.front().code;
}

}  // namespace

FormatError::FormatError(std::vector<Violation> violations) :
      Error(first_code(violations), summarize(violations)), violations_(std::move(violations)) {}

}  // namespace gfpe
