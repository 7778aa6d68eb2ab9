#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace abstractrank {

enum class Errc {
  MalformedRecord,
  DuplicateId,
  EmptyCorpus,
  MissingLabel,
  ClassTooSmall,
  UnknownLabel,
  IndexOutOfRange,
  EmptyLexicon,
  EmptyVocabulary,
  DimensionMismatch,
  RankTooLarge,
  DegenerateData,
  TooFewPoints,
  SingleClass,
  NonFiniteLoss,
  LengthMismatch,
  EmptyText,
  EmptySegment,
  InvalidArgument,
  Io,
  SchemaVersion,
};

inline std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::MalformedRecord: return "MalformedRecord";
    case Errc::DuplicateId: return "DuplicateId";
    case Errc::EmptyCorpus: return "EmptyCorpus";
    case Errc::MissingLabel: return "MissingLabel";
    case Errc::ClassTooSmall: return "ClassTooSmall";
    case Errc::UnknownLabel: return "UnknownLabel";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::EmptyLexicon: return "EmptyLexicon";
    case Errc::EmptyVocabulary: return "EmptyVocabulary";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::RankTooLarge: return "RankTooLarge";
    case Errc::DegenerateData: return "DegenerateData";
    case Errc::TooFewPoints: return "TooFewPoints";
    case Errc::SingleClass: return "SingleClass";
    case Errc::NonFiniteLoss: return "NonFiniteLoss";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::EmptyText: return "EmptyText";
    case Errc::EmptySegment: return "EmptySegment";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Io: return "Io";
    case Errc::SchemaVersion: return "SchemaVersion";
  }
  return "Unknown";
}

/// Every failure raised by the library. `code()` identifies the contract
/// violation; `what()` carries the offending value (id, line, class...).
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

namespace detail {

[[noreturn]] inline void fail(Errc code, const std::string& detail) { throw Error(code, detail); }

}  // namespace detail
}  // namespace abstractrank
