#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fairrank {

enum class ErrorCode {
  DuplicateId,
  UnknownAttribute,
  NonFiniteScore,
  EmptyPool,
  InvalidRatio,
  RatioDomainMismatch,
  ZeroProportionWithCandidates,
  PlatformNotSubset,
  InfeasibleActivity,
  InvalidActivity,
  UnknownCandidate,
  MissingFromRanking,
  InvalidArgument,
  InvalidConfig,
  ParseError,
  IoError,
  MissingFlag,
};

std::string_view to_string(ErrorCode code);

// Every validation failure in the library surfaces as this type; the CLI maps
// it to `ERROR <code>: <detail>` and exit status 2.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string detail);

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace fairrank
