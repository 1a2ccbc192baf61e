#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tsmeta {

// Every recoverable failure the library reports through exceptions carries
// one of these codes. Model fit failures are not exceptions; see FitOutcome.
enum class Errc {
  DuplicateTimestamp,
  NonUniformSpacing,
  NonFiniteValue,
  TooShort,
  BadPeriod,
  BadHorizon,
  LengthMismatch,
  ZeroActual,
  ConstantInput,
  InvalidParams,
  EmptySpaceWithZeroTrials,
  GridTooLarge,
  DegenerateSplit,
  AllModelsFailed,
  TooFewRecords,
  NoTrainingRows,
  SingularSystem,
  SchemaMismatch,
  CorruptFile,
  OverlapError,
  BadCheckpoint,
  ParseError,
  InvalidArgument,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace tsmeta
