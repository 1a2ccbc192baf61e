#include "tsmeta/error.hpp"

namespace tsmeta {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::DuplicateTimestamp: return "DuplicateTimestamp";
    case Errc::NonUniformSpacing: return "NonUniformSpacing";
    case Errc::NonFiniteValue: return "NonFiniteValue";
    case Errc::TooShort: return "TooShort";
    case Errc::BadPeriod: return "BadPeriod";
    case Errc::BadHorizon: return "BadHorizon";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::ZeroActual: return "ZeroActual";
    case Errc::ConstantInput: return "ConstantInput";
    case Errc::InvalidParams: return "InvalidParams";
    case Errc::EmptySpaceWithZeroTrials: return "EmptySpaceWithZeroTrials";
    case Errc::GridTooLarge: return "GridTooLarge";
    case Errc::DegenerateSplit: return "DegenerateSplit";
    case Errc::AllModelsFailed: return "AllModelsFailed";
    case Errc::TooFewRecords: return "TooFewRecords";
    case Errc::NoTrainingRows: return "NoTrainingRows";
    case Errc::SingularSystem: return "SingularSystem";
    case Errc::SchemaMismatch: return "SchemaMismatch";
    case Errc::CorruptFile: return "CorruptFile";
    case Errc::OverlapError: return "OverlapError";
    case Errc::BadCheckpoint: return "BadCheckpoint";
    case Errc::ParseError: return "ParseError";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

}  // namespace tsmeta
