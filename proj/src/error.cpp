#include "clubench/error.hpp"

namespace clubench {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::MissingRoot: return "MissingRoot";
    case Errc::MissingDataset: return "MissingDataset";
    case Errc::MissingLabels: return "MissingLabels";
    case Errc::ParseError: return "ParseError";
    case Errc::LabelError: return "LabelError";
    case Errc::InvariantError: return "InvariantError";
    case Errc::IoError: return "IoError";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::NonSquare: return "NonSquare";
    case Errc::NonFinite: return "NonFinite";
    case Errc::EmptyRow: return "EmptyRow";
    case Errc::TooFewPoints: return "TooFewPoints";
    case Errc::AllNoise: return "AllNoise";
    case Errc::KMismatch: return "KMismatch";
    case Errc::MissingK: return "MissingK";
    case Errc::BadK: return "BadK";
    case Errc::BadDimension: return "BadDimension";
    case Errc::BadArgument: return "BadArgument";
    case Errc::ExternalFailure: return "ExternalFailure";
  }
  return "Unknown";
}

}  // namespace clubench
