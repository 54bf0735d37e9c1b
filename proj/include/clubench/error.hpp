#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace clubench {

enum class Errc {
  MissingRoot,
  MissingDataset,
  MissingLabels,
  ParseError,
  LabelError,
  InvariantError,
  IoError,
  LengthMismatch,
  NonSquare,
  NonFinite,
  EmptyRow,
  TooFewPoints,
  AllNoise,
  KMismatch,
  MissingK,
  BadK,
  BadDimension,
  BadArgument,
  ExternalFailure,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers can branch on the kind of failure without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace clubench
