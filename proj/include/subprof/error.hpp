#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace subprof {

enum class Errc {
    InvalidArgument,
    MalformedInput,
    MalformedConfig,
    MissingArtifact,
    AllDocumentsEmpty,
    TooFewInitiatives,
    EmptyCorpus,
    InvalidK,
    NoKnownTerms,
    DegenerateDistribution,
    ZeroDenominator,
    EmptyInput,
    DuplicateId,
    ZeroVector,
    UndefinedForEmptyQrel,
    EmptyQuery,
    SingleCategory,
    InvalidSpec,
};

std::string_view errc_name(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it to a distinct exit status.
class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

    Errc code() const noexcept { return code_; }

  private:
    Errc code_;
};

}  // namespace subprof
