#include "subprof/error.hpp"

namespace subprof {

std::string_view errc_name(Errc code) noexcept {
    switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::MalformedInput: return "MalformedInput";
    case Errc::MalformedConfig: return "MalformedConfig";
    case Errc::MissingArtifact: return "MissingArtifact";
    case Errc::AllDocumentsEmpty: return "AllDocumentsEmpty";
    case Errc::TooFewInitiatives: return "TooFewInitiatives";
    case Errc::EmptyCorpus: return "EmptyCorpus";
    case Errc::InvalidK: return "InvalidK";
    case Errc::NoKnownTerms: return "NoKnownTerms";
    case Errc::DegenerateDistribution: return "DegenerateDistribution";
    case Errc::ZeroDenominator: return "ZeroDenominator";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::DuplicateId: return "DuplicateId";
    case Errc::ZeroVector: return "ZeroVector";
    case Errc::UndefinedForEmptyQrel: return "UndefinedForEmptyQrel";
    case Errc::EmptyQuery: return "EmptyQuery";
    case Errc::SingleCategory: return "SingleCategory";
    case Errc::InvalidSpec: return "InvalidSpec";
    }
    return "Unknown";
}

}  // namespace subprof
