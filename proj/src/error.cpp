#include "sgc/error.hpp"

namespace sgc {

const char* errc_name(Errc code) {
    switch (code) {
        case Errc::NotPrime: return "NotPrime";
        case Errc::ZeroInverse: return "ZeroInverse";
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::Singular: return "Singular";
        case Errc::BadDimensions: return "BadDimensions";
        case Errc::FieldTooSmall: return "FieldTooSmall";
        case Errc::TooManyReceivers: return "TooManyReceivers";
        case Errc::RegimeMismatch: return "RegimeMismatch";
        case Errc::Unsolved: return "Unsolved";
        case Errc::RetriesExhausted: return "RetriesExhausted";
        case Errc::BadDelta: return "BadDelta";
        case Errc::TooLarge: return "TooLarge";
        case Errc::BadGamma: return "BadGamma";
        case Errc::IndependenceViolated: return "IndependenceViolated";
        case Errc::ParseError: return "ParseError";
        case Errc::SchemaError: return "SchemaError";
        case Errc::UsageError: return "UsageError";
    }
    return "Unknown";
}

} // namespace sgc
