#pragma once

#include <stdexcept>
#include <string>

namespace sgc {

// Machine-readable failure codes, surfaced verbatim in CLI error reports.
enum class Errc {
    NotPrime,
    ZeroInverse,
    DimensionMismatch,
    Singular,
    BadDimensions,
    FieldTooSmall,
    TooManyReceivers,
    RegimeMismatch,
    Unsolved,
    RetriesExhausted,
    BadDelta,
    TooLarge,
    BadGamma,
    IndependenceViolated,
    ParseError,
    SchemaError,
    UsageError,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const { return code_; }
    const char* code_name() const { return errc_name(code_); }

private:
    Errc code_;
};

} // namespace sgc
