#pragma once

#include <stdexcept>
#include <string>

namespace halin {

enum class Errc {
    NotATree,
    Degree2Internal,
    CycleMismatch,
    NonPlanar,
    IsWheel,
    NotAFan,
    InfeasibleSlot,
    TourMissingPseudoNode,
    NotAPath,
    UnsupportedK,
    InvalidK,
    NotHamiltonian,
    TooSmall,
    TooLarge,
    InvalidParams,
    MalformedFormula,
    MalformedCnf,
    TooManyVariables,
    NonZeroCostTour,
    ConflictingLiterals,
    InfeasibleTables,
    ParseError,
};

const char* errc_name(Errc c);

class HalinError : public std::runtime_error {
  public:
    HalinError(Errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

    Errc code() const { return code_; }

  private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw HalinError(code, msg); }

}  // namespace halin
