#pragma once

#include <stdexcept>
#include <string>

namespace kap {

// Error codes shared across modules. Each maps to a stable name so the CLI
// can report them and tests can match on the exact failure kind.
enum class Errc {
    MalformedFraction,
    EvenP,
    NotCoprime,
    MultiComponentLink,
    EmptyWord,
    BadPresentation,
    UnknownVariable,
    ZeroInput,
    DegreeZero,
    NonConvergence,
    WrongGeneratorCount,
    DenominatorIdenticallyZero,
    EliminationOverflow,
    EmptySystem,
    UnsupportedPresentation,
    ToleranceNotMet,
    Infeasible,
    SliceBlocked,
    CorridorTooNarrow,
    DegenerateSlice,
    BadConfig,
    IoError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

} // namespace kap
