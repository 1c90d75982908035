#pragma once

#include <stdexcept>
#include <string>

namespace dtk {

// Error taxonomy shared by the library and the CLI exit-code mapping.
enum class ErrorKind {
    Parse,
    Eval,
    Domain,
    NonVanishing,
    Invariant,
    SingularSystem,
    ComplexCharacteristic,
    BracketLost,
    StepTooCoarse,
    Compatibility,
    NonConvergence,
    Config,
    Io,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t position)
        : Error(ErrorKind::Parse, msg + " (at position " + std::to_string(position) + ")"),
          pos(position) {}
    std::size_t pos;
};

struct EvalError : Error {
    explicit EvalError(const std::string& msg) : Error(ErrorKind::Eval, msg) {}
};

struct DomainViolation : Error {
    explicit DomainViolation(const std::string& msg) : Error(ErrorKind::Domain, msg) {}
};

struct NonVanishingViolation : Error {
    explicit NonVanishingViolation(const std::string& msg) : Error(ErrorKind::NonVanishing, msg) {}
};

struct InvariantViolation : Error {
    explicit InvariantViolation(const std::string& msg) : Error(ErrorKind::Invariant, msg) {}
};

struct SingularSystem : Error {
    explicit SingularSystem(const std::string& msg) : Error(ErrorKind::SingularSystem, msg) {}
};

struct ComplexCharacteristic : Error {
    explicit ComplexCharacteristic(const std::string& msg)
        : Error(ErrorKind::ComplexCharacteristic, msg) {}
};

struct BracketLost : Error {
    explicit BracketLost(const std::string& msg) : Error(ErrorKind::BracketLost, msg) {}
};

struct StepTooCoarse : Error {
    explicit StepTooCoarse(const std::string& msg) : Error(ErrorKind::StepTooCoarse, msg) {}
};

struct CompatibilityViolation : Error {
    explicit CompatibilityViolation(const std::string& msg)
        : Error(ErrorKind::Compatibility, msg) {}
};

struct NonConvergence : Error {
    explicit NonConvergence(const std::string& msg) : Error(ErrorKind::NonConvergence, msg) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error(ErrorKind::Config, msg) {}
};

struct IoError : Error {
    explicit IoError(const std::string& msg) : Error(ErrorKind::Io, msg) {}
};

} // namespace dtk
