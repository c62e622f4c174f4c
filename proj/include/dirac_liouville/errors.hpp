#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dirac_liouville {

/// Location of a token inside a source string. Offsets are byte-based and may
/// point one past the end of the input (errors at end of text).
struct SourcePosition {
    std::size_t offset = 0;
    std::size_t line = 1;
    std::size_t column = 1;
};

enum class ParseErrorKind {
    Syntax,         // malformed input
    NonPolynomial,  // x in a divisor, or a negative exponent
    NonConstant,    // x where a scalar was required
    ExponentCap,    // exponent above the configured cap
};

class ParseError : public std::runtime_error {
public:
    ParseError(ParseErrorKind kind, SourcePosition position, const std::string& message)
        : std::runtime_error(message + " (at offset " + std::to_string(position.offset) +
                             ", line " + std::to_string(position.line) + ", column " +
                             std::to_string(position.column) + ")"),
          kind_(kind),
          position_(position) {}

    ParseErrorKind kind() const noexcept { return kind_; }
    const SourcePosition& position() const noexcept { return position_; }

private:
    ParseErrorKind kind_;
    SourcePosition position_;
};

// Asymptotic square root failure modes.
class OddDegreeError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};
class DegreeTooSmallError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};
class FieldExtensionError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class WrongCouplingError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};
class NotApplicableError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};
class UnverifiableFormError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};
class MixedExponentialsError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace dirac_liouville
