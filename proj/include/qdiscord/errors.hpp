#ifndef QDISCORD_ERRORS_HPP
#define QDISCORD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qdiscord {

enum class StateErrorKind { NotHermitian, TraceNotOne, NotPositive, NotNormalized };

inline const char* to_string(StateErrorKind kind) {
    switch (kind) {
    case StateErrorKind::NotHermitian: return "NotHermitian";
    case StateErrorKind::TraceNotOne: return "TraceNotOne";
    case StateErrorKind::NotPositive: return "NotPositive";
    case StateErrorKind::NotNormalized: return "NotNormalized";
    }
    return "Unknown";
}

/// A matrix or vector failed one of the state invariants. `deviation` is the
/// measured size of the violation (always non-negative).
class StateError : public std::runtime_error {
public:
    StateError(StateErrorKind kind, double deviation)
        : std::runtime_error(std::string(to_string(kind)) + " (deviation " + std::to_string(deviation) + ")"),
          kind_(kind), deviation_(deviation) {}

    StateErrorKind kind() const noexcept { return kind_; }
    double deviation() const noexcept { return deviation_; }

private:
    StateErrorKind kind_;
    double deviation_;
};

class ParamOutOfRange : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class UnsupportedFamily : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class OptimizerDidNotConverge : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NoSignChange : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace qdiscord

#endif // QDISCORD_ERRORS_HPP
