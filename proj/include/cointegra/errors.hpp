#pragma once

#include <stdexcept>
#include <string>

namespace cointegra {

/// Broad failure class. Maps one-to-one onto CLI exit codes.
enum class ErrorKind {
    Config,     ///< exit 2
    Data,       ///< exit 3
    Numerical,  ///< exit 4
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

    /// Copy of this error with `context` prepended to the message, kind preserved.
    [[nodiscard]] Error with_context(const std::string& context) const {
        return Error(kind_, "[" + context + "] " + what());
    }

private:
    ErrorKind kind_;
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(ErrorKind::Config, what) {}
};

class DataError : public Error {
public:
    explicit DataError(const std::string& what) : Error(ErrorKind::Data, what) {}
};

/// Fewer observations than the operation needs.
class InsufficientDataError : public DataError {
public:
    explicit InsufficientDataError(const std::string& what) : DataError("insufficient data: " + what) {}
};

/// Value outside the domain of a transform (e.g. log of a non-positive number).
class DomainError : public DataError {
public:
    explicit DomainError(const std::string& what) : DataError("domain error: " + what) {}
};

/// Malformed input file. Carries the 1-based line number when known.
class ParseError : public DataError {
public:
    ParseError(const std::string& what, int line)
        : DataError("parse error at line " + std::to_string(line) + ": " + what), line_(line) {}

    [[nodiscard]] int line() const noexcept { return line_; }

private:
    int line_;
};

class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& what) : Error(ErrorKind::Numerical, what) {}
};

/// Design matrix (or moment matrix) without full column rank.
class SingularDesignError : public NumericalError {
public:
    SingularDesignError(const std::string& what, int column)
        : NumericalError("singular design: " + what), column_(column) {}

    /// Index of the first column found to be a linear combination of earlier ones.
    [[nodiscard]] int column() const noexcept { return column_; }

private:
    int column_;
};

class DegenerateSeriesError : public NumericalError {
public:
    explicit DegenerateSeriesError(const std::string& what) : NumericalError("degenerate series: " + what) {}
};

inline int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Config: return 2;
        case ErrorKind::Data: return 3;
        case ErrorKind::Numerical: return 4;
    }
    return 1;
}

}  // namespace cointegra
