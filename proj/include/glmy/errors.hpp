#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace glmy {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed digraph input. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : Error(format(what, line, column)), line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    static std::string format(const std::string& what, std::size_t line, std::size_t column) {
        if (line == 0) return what;
        return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what;
    }

    std::size_t line_;
    std::size_t column_;
};

class SelfLoopError : public Error {
public:
    explicit SelfLoopError(const std::string& label)
        : Error("self-edge on vertex '" + label + "'"), label_(label) {}
    const std::string& label() const noexcept { return label_; }

private:
    std::string label_;
};

/// A directed cycle was found. The witness lists the vertex labels of the
/// cycle with the first vertex repeated at the end (a, b, a).
class CycleError : public Error {
public:
    explicit CycleError(std::vector<std::string> witness)
        : Error(format(witness)), witness_(std::move(witness)) {}
    const std::vector<std::string>& witness() const noexcept { return witness_; }

private:
    static std::string format(const std::vector<std::string>& w) {
        std::string s = "directed cycle: ";
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i) s += " -> ";
            s += w[i];
        }
        return s;
    }

    std::vector<std::string> witness_;
};

/// An enumeration or dense matrix would exceed the configured size cap.
class SizeLimitError : public Error {
public:
    using Error::Error;
};

/// An internal identity that must hold exactly did not. Signals a bug.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

/// Hodge decomposition dimension or orthogonality check failed.
class DecompositionError : public Error {
public:
    using Error::Error;
};

/// Path cannot be mapped to (or recovered from) the qubit register code.
class EncodingError : public Error {
public:
    using Error::Error;
};

/// Invalid argument to an operation (bad degree, empty config and so on).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

}  // namespace glmy
