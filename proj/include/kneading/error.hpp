#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kneading {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A point was evaluated outside the domain of a map.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Two maps or systems were combined over different domains.
class DomainMismatch : public Error {
public:
    using Error::Error;
};

class PieceIndexError : public Error {
public:
    using Error::Error;
};

/// Structurally malformed vertex data (non-increasing x, wrong endpoints, ...).
class MapError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

/// Raised when a sequence or map fails validation; carries every violation found.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<std::string> violations)
        : Error(join(violations)), violations_(std::move(violations)) {}

    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string out = "validation failed";
        for (const auto& s : v) {
            out += "\n  - ";
            out += s;
        }
        return out;
    }

    std::vector<std::string> violations_;
};

class UnknownFamily : public Error {
public:
    using Error::Error;
};

/// Kneading tables of different ranges, depths or modalities were compared.
class ShapeMismatch : public Error {
public:
    using Error::Error;
};

class ModalityMismatch : public Error {
public:
    using Error::Error;
};

class NonMonotoneInput : public Error {
public:
    using Error::Error;
};

/// A defect computation needed a match that could not be constructed.
class MissingMatch : public Error {
public:
    using Error::Error;
};

class NoDeclaredLimit : public Error {
public:
    using Error::Error;
};

}  // namespace kneading
