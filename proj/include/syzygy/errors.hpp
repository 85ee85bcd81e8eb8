#pragma once

#include <stdexcept>
#include <string>

namespace syzygy {

// Base class for all domain errors raised by the library. The CLI maps
// subclasses onto its documented exit codes.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// --- configuration / input errors (CLI exit code 2) ---

class CompositeModulus : public Error {
public:
    explicit CompositeModulus(const std::string& msg) : Error(msg) {}
};

class ModulusTooLarge : public Error {
public:
    explicit ModulusTooLarge(const std::string& msg) : Error(msg) {}
};

class BadK : public Error {
public:
    explicit BadK(const std::string& msg) : Error(msg) {}
};

class CharDividesDegree : public Error {
public:
    explicit CharDividesDegree(const std::string& msg) : Error(msg) {}
};

class InvalidForm : public Error {
public:
    explicit InvalidForm(const std::string& msg) : Error(msg) {}
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

// --- arithmetic / shape errors ---

class DivisionByZero : public Error {
public:
    explicit DivisionByZero(const std::string& msg) : Error(msg) {}
};

class DegreeMismatch : public Error {
public:
    explicit DegreeMismatch(const std::string& msg) : Error(msg) {}
};

class DimensionMismatch : public Error {
public:
    explicit DimensionMismatch(const std::string& msg) : Error(msg) {}
};

class IndexOutOfRange : public Error {
public:
    explicit IndexOutOfRange(const std::string& msg) : Error(msg) {}
};

// --- resource cap (CLI exit code 3) ---

class ResourceCap : public Error {
public:
    explicit ResourceCap(const std::string& msg) : Error(msg) {}
};

} // namespace syzygy
