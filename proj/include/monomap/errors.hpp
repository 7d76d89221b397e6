// Error types shared across the library.
#pragma once

#include <stdexcept>
#include <string>

namespace monomap {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error("parse error: " + msg) {}
};

struct SingularMatrix : Error {
    SingularMatrix() : Error("matrix is singular") {}
};

struct NotDiagonalizable : Error {
    NotDiagonalizable() : Error("matrix is not diagonalizable") {}
};

struct NotComplexPair : Error {
    NotComplexPair() : Error("p^2 >= 4q: not a genuine complex pair") {}
};

struct NotStrictlyConvex : Error {
    NotStrictlyConvex() : Error("cone contains a line") {}
};

struct BadFan : Error {
    explicit BadFan(const std::string& witness) : Error("invalid fan: " + witness) {}
};

struct SupportMismatch : Error {
    SupportMismatch() : Error("fans do not have equal support") {}
};

struct NotInvariant : Error {
    explicit NotInvariant(const std::string& what) : Error("fan not invariant: " + what) {}
};

struct NotSimplicial : Error {
    NotSimplicial() : Error("fan is not simplicial") {}
};

struct DegeneratePolytope : Error {
    DegeneratePolytope() : Error("polytope is not full-dimensional") {}
};

struct InsufficientData : Error {
    explicit InsufficientData(const std::string& msg) : Error("insufficient data: " + msg) {}
};

struct WrongCase : Error {
    explicit WrongCase(const std::string& msg) : Error("wrong classification case: " + msg) {}
};

// Sentinel for conditions that are impossible by construction; seeing one is a bug.
struct InternalError : Error {
    explicit InternalError(const std::string& msg) : Error("internal error: " + msg) {}
};

}  // namespace monomap
