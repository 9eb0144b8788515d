// Domain error types. All carry a human-readable message; a few carry the
// piece of state a caller needs to recover (affine dimension, line number).
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ksctx {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ScenarioTooLarge : Error {
    explicit ScenarioTooLarge(std::size_t variables)
        : Error("scenario has " + std::to_string(variables) +
                " contextual variables; enumeration is limited to 30") {}
};

struct DegeneratePolytope : Error {
    long affine_dimension;
    DegeneratePolytope(long hull_dim, long ambient_dim)
        : Error("point set is not full-dimensional: affine hull has dimension " +
                std::to_string(hull_dim) + " in ambient dimension " +
                std::to_string(ambient_dim)),
          affine_dimension(hull_dim) {}
};

struct UnboundedPolyhedron : Error {
    UnboundedPolyhedron() : Error("halfspace system describes an unbounded polyhedron") {}
};

struct InfeasibleTarget : Error {
    explicit InfeasibleTarget(const std::string& msg) : Error(msg) {}
};

struct TargetOutOfRange : Error {
    explicit TargetOutOfRange(const std::string& msg) : Error(msg) {}
};

struct EmptyStream : Error {
    EmptyStream() : Error("stream is empty") {}
};

struct SpecInvalid : Error {
    explicit SpecInvalid(const std::string& msg) : Error(msg) {}
};

struct ParseError : Error {
    std::size_t line;
    ParseError(std::size_t line_number, const std::string& msg)
        : Error("line " + std::to_string(line_number) + ": " + msg), line(line_number) {}
};

struct DuplicateAtomInContext : ParseError {
    DuplicateAtomInContext(std::size_t line_number, const std::string& atom)
        : ParseError(line_number, "atom '" + atom + "' repeated within a context") {}
};

struct TooManyAtoms : Error {
    explicit TooManyAtoms(std::size_t atoms)
        : Error("hypergraph has " + std::to_string(atoms) +
                " atoms; state enumeration is limited to 128") {}
};

struct NonExhaustiveStates : Error {
    NonExhaustiveStates()
        : Error("embeddability checks require an exhaustive state enumeration") {}
};

}  // namespace ksctx
