#pragma once

#include <stdexcept>
#include <string>

namespace polyring {

// Base of every error raised by the library. The CLI maps subclasses to
// process exit codes (invalid input 3, numerically singular 2, collision 4).
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

// A problem instance violates a model invariant (N < 3, nonpositive radius,
// coincident polygons, a < 2, mismatched lengths).
class InvalidInstanceError : public Error {
public:
    using Error::Error;
};

// Two bodies coincide, or a closed form is evaluated on its singular locus
// (equal radii in a planar interaction sum).
class SingularGeometryError : public Error {
public:
    using Error::Error;
};

class ZeroTotalMassError : public Error {
public:
    using Error::Error;
};

// A mode matrix fell below the relative determinant threshold or the
// condition estimate blew up; no unique mass solution exists numerically.
class NumericallySingularError : public Error {
public:
    NumericallySingularError(const std::string& what_arg, double det)
        : Error(what_arg), determinant(det) {}
    double determinant;
};

// Integration aborted: a pair distance fell below the collision guard.
class CollisionError : public Error {
public:
    CollisionError(const std::string& what_arg, double t)
        : Error(what_arg), time(t) {}
    double time;
};

}  // namespace polyring
