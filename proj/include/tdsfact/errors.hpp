#pragma once

#include <stdexcept>
#include <string>

namespace tdsfact {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed textual input (quasi-polynomial grammar, job files).
class ParseError : public Error {
public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

// Evaluation requested at or too close to a pole.
class EvalError : public Error {
public:
  explicit EvalError(const std::string& what) : Error(what) {}
};

// Root counting / locating failed (boundary roots, non-convergence,
// unsatisfied finiteness precondition).
class RootfindError : public Error {
public:
  explicit RootfindError(const std::string& what) : Error(what) {}
};

// Plant not admissible for the requested factorization, roots on the
// imaginary axis, realizability violations.
class FactorizationError : public Error {
public:
  explicit FactorizationError(const std::string& what) : Error(what) {}
};

// Decomposition failures: claimed cancellation point is not a pole,
// residue extraction inconsistent, FIR certification failed.
class PhiError : public Error {
public:
  explicit PhiError(const std::string& what) : Error(what) {}
};

// Controller assembly failures: unsplittable carrier zeros, inconsistent
// synthesis data, missing factorization pieces.
class ControllerError : public Error {
public:
  explicit ControllerError(const std::string& what) : Error(what) {}
};

// Ill-conditioned numerics: residue extraction or reconstruction did not
// meet its residual target.
class NumericalError : public Error {
public:
  explicit NumericalError(const std::string& what) : Error(what) {}
};

// Requested a computation that is deliberately not implemented.
class NotSupportedError : public Error {
public:
  explicit NotSupportedError(const std::string& what) : Error(what) {}
};

} // namespace tdsfact
