#pragma once

#include <stdexcept>
#include <string>

namespace ermakov {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// expr
struct UnboundSymbol : Error {
  explicit UnboundSymbol(const std::string& name)
      : Error("unbound symbol: " + name), symbol_name(name) {}
  std::string symbol_name;
};

struct DomainViolation : Error {
  DomainViolation(const std::string& what, const std::string& subtree)
      : Error(what + " in subtree: " + subtree), subtree(subtree) {}
  std::string subtree;
};

struct JetOverflow : Error {
  using Error::Error;
};

struct InsufficientSamples : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(std::size_t position, const std::string& message)
      : Error("parse error at position " + std::to_string(position) + ": " + message),
        position(position),
        message(message) {}
  std::size_t position;
  std::string message;
};

// mechanics
struct SingularMassMatrix : Error {
  using Error::Error;
};

// symmetry
struct UncertifiedGenerator : Error {
  using Error::Error;
};

struct DegenerateBasis : Error {
  using Error::Error;
};

// ermakov systems
struct ZeroRho : Error {
  using Error::Error;
};

struct ConstraintViolated : Error {
  explicit ConstraintViolated(const std::string& relation)
      : Error("Pinney coefficient constraint violated: " + relation), relation(relation) {}
  std::string relation;
};

struct NegativeRadicand : Error {
  using Error::Error;
};

struct QuadratureFailure : Error {
  using Error::Error;
};

// integrate
struct EvaluationFailure : Error {
  using Error::Error;
};

}  // namespace ermakov
