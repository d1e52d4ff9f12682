#pragma once

#include <stdexcept>
#include <string>

namespace qlax {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// exactfield
class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by the zero expression") {}
  explicit DivisionByZero(const std::string& what) : Error(what) {}
};

class SubstitutionSingular : public Error {
 public:
  using Error::Error;
};

class DenominatorContainsSymbol : public Error {
 public:
  using Error::Error;
};

class LiteralParseError : public Error {
 public:
  using Error::Error;
};

// quadcat
class SingularSolve : public Error {
 public:
  using Error::Error;
};

// lattice4d / reduction
class SingularStep : public Error {
 public:
  using Error::Error;
};

class MissingValue : public Error {
 public:
  using Error::Error;
};

class OutOfDomain : public Error {
 public:
  using Error::Error;
};

class InvalidInitialData : public Error {
 public:
  using Error::Error;
};

class PeriodicityViolation : public Error {
 public:
  using Error::Error;
};

class ZeroOmega : public Error {
 public:
  using Error::Error;
};

// laxbuild / laxverify
class ZeroDenominator : public Error {
 public:
  using Error::Error;
};

// painleve
class BasePointHit : public Error {
 public:
  BasePointHit(std::string factor)
      : Error("base point hit: denominator " + factor + " vanished"), factor_(std::move(factor)) {}

  const std::string& factor() const { return factor_; }

 private:
  std::string factor_;
};

}  // namespace qlax
