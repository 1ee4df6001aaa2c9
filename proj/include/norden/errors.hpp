#pragma once

#include <stdexcept>
#include <string>

namespace norden {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DegenerateMetric : public Error {
 public:
  using Error::Error;
};

class SlotOutOfRange : public Error {
 public:
  using Error::Error;
};

class AntisymmetryViolation : public Error {
 public:
  AntisymmetryViolation(const std::string& what, int i, int j, int k)
      : Error(what), i(i), j(j), k(k) {}
  int i, j, k;  // worst-violating index triple
};

class JacobiViolation : public Error {
 public:
  JacobiViolation(const std::string& what, int i, int j, int k)
      : Error(what), i(i), j(j), k(k) {}
  int i, j, k;
};

class NotAlmostComplex : public Error {
 public:
  using Error::Error;
};

class NotNordenCompatible : public Error {
 public:
  using Error::Error;
};

class WrongSignature : public Error {
 public:
  using Error::Error;
};

class NotW3 : public Error {
 public:
  using Error::Error;
};

class IsotropicPlane : public Error {
 public:
  using Error::Error;
};

class OnlyKahlerSolutions : public Error {
 public:
  using Error::Error;
};

class RetriesExhausted : public Error {
 public:
  using Error::Error;
};

/// Structural problem in an input file (bad JSON, bad shapes, conflicting
/// entries). Distinct from validation failures of a well-formed model.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace norden
