#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ghom {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input that cannot be turned into a valid object (files, specs, colourings).
class MalformedSpec : public Error {
 public:
  using Error::Error;
};

class ParseError : public MalformedSpec {
 public:
  using MalformedSpec::MalformedSpec;
};

class UnknownUnit : public Error {
 public:
  using Error::Error;
};

class NotPrincipal : public Error {
 public:
  using Error::Error;
};

class NotAComplex : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class EnumerationCapExceeded : public Error {
 public:
  EnumerationCapExceeded(int degree, std::size_t count, std::size_t cap)
      : Error("enumeration cap exceeded in degree " + std::to_string(degree) + ": " +
              std::to_string(count) + " tuples > cap " + std::to_string(cap)),
        degree_(degree),
        count_(count) {}
  int degree() const { return degree_; }
  std::size_t count() const { return count_; }

 private:
  int degree_;
  std::size_t count_;
};

class NotLebesgue : public Error {
 public:
  using Error::Error;
};

class NotBounded : public Error {
 public:
  using Error::Error;
};

class TargetKindMismatch : public Error {
 public:
  using Error::Error;
};

class IntersectionWitnessNotFound : public Error {
 public:
  using Error::Error;
};

class NotStabilized : public Error {
 public:
  using Error::Error;
};

class WitnessInvalid : public Error {
 public:
  using Error::Error;
};

class DegreeZero : public Error {
 public:
  using Error::Error;
};

}  // namespace ghom
