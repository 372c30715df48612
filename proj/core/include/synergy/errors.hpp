#pragma once

#include <stdexcept>
#include <string>

namespace synergy {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidConfig : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

class GranularityError : public Error {
 public:
  using Error::Error;
};

/// A square system the receivers will rely on came out rank deficient.
class DegenerateChannel : public Error {
 public:
  using Error::Error;
};

class MissingObservation : public Error {
 public:
  using Error::Error;
};

/// The transmitter tried to read channel state or an observation before it was fed back.
class CausalityViolation : public Error {
 public:
  using Error::Error;
};

class CertificateViolation : public Error {
 public:
  using Error::Error;
};

class CheckFailed : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace synergy
