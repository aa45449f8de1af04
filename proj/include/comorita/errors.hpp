#pragma once
#include <stdexcept>
#include <string>

namespace comorita {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionError : Error {
  using Error::Error;
};
struct RingMismatch : Error {
  using Error::Error;
};
struct DomainError : Error {
  using Error::Error;
};
struct UnsupportedRing : Error {
  using Error::Error;
};
struct PurityObstruction : Error {
  using Error::Error;
};
struct ExactnessNotCertified : Error {
  using Error::Error;
};
struct HypothesisNotCertified : Error {
  using Error::Error;
};
struct UnverifiedContext : Error {
  using Error::Error;
};
struct AssociativityUnavailable : Error {
  using Error::Error;
};
struct CoendMismatch : Error {
  using Error::Error;
};
struct NonExactProbe : Error {
  using Error::Error;
};
struct Cancelled : Error {
  using Error::Error;
};

} // namespace comorita
