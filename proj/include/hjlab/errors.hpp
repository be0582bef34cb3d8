#pragma once

#include <stdexcept>
#include <string>

namespace hjlab {

// Bad arguments (dimension mismatch, degenerate boxes, empty inputs...).
struct ArgumentError : std::invalid_argument {
  explicit ArgumentError(const std::string& what) : std::invalid_argument(what) {}
};

// A characteristic left the finite range of doubles.
struct BlowupError : std::runtime_error {
  double last_valid_time;
  BlowupError(const std::string& what, double t)
      : std::runtime_error(what), last_valid_time(t) {}
};

// Requested time is at or past a patch caustic.
struct HorizonError : std::runtime_error {
  int generator_id;
  double caustic_time;
  HorizonError(const std::string& what, int gen, double tc)
      : std::runtime_error(what), generator_id(gen), caustic_time(tc) {}
};

// Finite-difference scheme produced non-finite or overflowing values.
struct StabilityError : std::runtime_error {
  explicit StabilityError(const std::string& what) : std::runtime_error(what) {}
};

// Envelope query outside the convex hull of the data points.
struct InfeasibleError : std::runtime_error {
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

// Operation unsupported for the given field/dimension.
struct CapabilityError : std::runtime_error {
  explicit CapabilityError(const std::string& what) : std::runtime_error(what) {}
};

// Legendre dual ended up with no usable node.
struct EmptyDomainError : std::runtime_error {
  explicit EmptyDomainError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hjlab
