#pragma once
// Exception hierarchy for the library. Every failure mode that callers are
// expected to distinguish gets its own type; all derive from entlab::Error so
// a single catch clause can report any library failure.

#include <stdexcept>
#include <string>

namespace entlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A matrix that must be Hermitian (state, observable) is not, beyond tolerance.
class NonHermitianInput : public Error {
 public:
  using Error::Error;
};

// An iterative routine (eigen-iteration, relaxation to stationarity) failed to
// reach its tolerance within the allotted effort.
class NoConvergence : public Error {
 public:
  using Error::Error;
};

// The dispersive control mapping requires a nonzero cavity-atom detuning.
class ZeroDetuning : public Error {
 public:
  using Error::Error;
};

// Decay/coupling rates outside their physical domain (negative rates,
// cross-damping incompatible with the selected channel, negative control
// amplitudes).
class InvalidRates : public Error {
 public:
  using Error::Error;
};

// The symmetry weight kappa must lie in [0, 1].
class InvalidKappa : public Error {
 public:
  using Error::Error;
};

// A propagated state developed an eigenvalue below the clipping floor.
class PositivityLoss : public Error {
 public:
  using Error::Error;
};

// The adaptive integrator shrank the step below the representable minimum.
class StepUnderflow : public Error {
 public:
  using Error::Error;
};

// The requested operation is not defined for the selected decay channel.
class UnsupportedChannel : public Error {
 public:
  using Error::Error;
};

// The linear stationarity system has no unique solution.
class SingularGenerator : public Error {
 public:
  using Error::Error;
};

// A spectrum that must be (numerically) nonnegative has a genuinely negative
// eigenvalue, beyond what flooring is allowed to absorb.
class NegativeSpectrum : public Error {
 public:
  using Error::Error;
};

// A state failed its invariants (trace, positivity) on construction.
class InvalidState : public Error {
 public:
  using Error::Error;
};

// Malformed configuration input; carries the offending key when known.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what, std::string key = {})
      : Error(what), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

// Argument outside its documented domain (not otherwise classified).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace entlab
