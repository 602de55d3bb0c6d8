#ifndef DQDTHERM_ERRORS_HPP
#define DQDTHERM_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace dqdtherm {

/// Base class of all failures raised by this library.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// The one-electron sector is degenerate (T = delta = 0); the secular rate
/// description does not apply.
class DegenerateSpectrum : public Error {
  public:
    using Error::Error;
};

/// The total generator has no unique stationary distribution. Carries the
/// closed communicating classes found by the reachability check.
class ReducibleChain : public Error {
  public:
    ReducibleChain(const std::string& msg, std::vector<std::vector<int>> classes)
        : Error(msg), closed_classes(std::move(classes)) {}
    std::vector<std::vector<int>> closed_classes;
};

/// Adaptive transient integration could not meet its tolerances.
class StepFailure : public Error {
  public:
    using Error::Error;
};

/// A population vector handed to a steady-state-only routine is not
/// stationary for the given generator.
class NotStationary : public Error {
  public:
    using Error::Error;
};

/// The two algebraic forms of the entropy production rate disagree beyond
/// tolerance; signals inconsistent currents.
class FormMismatch : public Error {
  public:
    using Error::Error;
};

/// beta_C = beta_H, for which the criterion energy Theta is undefined.
class EqualTemperatures : public Error {
  public:
    using Error::Error;
};

/// A sweep contains no regime boundary that could be refined.
class NoTransition : public Error {
  public:
    using Error::Error;
};

/// Invalid configuration file or command-line values. Maps to exit code 2.
class ConfigError : public Error {
  public:
    using Error::Error;
};

}  // namespace dqdtherm

#endif
