#pragma once

#include <stdexcept>
#include <string>

namespace geotomo {

// Failure categories surfaced through the CLI exit codes. Config problems
// exit with 2, verification failures with 3, everything else with 1.
enum class ErrorKind {
  Domain,         // point outside the chart, bad argument ranges
  Metric,         // non-SPD metric encountered
  NonTrapping,    // geodesic exceeded the arclength trap bound
  Simplicity,     // conjugate point / two-point solve failed to bracket
  Conditioning,   // linear solver breakdown or CG non-convergence
  PhaseUnwrap,    // |1 + estimate| too small for the complex log
  FieldTooLarge,  // too many phase-unwrap failures across a fan
  Nonlinearity,   // Picard iteration diverged
  Config,         // invalid experiment configuration
  Io,             // file format / read / write problems
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Metric: return "metric";
    case ErrorKind::NonTrapping: return "non-trapping";
    case ErrorKind::Simplicity: return "simplicity";
    case ErrorKind::Conditioning: return "conditioning";
    case ErrorKind::PhaseUnwrap: return "phase-unwrap";
    case ErrorKind::FieldTooLarge: return "field-too-large";
    case ErrorKind::Nonlinearity: return "nonlinearity";
    case ErrorKind::Config: return "config";
    case ErrorKind::Io: return "io";
    case ErrorKind::Internal: return "internal";
  }
  return "unknown";
}

}  // namespace geotomo
