#pragma once

#include <stdexcept>
#include <string>

namespace euler {

// Base of all domain errors; `code` is the stable machine-readable name
// emitted in error JSON.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& msg)
      : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

#define EULER_DEFINE_ERROR(NAME)                                      \
  class NAME : public Error {                                         \
   public:                                                            \
    explicit NAME(const std::string& msg) : Error(#NAME, msg) {}      \
  }

EULER_DEFINE_ERROR(AngleOutOfRange);
EULER_DEFINE_ERROR(WindingMismatch);
EULER_DEFINE_ERROR(NonmonotoneCorners);
EULER_DEFINE_ERROR(QuadratureUnderresolved);
EULER_DEFINE_ERROR(InversionDiverged);
EULER_DEFINE_ERROR(ResolutionTooCoarse);
EULER_DEFINE_ERROR(StepCollapse);
EULER_DEFINE_ERROR(SignFlagMissing);
EULER_DEFINE_ERROR(InsufficientSamples);
EULER_DEFINE_ERROR(ParseError);
EULER_DEFINE_ERROR(SchemaError);

#undef EULER_DEFINE_ERROR

// A particle or tracer reached |z| >= 1 - exit_tol during an RK stage.
// The step is rejected; the caller shrinks dt or marks the exit.
class ParticleExited : public Error {
 public:
  ParticleExited(int index, double abs_z)
      : Error("ParticleExited",
              "entity " + std::to_string(index) + " reached |z| = " + std::to_string(abs_z)),
        index_(index),
        abs_z_(abs_z) {}
  int index() const { return index_; }
  double abs_z() const { return abs_z_; }

 private:
  int index_;
  double abs_z_;
};

}  // namespace euler
