#pragma once

#include <stdexcept>
#include <string>

namespace kmb {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidDimension : public Error {
 public:
  using Error::Error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Raised when a symplectic eigenvalue sits too close to 1/2.
class BoundaryDegeneracy : public Error {
 public:
  BoundaryDegeneracy(const std::string& what, int mode, double nu)
      : Error(what), mode_(mode), nu_(nu) {}
  int mode() const { return mode_; }
  double nu() const { return nu_; }

 private:
  int mode_;
  double nu_;
};

class DimensionLimit : public Error {
 public:
  using Error::Error;
};

class BoundaryExit : public Error {
 public:
  BoundaryExit(const std::string& what, double time) : Error(what), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& what, double residual, int iterations)
      : Error(what), residual_(residual), iterations_(iterations) {}
  double residual() const { return residual_; }
  int iterations() const { return iterations_; }

 private:
  double residual_;
  int iterations_;
};

}  // namespace kmb
