#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Core>

namespace vecopt {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: dimension mismatch, invalid parameters, bad boxes.
class InputError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class LookupError : public Error {
 public:
  using Error::Error;
};

// Raised when a quantity that must be strictly negative away from critical
// points is not (the caller should have stopped).
class CriticalityError : public Error {
 public:
  using Error::Error;
};

class LineSearchFailure : public Error {
 public:
  LineSearchFailure(std::string what, int trials)
      : Error(std::move(what)), trials_(trials) {}
  int trials() const { return trials_; }

 private:
  int trials_;
};

class NoRootError : public Error {
 public:
  using Error::Error;
};

// The simplex QP hit its iteration cap. Carries the best weights found.
class SubproblemFailure : public Error {
 public:
  SubproblemFailure(std::string what, Vector best_weights, double residual)
      : Error(std::move(what)),
        best_weights_(std::move(best_weights)),
        residual_(residual) {}
  const Vector& best_weights() const { return best_weights_; }
  double residual() const { return residual_; }

 private:
  Vector best_weights_;
  double residual_;
};

}  // namespace vecopt
