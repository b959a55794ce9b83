#pragma once

#include <stdexcept>
#include <string>

namespace qst {

// Bad user input (parameter ranges, grids, config).
class validation_error : public std::invalid_argument {
 public:
  explicit validation_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// Numerical failure (solver breakdown, bracket failure, completeness loss).
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Evaluation collided with a channel energy pole; carries the offending energy.
class pole_collision : public numerical_error {
 public:
  pole_collision(const std::string& msg, double energy)
      : numerical_error(msg), energy_(energy) {}
  double energy() const { return energy_; }

 private:
  double energy_;
};

// A closed-form predictor was called outside its regime of validity.
class regime_error : public std::domain_error {
 public:
  explicit regime_error(const std::string& msg) : std::domain_error(msg) {}
};

}  // namespace qst
