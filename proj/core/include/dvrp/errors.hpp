#pragma once

#include <stdexcept>
#include <string>

#include "dvrp/types.hpp"

namespace dvrp {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input: bad files, unknown ids, bad parameters.
struct InputError : Error {
  using Error::Error;
};

struct UnknownCustomerError : InputError {
  explicit UnknownCustomerError(CustomerId id)
      : InputError("unknown customer id " + std::to_string(id)), customer(id) {}
  CustomerId customer;
};

// The problem admits no solution under the requested rules.
struct InfeasibleError : Error {
  using Error::Error;
};

struct DemandExceedsCapacityError : InfeasibleError {
  DemandExceedsCapacityError(CustomerId id, int demand, int capacity)
      : InfeasibleError("customer " + std::to_string(id) + " has demand " +
                        std::to_string(demand) + " above vehicle capacity " +
                        std::to_string(capacity)),
        customer(id) {}
  CustomerId customer;
};

struct InfeasibleConstructionError : InfeasibleError {
  using InfeasibleError::InfeasibleError;
};

struct InfeasibleSolutionError : InfeasibleError {
  using InfeasibleError::InfeasibleError;
};

struct AdmissionError : InputError {
  using InputError::InputError;
};

}  // namespace dvrp
