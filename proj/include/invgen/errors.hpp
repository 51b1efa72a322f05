#pragma once

#include <stdexcept>
#include <string>

namespace invgen {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A request was refused because the projected work exceeds the allowed budget.
struct budget_error : error {
  using error::error;
};

// Input data failed a structural check (bad axioms, malformed documents, ...).
struct validation_error : error {
  using error::error;
};

// A non-generating tuple produced no witness after a complete search.
// Carries the offending tuple serialized as JSON text.
struct theory_violation : error {
  std::string tuple_json;
  theory_violation(const std::string& msg, std::string tuple)
      : error(msg), tuple_json(std::move(tuple)) {}
};

}  // namespace invgen
