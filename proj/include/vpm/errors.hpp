#pragma once

#include <stdexcept>

namespace vpm {

// An instance falls outside the tractable regime a solver covers. The
// message names the governing hardness result or resource cap.
struct RefusalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TimeoutError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MalformedWitness : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace vpm
