#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace netmig {

using Minutes = int;
using Cents = std::int64_t;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad input data: malformed files, violated instance invariants.
struct ValidationError : Error {
  using Error::Error;
};

// Work exceeds a documented size/iteration bound (oracle limits, node
// limits, pricing exactness bound).
struct LimitError : Error {
  using Error::Error;
};

struct NumericalError : Error {
  using Error::Error;
};

// Log level from MIGRATE_LOG: 0 = silent (default), 1 = info, 2 = debug.
int log_level();
void log_info(const std::string& msg);
void log_debug(const std::string& msg);

}  // namespace netmig
