#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pavecount {

// Invalid arguments: out-of-range parameters, malformed families, foreign subsets.
class ParameterError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// A configured size cap (vertex cap, ground-set cap) would be exceeded.
class ResourceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A time budget ran out. Carries the search statistics gathered so far;
// never a partial count.
class TimeoutError : public std::runtime_error {
public:
  TimeoutError(const std::string& what, std::uint64_t nodes, double elapsed_ms)
      : std::runtime_error(what), nodes_(nodes), elapsed_ms_(elapsed_ms) {}

  std::uint64_t nodes() const noexcept { return nodes_; }
  double elapsed_ms() const noexcept { return elapsed_ms_; }

private:
  std::uint64_t nodes_;
  double elapsed_ms_;
};

}  // namespace pavecount
