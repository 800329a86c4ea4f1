#pragma once

#include <stdexcept>
#include <string>

namespace branchfall {

enum class ErrorKind {
  input,         // malformed or invalid user data
  domain,        // evaluation outside the parametrized disk / unbracketed root
  graph_regime,  // sphere radius too large for a radial graph slice
  not_branched,  // leading term is not of the form c z^N
  not_braid,     // curve violates the braid condition about the chosen axis
  resolution,    // sampling too coarse to resolve a crossing or a linking number
  conditioning,  // frame built at (or too close to) a branch point
  pole,          // stereographic pole too close to the link
  degenerate,    // degenerate Weierstrass / Gauss-map data
  unconverged,   // an extrapolated limit did not settle
  scope,         // request outside the worked-example scope
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Thrown by the radial slicer when the sphere radius exceeds the graph regime.
/// Carries the largest radius for which every ray was still monotone.
class GraphRegimeError : public Error {
 public:
  GraphRegimeError(const std::string& what, double largest_admissible)
      : Error(ErrorKind::graph_regime, what), largest_(largest_admissible) {}

  double largest_admissible() const noexcept { return largest_; }

 private:
  double largest_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace branchfall
