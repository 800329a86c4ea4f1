#include "branchfall/error.hpp"

namespace branchfall {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::input: return "input";
    case ErrorKind::domain: return "domain";
    case ErrorKind::graph_regime: return "graph_regime";
    case ErrorKind::not_branched: return "not_branched";
    case ErrorKind::not_braid: return "not_braid";
    case ErrorKind::resolution: return "resolution";
    case ErrorKind::conditioning: return "conditioning";
    case ErrorKind::pole: return "pole";
    case ErrorKind::degenerate: return "degenerate";
    case ErrorKind::unconverged: return "unconverged";
    case ErrorKind::scope: return "scope";
  }
  return "unknown";
}

}  // namespace branchfall
