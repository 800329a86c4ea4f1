#pragma once

// JSON form of disks and families.
//
// Disk:   {"w1": [term, ...], "w2": [term, ...], "radius": 1}
// term:   {"re": "1/3", "im": 0, "j": 3, "k": 0, "phase": 0.7071}
// Family: same, with terms {"tpoly": [coef, coef, ...], "j": .., "k": ..}
//         (coef = number, "p/q" string or {"re": .., "im": ..}), plus
//         "t": ["1/100", ...] and an optional "kind".
// Either may instead be {"corpus": "<name>", "reverse": false, "alpha": 0.7071}.
//
// Numbers may be JSON integers, JSON floats (read as their exact binary
// value) or strings "p/q" / decimal literals (read exactly).

#include "branchfall/surface.hpp"

#include <json.hpp>

#include <string>

namespace branchfall {

/// Validation failure in an input document; `field` is a dotted path.
class InputError : public std::runtime_error {
 public:
  InputError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

Rational rational_from_json(const nlohmann::json& j, const std::string& field);
ExactComplex complex_from_json(const nlohmann::json& j, const std::string& field);

BranchedDiskSpec disk_from_json(const nlohmann::json& j, const std::string& field = "spec");
FamilySpec family_from_json(const nlohmann::json& j, const std::string& field = "family");

nlohmann::json to_json(const BranchedDiskSpec& spec);
nlohmann::json to_json(const FamilySpec& family);

/// Names accepted under "corpus".
bool corpus_has_disk(const std::string& name);
bool corpus_has_family(const std::string& name);

}  // namespace branchfall
