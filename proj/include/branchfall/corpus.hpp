#pragma once

// Named example surfaces used by the tests, the CLI and the shipped scenarios.

#include "branchfall/surface.hpp"

namespace branchfall::corpus {

inline constexpr double default_alpha = 0.7071;

BranchedDiskSpec plane();                     // (z, 0)
BranchedDiskSpec graph();                     // (z, z^2)
BranchedDiskSpec cusp();                      // (z^2, z^3)
BranchedDiskSpec torus_singularity(int p, int q);  // (z^p, z^q)
FamilySpec cusp_family();                     // (z^2, z^3 + t z)

WeierstrassData minimal_limit_data();         // (z^2, z^5, z^3, -z^4)
BranchedDiskSpec minimal_limit();             // its disk
WeierstrassFamily minimal_family_data();      // degenerating to the above
FamilySpec minimal_family();

/// (z^3, Im(z^50) + i Re(e^{i alpha} z^110)) written in z, zbar.
BranchedDiskSpec writhe20(double alpha = default_alpha);

std::vector<Rational> default_t_values();     // 1/n grid

}  // namespace branchfall::corpus
