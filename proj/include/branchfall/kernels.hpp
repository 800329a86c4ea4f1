#pragma once

// Hot loops with a serial reference and an OpenMP variant. The parallel
// versions reduce in a fixed order so results do not depend on the thread count.

#include <Eigen/Core>

#include <vector>

namespace branchfall::kernels {

using Points3 = std::vector<Eigen::Vector3d>;

/// Exact solid-angle contribution of two straight segments to the Gauss
/// linking integral, already divided by 4 pi.
double segment_pair_linking(const Eigen::Vector3d& p1, const Eigen::Vector3d& p2, const Eigen::Vector3d& q1,
                            const Eigen::Vector3d& q2);

/// Exact solid-angle sum over every segment pair (reference).
double gauss_linking_exact(const Points3& a, const Points3& b);

/// Blocked sum: exact kernel for nearby block pairs, midpoint rule for block
/// pairs separated by more than `far_factor` times their radii.
double gauss_linking_serial(const Points3& a, const Points3& b, double far_factor = 8);
double gauss_linking_parallel(const Points3& a, const Points3& b, double far_factor = 8);

/// Smallest vertex-to-vertex distance between two point sets.
double min_distance_serial(const Points3& a, const Points3& b);
double min_distance_parallel(const Points3& a, const Points3& b);

bool parallel_enabled();
int max_threads();

}  // namespace branchfall::kernels
