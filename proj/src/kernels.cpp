#include "branchfall/kernels.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <limits>

#ifdef BRANCHFALL_HAVE_OPENMP
#include <omp.h>
#endif

namespace branchfall::kernels {

namespace {

double clamped_asin(double x) { return std::asin(std::clamp(x, -1.0, 1.0)); }

double row_linking(const Points3& a, std::size_t i, const Points3& b) {
  const std::size_t nb = b.size();
  const auto& p1 = a[i];
  const auto& p2 = a[(i + 1) % a.size()];
  double row = 0;
  for (std::size_t j = 0; j < nb; ++j) row += segment_pair_linking(p1, p2, b[j], b[(j + 1) % nb]);
  return row;
}

constexpr std::size_t kBlock = 32;

struct Block {
  std::size_t begin, end;
  Eigen::Vector3d center;
  double radius;
};

std::vector<Block> blocks_of(const Points3& p) {
  std::vector<Block> out;
  const std::size_t n = p.size();
  for (std::size_t b = 0; b < n; b += kBlock) {
    std::size_t e = std::min(n, b + kBlock);
    Eigen::Vector3d c = Eigen::Vector3d::Zero();
    for (std::size_t i = b; i <= e; ++i) c += p[i % n];
    c /= double(e - b + 1);
    double r = 0;
    for (std::size_t i = b; i <= e; ++i) r = std::max(r, (p[i % n] - c).norm());
    out.push_back({b, e, c, r});
  }
  return out;
}

// Contribution of segment block `ba` of a against all of b.
double block_row(const Points3& a, const Block& ba, const Points3& b, const std::vector<Block>& bb, double far) {
  const std::size_t na = a.size(), nb = b.size();
  double sum = 0;
  for (const auto& blk : bb) {
    double sep = (ba.center - blk.center).norm();
    if (sep > far * (ba.radius + blk.radius)) {
      // midpoint rule: (ra - rb) . (da x db) / |ra - rb|^3 / 4 pi
      for (std::size_t i = ba.begin; i < ba.end; ++i) {
        const Eigen::Vector3d da = a[(i + 1) % na] - a[i];
        const Eigen::Vector3d ma = 0.5 * (a[(i + 1) % na] + a[i]);
        for (std::size_t j = blk.begin; j < blk.end; ++j) {
          const Eigen::Vector3d db = b[(j + 1) % nb] - b[j];
          const Eigen::Vector3d r = ma - 0.5 * (b[(j + 1) % nb] + b[j]);
          double r2 = r.squaredNorm();
          sum += r.dot(da.cross(db)) / (r2 * std::sqrt(r2));
        }
      }
      continue;
    }
    double exact = 0;
    for (std::size_t i = ba.begin; i < ba.end; ++i)
      for (std::size_t j = blk.begin; j < blk.end; ++j)
        exact += segment_pair_linking(a[i], a[(i + 1) % na], b[j], b[(j + 1) % nb]);
    sum += exact * 4 * M_PI;
  }
  return sum / (4 * M_PI);
}

double row_min(const Points3& a, std::size_t i, const Points3& b) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& q : b) m = std::min(m, (a[i] - q).squaredNorm());
  return m;
}

}  // namespace

double segment_pair_linking(const Eigen::Vector3d& p1, const Eigen::Vector3d& p2, const Eigen::Vector3d& q1,
                            const Eigen::Vector3d& q2) {
  const Eigen::Vector3d r13 = q1 - p1, r14 = q2 - p1, r23 = q1 - p2, r24 = q2 - p2;
  Eigen::Vector3d n[4] = {r13.cross(r14), r14.cross(r24), r24.cross(r23), r23.cross(r13)};
  for (auto& v : n) {
    double len = v.norm();
    if (len == 0) return 0;  // coplanar pair: no solid angle
    v /= len;
  }
  double omega = clamped_asin(n[0].dot(n[1])) + clamped_asin(n[1].dot(n[2])) + clamped_asin(n[2].dot(n[3])) +
                 clamped_asin(n[3].dot(n[0]));
  const Eigen::Vector3d r34 = q2 - q1, r12 = p2 - p1;
  double s = r34.cross(r12).dot(r13);
  if (s == 0) return 0;
  return (s > 0 ? omega : -omega) / (4 * M_PI);
}

double gauss_linking_exact(const Points3& a, const Points3& b) {
  double total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) total += row_linking(a, i, b);
  return total;
}

double gauss_linking_serial(const Points3& a, const Points3& b, double far_factor) {
  auto ba = blocks_of(a), bb = blocks_of(b);
  double total = 0;
  for (const auto& blk : ba) total += block_row(a, blk, b, bb, far_factor);
  return total;
}

double gauss_linking_parallel(const Points3& a, const Points3& b, double far_factor) {
  auto ba = blocks_of(a), bb = blocks_of(b);
  std::vector<double> rows(ba.size());
  const long n = static_cast<long>(ba.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (long k = 0; k < n; ++k) rows[k] = block_row(a, ba[k], b, bb, far_factor);
  double total = 0;
  for (double r : rows) total += r;
  return total;
}

double min_distance_serial(const Points3& a, const Points3& b) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < a.size(); ++i) m = std::min(m, row_min(a, i, b));
  return std::sqrt(m);
}

double min_distance_parallel(const Points3& a, const Points3& b) {
  std::vector<double> rows(a.size());
  const long n = static_cast<long>(a.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) rows[i] = row_min(a, static_cast<std::size_t>(i), b);
  double m = std::numeric_limits<double>::infinity();
  for (double r : rows) m = std::min(m, r);
  return std::sqrt(m);
}

bool parallel_enabled() {
#ifdef BRANCHFALL_HAVE_OPENMP
  return true;
#else
  return false;
#endif
}

int max_threads() {
#ifdef BRANCHFALL_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace branchfall::kernels
