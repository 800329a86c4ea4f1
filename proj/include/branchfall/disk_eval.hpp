#pragma once

// Precision-generic evaluation of a disk spec in polar form. Values are
// returned divided by r^N so that high exponents stay representable at
// small radii.

#include "branchfall/surface.hpp"

#include <cmath>
#include <vector>

namespace branchfall {

template <class Real>
class DiskEvaluator {
 public:
  using Vec = Eigen::Matrix<Real, 4, 1>;

  /// The spec restricted to one ray z = r e^{i phi}: every term is a fixed
  /// complex number times r^{degree - N}.
  class Ray {
   public:
    Vec scaled(Real r) const {
      Vec out = Vec::Zero();
      for (const auto& t : terms_) {
        Real mag = t.excess == 0 ? Real(1) : ipow(r, t.excess);
        out(2 * t.coord) += mag * t.re;
        out(2 * t.coord + 1) += mag * t.im;
      }
      return out;
    }
    /// log|F(r e^{i phi})|
    Real log_norm(Real r) const {
      using std::log;
      return static_cast<Real>(order_) * log(r) + log(scaled(r).norm());
    }

   private:
    friend class DiskEvaluator;
    struct T {
      int coord, excess;
      Real re, im;
    };
    static Real ipow(Real x, int n) {
      Real acc = 1;
      while (n) {
        if (n & 1) acc *= x;
        x *= x;
        n >>= 1;
      }
      return acc;
    }
    int order_ = 0;
    std::vector<T> terms_;
  };

  explicit DiskEvaluator(const BranchedDiskSpec& spec) : order_(spec.min_degree()) {
    auto add = [&](const Series& s, int coord) {
      for (const auto& t : s)
        terms_.push_back({coord, t.degree() - order_, t.j - t.k, static_cast<Real>(t.coeff.value.re),
                          static_cast<Real>(t.coeff.value.im), static_cast<Real>(t.coeff.phase)});
    };
    add(spec.w1, 0);
    add(spec.w2, 1);
  }

  int order() const { return order_; }

  Ray ray(Real phi) const {
    using std::cos;
    using std::sin;
    Ray ray;
    ray.order_ = order_;
    ray.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
      Real ang = static_cast<Real>(t.freq) * phi + t.phase;
      Real c = cos(ang), s = sin(ang);
      ray.terms_.push_back({t.coord, t.excess, t.re * c - t.im * s, t.re * s + t.im * c});
    }
    return ray;
  }

  /// F(r e^{i phi}) / r^N.
  Vec scaled(Real r, Real phi) const { return ray(phi).scaled(r); }

 private:
  struct Term {
    int coord, excess, freq;
    Real re, im, phase;
  };
  int order_;
  std::vector<Term> terms_;
};

}  // namespace branchfall
