#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "fnt/transform.hpp"

namespace fnt {

// Evaluates the interpolant with given coefficients at one point by walking
// the tube tree once: one basis recurrence cursor per axis, no dense grid.
// Cost is proportional to the total tube-projection entry count.
double eval_point(const TransformPlan& p, std::span<const double> coeffs,
                  std::span<const double> x);

// row-major points, npts x m; returns one value per point
std::vector<double> eval_points(const TransformPlan& p, std::span<const double> coeffs,
                                std::span<const double> pts);

// small deterministic 64-bit generator (splitmix style) for reproducible sampling
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d649bb133111ebull;
    return z ^ (z >> 31);
  }

  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform_pm1() { return 2.0 * uniform01() - 1.0; }
};

// max_s |q(x_s) - f(x_s)| / max_s |f(x_s)| over seeded uniform samples of
// [-1,1]^m; the denominator is the sample-wide max, not pointwise, so zeros
// of f do not blow up the ratio
double max_rel_error(const TransformPlan& p, std::span<const double> coeffs,
                     const std::function<double(std::span<const double>)>& f,
                     std::int64_t samples, std::uint64_t seed);

}  // namespace fnt
