#pragma once

// Portable random sampling. std::mt19937_64 is fully specified by the standard;
// the distributions are not, so uniforms and normals are built here from raw
// 64-bit draws and are reproducible across compilers and languages.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "symarea/chart.hpp"
#include "symarea/geodesics.hpp"

namespace symarea {

inline constexpr const char* kRngAlgorithm = "mt19937_64/box-muller";

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Standard normal (Box-Muller, no caching of the second variate).
  double normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

  /// Complex normal with E|z|^2 = 1.
  Complex complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re * std::sqrt(0.5), im * std::sqrt(0.5)};
  }

 private:
  std::mt19937_64 engine_;
};

inline ChartPoint random_chart_point(Rng& rng, const SpaceParams& space, double scale = 1.0) {
  CMatrix z(space.k(), space.m());
  for (Eigen::Index i = 0; i < z.rows(); ++i)
    for (Eigen::Index j = 0; j < z.cols(); ++j) z(i, j) = scale * rng.complex_normal();
  return ChartPoint(z);
}

/// Haar-distributed unitary: QR of a complex Ginibre matrix with R's diagonal
/// phases moved into Q.
inline UnitaryElement random_unitary(Rng& rng, const SpaceParams& space) {
  const int n = space.n();
  CMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.complex_normal();
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return UnitaryElement(q, space.k());
}

inline constexpr double kSamplerAngleMargin = 0.05;

/// Sampler acceptance rule: every pair Regular with max principal angle below
/// pi/2 - margin.
inline bool well_separated(const std::vector<ChartPoint>& points, double margin = kSamplerAngleMargin) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const PairClass cls = classify_pair(points[i], points[j]);
      if (!cls.regular() || cls.max_angle >= kHalfPi - margin) return false;
    }
  }
  return true;
}

/// Draws `count` points until well_separated accepts them; `rejected` counts
/// the discarded configurations.
inline std::vector<ChartPoint> sample_configuration(Rng& rng, const SpaceParams& space, int count,
                                                    int& rejected, int max_attempts = 100000) {
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::vector<ChartPoint> pts;
    pts.reserve(count);
    for (int i = 0; i < count; ++i) pts.push_back(random_chart_point(rng, space));
    if (well_separated(pts)) return pts;
    ++rejected;
  }
  throw std::runtime_error("sample_configuration: no acceptable configuration found");
}

}  // namespace symarea
