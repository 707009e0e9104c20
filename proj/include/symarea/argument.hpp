#pragma once

// Continuous argument of the normalized kernel on regular pairs.
//
// arg k~(Z, W) is the continuous determination that vanishes on the diagonal.
// In rank one it is the principal value 2 Arg h. In higher rank h is a product
// of per-sphere factors whose arguments can add up past pi, so the phase of
// t -> h(Z, beta(t)) is followed along the geodesic from Z to W instead; h
// never vanishes there because every sub-segment is again regular.

#include <cmath>

#include "symarea/geodesics.hpp"
#include "symarea/kernel.hpp"

namespace symarea {

namespace detail {

inline constexpr double kMaxPhaseStep = kPi / 8.0;
inline constexpr int kMaxBisection = 40;

template <typename F>
double phase_increment(const F& f, double a, Complex fa, double b, Complex fb, int depth) {
  const double step = std::arg(fb / fa);
  if (std::abs(step) <= kMaxPhaseStep) return step;
  if (depth >= kMaxBisection) throw ArgUndefined("phase tracking did not resolve");
  const double mid = 0.5 * (a + b);
  const Complex fm = f(mid);
  return phase_increment(f, a, fa, mid, fm, depth + 1) + phase_increment(f, mid, fm, b, fb, depth + 1);
}

}  // namespace detail

/// arg h(start, end) followed continuously along the segment, doubled.
inline double arg_k_tilde(const GeodesicSegment& seg, int intervals = 64) {
  const ChartPoint& z = seg.start();
  const auto f = [&](double t) {
    const Complex h = h_kernel(z, seg.eval(t));
    if (h == Complex(0.0)) throw ArgUndefined("h vanishes along the segment");
    return h;
  };
  double total = 0.0;
  Complex prev = f(0.0);
  for (int i = 1; i <= intervals; ++i) {
    const double a = static_cast<double>(i - 1) / intervals;
    const double b = static_cast<double>(i) / intervals;
    // pin the endpoint value exactly to h(Z, W)
    const Complex next = i == intervals ? h_kernel(z, seg.end()) : f(b);
    total += detail::phase_increment(f, a, prev, b, next, 0);
    prev = next;
  }
  return 2.0 * total;
}

/// Continuous argument of k~ at a pair. Throws ArgUndefined when h is on
/// (-inf, 0] or, in rank >= 2, when the pair is not Regular.
inline double arg_k_tilde(const ChartPoint& z, const ChartPoint& w) {
  const Complex h = h_kernel(z, w);
  if (h.imag() == 0.0 && h.real() <= 0.0) throw ArgUndefined("h lies on (-inf, 0]");
  if (std::min(z.rows(), z.cols()) == 1) return 2.0 * std::arg(h);
  const PairClass cls = classify_pair(z, w);
  if (!cls.regular()) throw ArgUndefined(std::string("pair is ") + to_string(cls.tag));
  return arg_k_tilde(GeodesicSegment(z, w));
}

}  // namespace symarea
