#pragma once

// Symplectic area of geodesic triangles.
//
// The closed formula is minus the sum of the kernel arguments around the
// boundary. Everything else in this header is an independent route to the same
// number: line integrals of rho~, surface quadrature of omega~ over a coned
// filling, and the full-sphere area that measures the mod 4*pi ambiguity.

#include <array>
#include <cmath>
#include <optional>
#include <string>

#include "symarea/argument.hpp"
#include "symarea/geodesics.hpp"
#include "symarea/kernel.hpp"
#include "symarea/quadrature.hpp"

namespace symarea {

/// Oriented geodesic triangle z0 -> z1 -> z2 -> z0 with all pairs Regular.
class Triangle {
 public:
  /// Throws NotRegular naming the first failing pair.
  Triangle(ChartPoint z0, ChartPoint z1, ChartPoint z2)
      : vertices_{std::move(z0), std::move(z1), std::move(z2)},
        segments_{make_segment(0, 1), make_segment(1, 2), make_segment(2, 0)} {}

  const ChartPoint& vertex(int i) const { return vertices_.at(i); }
  const GeodesicSegment& segment(int i) const { return segments_.at(i); }

  static std::string pair_label(int i, int j) {
    return "pair (p" + std::to_string(i) + ",p" + std::to_string(j) + ")";
  }

 private:
  GeodesicSegment make_segment(int i, int j) const {
    const PairClass cls = classify_pair(vertices_[i], vertices_[j]);
    if (!cls.regular()) throw NotRegular(cls, pair_label(i, j));
    return GeodesicSegment(vertices_[i], vertices_[j]);
  }

  std::array<ChartPoint, 3> vertices_;
  std::array<GeodesicSegment, 3> segments_;
};

struct AreaResult {
  double formula_value = 0.0;
  std::optional<double> oracle_value;
  std::optional<double> residual;
  Complex psi{1.0, 0.0};
};

namespace detail {

inline bool rank_one(const ChartPoint& z) { return std::min(z.rows(), z.cols()) == 1; }

inline double segment_arg(const GeodesicSegment& seg) {
  if (rank_one(seg.start())) return principal_arg_k_tilde(seg.start(), seg.end());
  return arg_k_tilde(seg);
}

}  // namespace detail

inline double triangle_area(const Triangle& tri) {
  return -(detail::segment_arg(tri.segment(0)) + detail::segment_arg(tri.segment(1)) +
           detail::segment_arg(tri.segment(2)));
}

/// -(arg k~(z0,z1) + arg k~(z1,z2) + arg k~(z2,z0)). Throws NotRegular.
inline double triangle_area(const ChartPoint& z0, const ChartPoint& z1, const ChartPoint& z2) {
  return triangle_area(Triangle(z0, z1, z2));
}

inline Complex psi(const ChartPoint& z0, const ChartPoint& z1, const ChartPoint& z2) {
  return std::polar(1.0, 0.5 * triangle_area(z0, z1, z2));
}

/// Representative of an area in (-2 pi, 2 pi] modulo 4 pi.
inline double normalize_area(double area) {
  double r = std::remainder(area, 4.0 * kPi);
  if (r <= -2.0 * kPi) r += 4.0 * kPi;
  return r;
}

inline constexpr int kDefaultPathNodes = 64;

namespace detail {

template <typename F>
double gauss_panel(const F& f, const GaussRule& unit, double a, double b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < unit.size(); ++i) sum += unit.weights[i] * f(a + (b - a) * unit.nodes[i]);
  return (b - a) * sum;
}

// Splits a panel until the rule agrees with its two halves to `tol` (relative,
// floored at 1); only kicks in where the integrand peaks.
template <typename F>
double adaptive_gauss(const F& f, const GaussRule& unit, double a, double b, double whole, double tol,
                      int max_depth, int depth = 0) {
  const double mid = 0.5 * (a + b);
  const double left = gauss_panel(f, unit, a, mid);
  const double right = gauss_panel(f, unit, mid, b);
  const double halves = left + right;
  if (depth >= max_depth || std::abs(halves - whole) <= tol * (1.0 + std::abs(halves))) return halves;
  return adaptive_gauss(f, unit, a, mid, left, tol, max_depth, depth + 1) +
         adaptive_gauss(f, unit, mid, b, right, tol, max_depth, depth + 1);
}

template <typename F>
double adaptive_gauss(const F& f, const GaussRule& unit, double tol, int max_depth) {
  return adaptive_gauss(f, unit, 0.0, 1.0, gauss_panel(f, unit, 0.0, 1.0), tol, max_depth);
}

}  // namespace detail

/// Integral of rho~ along the segment by Gauss-Legendre with `nodes` points
/// per panel. Half of it equals -arg k~(start, end).
inline double path_integral_rho(const GeodesicSegment& seg, int nodes = kDefaultPathNodes) {
  const GaussRule unit = gauss_legendre(nodes);
  const auto f = [&](double t) { return rho(seg.eval(t), seg.velocity(t)); };
  return detail::adaptive_gauss(f, unit, 1e-13, 16);
}

inline constexpr int kDefaultGrid = 128;
inline constexpr double kFillingAngleMargin = 1e-4;

namespace detail {

// Cone rays of the filling in the frame where z0 is the origin.
struct ConeFilling {
  explicit ConeFilling(const Triangle& tri)
      : base(tri.segment(1)), to_origin(transport_to_origin(tri.vertex(0))), back(to_origin.inverse()) {}

  PolysphereDecomposition ray(double t) const {
    const ChartPoint p = base.eval(t);
    if (!action_defined(to_origin, p)) throw FillingLeavesChart("base point not reachable from z0");
    PolysphereDecomposition dec = polysphere_decompose(act(to_origin, p));
    if (dec.max_angle() > kHalfPi - kFillingAngleMargin)
      throw FillingLeavesChart("base point near the cut locus of z0");
    return dec;
  }

  // det of the chart denominator of the filling point; zero on the cut locus
  // of the chart origin
  Complex boundary_det(const PolysphereDecomposition& dec, double s) const {
    const CMatrix x = dec.synthesize([s](double th) { return std::tan(s * th); });
    return (back.c() * x + back.d()).determinant();
  }

  const GeodesicSegment& base;
  UnitaryElement to_origin;
  UnitaryElement back;
};

template <typename F>
double tracked_phase(const F& f, int intervals = 64) {
  double total = 0.0;
  Complex prev = f(0.0);
  for (int i = 1; i <= intervals; ++i) {
    const double a = static_cast<double>(i - 1) / intervals;
    const double b = static_cast<double>(i) / intervals;
    const Complex next = f(b);
    total += phase_increment(f, a, prev, b, next, 0);
    prev = next;
  }
  return total;
}

}  // namespace detail

/// Signed number of times the coned filling crosses the complement of the
/// chart, as the winding of the chart denominator around the filling boundary.
/// The apex edge is a single point and contributes nothing.
inline int filling_winding(const Triangle& tri) {
  const detail::ConeFilling cone(tri);
  const PolysphereDecomposition first = cone.ray(0.0);
  const PolysphereDecomposition last = cone.ray(1.0);
  const auto nonzero = [](Complex v) {
    if (v == Complex(0.0)) throw FillingLeavesChart("filling boundary meets the chart boundary");
    return v;
  };
  double phase = detail::tracked_phase([&](double s) { return nonzero(cone.boundary_det(first, s)); });
  phase += detail::tracked_phase([&](double t) { return nonzero(cone.boundary_det(cone.ray(t), 1.0)); });
  phase -= detail::tracked_phase([&](double s) { return nonzero(cone.boundary_det(last, s)); });
  return static_cast<int>(std::lround(phase / (2.0 * kPi)));
}

namespace detail {

// t-panels of the filling quadrature are split while a `grid`-point rule
// disagrees with its halves; this resolves fillings whose base side passes
// close to the cut locus of z0, where the integrand peaks in t. Each row in s
// is a single `grid`-point rule.
inline constexpr double kFillingTolerance = 1e-10;
inline constexpr int kFillingMaxDepth = 6;

inline double integrate_cone(const Triangle& tri, int grid, bool check_chart) {
  if (grid < 1) throw std::invalid_argument("surface_integral: grid must be positive");
  const ConeFilling cone(tri);
  const GaussRule unit = gauss_legendre(grid);
  const double h = 1e-5;

  const auto row = [&](double t) {
    const PolysphereDecomposition mid = cone.ray(t);
    const PolysphereDecomposition fwd = cone.ray(t + h);
    const PolysphereDecomposition bwd = cone.ray(t - h);
    const auto integrand = [&](double s) {
      const auto tan_s = [s](double th) { return std::tan(s * th); };
      const CMatrix xm = mid.synthesize(tan_s);
      if (check_chart) {
        const auto [num, den] = action_blocks(cone.back, xm);
        if (big_cell_ratio(num, den) < kSingularityThreshold)
          throw FillingLeavesChart("filling node outside the chart");
      }
      const ChartPoint x(xm);
      const TangentVector ds = mid.synthesize([s](double th) {
        const double c = std::cos(s * th);
        return th / (c * c);
      });
      const TangentVector dt = (fwd.synthesize(tan_s) - bwd.synthesize(tan_s)) / (2.0 * h);
      return kahler_form(x, ds, dt);
    };
    return gauss_panel(integrand, unit, 0.0, 1.0);
  };
  return adaptive_gauss(row, unit, kFillingTolerance, kFillingMaxDepth);
}

}  // namespace detail

/// Integral of omega~ over the cone Sigma(s, t) = geodesic(z0, beta_{z1,z2}(t)).eval(s),
/// without the chart-membership check.
///
/// omega~ is U(n)-invariant, so the integrand is evaluated in the frame where
/// z0 sits at the origin; there the cone rays are t-independent polysphere
/// arcs. The s-partial is exact and the t-partial is a central difference.
inline double cone_integral(const Triangle& tri, int grid = kDefaultGrid) {
  return detail::integrate_cone(tri, grid, false);
}

/// Integral of omega~ over the coned filling of the triangle.
/// Throws FillingLeavesChart if the filling is not inside the chart (a node
/// off the chart, a ray near the cut locus of z0, or a nonzero
/// filling_winding), and NotRegular if the triangle is not regular.
inline double surface_integral(const Triangle& tri, int grid = kDefaultGrid) {
  if (grid < 1) throw std::invalid_argument("surface_integral: grid must be positive");
  if (filling_winding(tri) != 0) throw FillingLeavesChart("filling crosses the chart boundary");
  return detail::integrate_cone(tri, grid, true);
}

inline double surface_integral(const ChartPoint& z0, const ChartPoint& z1, const ChartPoint& z2,
                               int grid = kDefaultGrid) {
  return surface_integral(Triangle(z0, z1, z2), grid);
}

/// Area of the Helgason sphere z E_11, parametrized by z = tan(s/2) e^{i phi}.
/// Equals 4 pi in every Gr(m, C^{k+m}).
inline double sphere_area(const SpaceParams& space, int grid) {
  if (grid < 1) throw std::invalid_argument("sphere_area: grid must be positive");
  const GaussRule polar_rule = gauss_legendre(grid, 0.0, kPi);
  const GaussRule azimuth_rule = gauss_legendre(grid, 0.0, 2.0 * kPi);
  CMatrix slot = CMatrix::Zero(space.k(), space.m());
  slot(0, 0) = 1.0;

  double total = 0.0;
  for (std::size_t i = 0; i < polar_rule.size(); ++i) {
    const double s = polar_rule.nodes[i];
    const double radius = std::tan(0.5 * s);
    const double c = std::cos(0.5 * s);
    double row = 0.0;
    for (std::size_t j = 0; j < azimuth_rule.size(); ++j) {
      const Complex dir = std::polar(1.0, azimuth_rule.nodes[j]);
      const ChartPoint z(slot * (radius * dir));
      const TangentVector ds = slot * (0.5 / (c * c) * dir);
      const TangentVector dphi = slot * (Complex(0.0, 1.0) * radius * dir);
      row += azimuth_rule.weights[j] * kahler_form(z, ds, dphi);
    }
    total += polar_rule.weights[i] * row;
  }
  return total;
}

/// |Psi(p0,p1,p2) Psi(p1,p2,p3)^-1 Psi(p2,p3,p0) Psi(p3,p0,p1)^-1 - 1|.
/// Throws NotRegular naming the failing triple.
inline double cocycle_defect(const ChartPoint& p0, const ChartPoint& p1, const ChartPoint& p2,
                             const ChartPoint& p3) {
  const std::array<const ChartPoint*, 4> p{&p0, &p1, &p2, &p3};
  const auto area = [&](int a, int b, int c, int index) {
    try {
      return triangle_area(*p[a], *p[b], *p[c]);
    } catch (const NotRegular& e) {
      throw NotRegular(e.pair_class(), "triple " + std::to_string(index) + ", " + e.what());
    }
  };
  // product of unit complex numbers = exp(i/2 * alternating area sum)
  const double phase = area(0, 1, 2, 0) - area(1, 2, 3, 1) + area(2, 3, 0, 2) - area(3, 0, 1, 3);
  return std::abs(std::polar(1.0, 0.5 * phase) - 1.0);
}

struct FillingAmbiguity {
  double direct = 0.0;       // surface quadrature over the coned filling
  double alternative = 0.0;  // same boundary, filling that also wraps one sphere
  double sphere = 0.0;

  double windings() const { return (direct - alternative) / (4.0 * kPi); }
  double integrality_residual() const { return std::abs(windings() - std::round(windings())); }
};

/// Two fillings of a triangle whose vertices lie in the z E_11 sphere.
/// Throws std::invalid_argument if a vertex leaves that sphere.
inline FillingAmbiguity mod4pi_ambiguity_demo(const ChartPoint& z0, const ChartPoint& z1,
                                              const ChartPoint& z2, int grid) {
  for (const ChartPoint* z : {&z0, &z1, &z2}) {
    CMatrix rest = z->matrix();
    rest(0, 0) = 0.0;
    if (rest.norm() != 0.0)
      throw std::invalid_argument("mod4pi_ambiguity_demo: vertices must lie in the E11 sphere");
  }
  const SpaceParams space(static_cast<int>(z0.rows()), static_cast<int>(z0.cols()));
  FillingAmbiguity out;
  out.direct = surface_integral(z0, z1, z2, grid);
  out.sphere = sphere_area(space, grid);
  out.alternative = out.direct - out.sphere;
  return out;
}

}  // namespace symarea
