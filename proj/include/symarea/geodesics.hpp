#pragma once

// Geodesics through the polysphere decomposition Z = P diag(tan theta) Q*.
//
// Every chart point is moved to the origin by transport_to_origin; from the
// origin the geodesic to W' = P diag(tan theta) Q* is t -> P diag(tan t*theta) Q*,
// one great-circle arc per Helgason sphere factor. A pair (Z, W) is Regular
// when the transported endpoint avoids the cut locus of the origin and the
// pulled-back segment stays inside the chart.

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "symarea/chart.hpp"
#include "symarea/kernel.hpp"

namespace symarea {

struct PolysphereDecomposition {
  CMatrix left;   // P, k x k unitary
  CMatrix right;  // Q, m x m unitary
  RVector sigma;  // r singular values, descending
  RVector theta;  // arctan(sigma), in [0, pi/2)

  int rank() const { return static_cast<int>(sigma.size()); }
  double max_angle() const { return rank() == 0 ? 0.0 : theta.maxCoeff(); }

  /// P diag(f(theta_j)) Q* with the diagonal padded to k x m.
  template <typename F>
  CMatrix synthesize(F&& f) const {
    const int r = rank();
    RVector values(r);
    for (int j = 0; j < r; ++j) values(j) = f(theta(j));
    return left.leftCols(r) * values.cast<Complex>().asDiagonal() * right.leftCols(r).adjoint();
  }
};

inline PolysphereDecomposition polysphere_decompose(const ChartPoint& z) {
  const CMatrix& zm = z.matrix();
  Eigen::JacobiSVD<CMatrix> svd(zm, Eigen::ComputeFullU | Eigen::ComputeFullV);
  PolysphereDecomposition out{svd.matrixU(), svd.matrixV(), svd.singularValues(), {}};
  const int r = out.rank();

  // Gauge fixing: first non-negligible entry of every left column real positive.
  for (Eigen::Index j = 0; j < out.left.cols(); ++j) {
    const double scale = out.left.col(j).norm();
    for (Eigen::Index i = 0; i < out.left.rows(); ++i) {
      const Complex e = out.left(i, j);
      if (std::abs(e) > 1e-12 * scale) {
        const Complex phase = std::conj(e) / std::abs(e);
        out.left.col(j) *= phase;
        if (j < r) out.right.col(j) *= phase;
        break;
      }
    }
  }
  out.theta = out.sigma.array().atan();
  return out;
}

/// The u in U(n) with u(Z) = 0 built from (I + ZZ*)^{-1/2} and (I + Z*Z)^{-1/2}.
inline UnitaryElement transport_to_origin(const ChartPoint& z) {
  const CMatrix& zm = z.matrix();
  const auto k = zm.rows();
  const auto m = zm.cols();
  const CMatrix left = CMatrix::Identity(k, k) + zm * zm.adjoint();
  const CMatrix right = CMatrix::Identity(m, m) + zm.adjoint() * zm;
  const CMatrix left_isqrt = Eigen::SelfAdjointEigenSolver<CMatrix>(left).operatorInverseSqrt();
  const CMatrix right_isqrt = Eigen::SelfAdjointEigenSolver<CMatrix>(right).operatorInverseSqrt();

  CMatrix u(k + m, k + m);
  u.topLeftCorner(k, k) = left_isqrt;
  u.topRightCorner(k, m) = -left_isqrt * zm;
  u.bottomLeftCorner(m, k) = right_isqrt * zm.adjoint();
  u.bottomRightCorner(m, m) = right_isqrt;
  return UnitaryElement(u, static_cast<int>(k));
}

/// t -> P diag(tan(t theta)) Q*, the minimizing geodesic from the origin to W.
class OriginGeodesic {
 public:
  explicit OriginGeodesic(PolysphereDecomposition dec) : dec_(std::move(dec)) {}
  explicit OriginGeodesic(const ChartPoint& w) : dec_(polysphere_decompose(w)) {}

  ChartPoint at(double t) const {
    return ChartPoint(dec_.synthesize([t](double th) { return std::tan(t * th); }));
  }

  TangentVector velocity(double t) const {
    return dec_.synthesize([t](double th) {
      const double c = std::cos(t * th);
      return th / (c * c);
    });
  }

  const PolysphereDecomposition& decomposition() const { return dec_; }

 private:
  PolysphereDecomposition dec_;
};

inline OriginGeodesic geodesic_from_origin(const ChartPoint& w) { return OriginGeodesic(w); }

struct PairClass {
  enum class Tag { Regular, CutLocus, LeavesChart };

  Tag tag = Tag::Regular;
  double max_angle = 0.0;      // largest principal angle of the transported endpoint
  double min_boundary = 1.0;   // smallest big_cell_ratio along the segment

  bool regular() const { return tag == Tag::Regular; }
};

inline const char* to_string(PairClass::Tag tag) {
  switch (tag) {
    case PairClass::Tag::Regular: return "Regular";
    case PairClass::Tag::CutLocus: return "CutLocus";
    case PairClass::Tag::LeavesChart: return "LeavesChart";
  }
  return "?";
}

/// The pair is not joined by a unique minimizing segment inside the chart.
class NotRegular : public GeometryError {
 public:
  NotRegular(PairClass cls, const std::string& where)
      : GeometryError(where + ": " + to_string(cls.tag)), cls_(cls) {}

  const PairClass& pair_class() const { return cls_; }

 private:
  PairClass cls_;
};

inline constexpr int kDefaultClassifySamples = 256;

namespace detail {

// Boundary ratio of u^{-1}(X(t)) with u^{-1} = inverse transport.
inline double pulled_back_ratio(const UnitaryElement& back, const OriginGeodesic& path, double t) {
  const auto [num, den] = action_blocks(back, path.at(t).matrix());
  return big_cell_ratio(num, den);
}

inline Complex pulled_back_det(const UnitaryElement& back, const OriginGeodesic& path, double t) {
  return action_blocks(back, path.at(t).matrix()).second.determinant();
}

// Gauss-Newton on the complex determinant g(t) inside [lo, hi]: steps to the
// minimizer of |g0 + g1 (t - t0)|. Lands on a zero to machine precision when
// the path actually crosses the chart boundary, where a plain minimizer of the
// V-shaped |g| stalls at sqrt(eps).
inline double refine_boundary_minimum(const UnitaryElement& back, const OriginGeodesic& path, double t,
                                      double lo, double hi) {
  const double h = 1e-7;
  for (int iter = 0; iter < 60; ++iter) {
    const double a = std::max(lo, t - h);
    const double b = std::min(hi, t + h);
    if (b <= a) break;
    const Complex g0 = pulled_back_det(back, path, t);
    const Complex g1 = (pulled_back_det(back, path, b) - pulled_back_det(back, path, a)) / (b - a);
    const double slope = std::norm(g1);
    if (slope == 0.0) break;
    const double next = std::clamp(t - (std::conj(g1) * g0).real() / slope, lo, hi);
    const double step = std::abs(next - t);
    t = next;
    if (step <= 1e-16) break;
  }
  return t;
}

}  // namespace detail

inline PairClass classify_pair(const ChartPoint& z, const ChartPoint& w,
                               int samples = kDefaultClassifySamples) {
  if (samples < 1) throw std::invalid_argument("classify_pair: samples must be positive");
  const UnitaryElement u = transport_to_origin(z);
  PairClass out;
  if (!action_defined(u, w)) {
    out.tag = PairClass::Tag::CutLocus;
    out.max_angle = kHalfPi;
    out.min_boundary = 0.0;
    return out;
  }
  const OriginGeodesic path(act(u, w));
  out.max_angle = path.decomposition().max_angle();
  if (out.max_angle > kHalfPi - kCutLocusAngleTolerance) {
    out.tag = PairClass::Tag::CutLocus;
    return out;
  }

  const UnitaryElement back = u.inverse();
  std::vector<double> ratio(samples + 1);
  for (int i = 0; i <= samples; ++i)
    ratio[i] = detail::pulled_back_ratio(back, path, static_cast<double>(i) / samples);
  double best = *std::min_element(ratio.begin(), ratio.end());
  // refine every sampled local minimum
  for (int i = 0; i <= samples; ++i) {
    if ((i > 0 && ratio[i - 1] < ratio[i]) || (i < samples && ratio[i + 1] < ratio[i])) continue;
    const double lo = static_cast<double>(std::max(i - 1, 0)) / samples;
    const double hi = static_cast<double>(std::min(i + 1, samples)) / samples;
    const double t = detail::refine_boundary_minimum(back, path, static_cast<double>(i) / samples, lo, hi);
    best = std::min(best, detail::pulled_back_ratio(back, path, t));
  }
  out.min_boundary = best;
  out.tag = best < kSingularityThreshold ? PairClass::Tag::LeavesChart : PairClass::Tag::Regular;
  return out;
}

/// The minimizing geodesic segment of a Regular pair, parametrized on [0, 1].
class GeodesicSegment {
 public:
  GeodesicSegment(ChartPoint start, ChartPoint end)
      : start_(std::move(start)),
        end_(std::move(end)),
        transport_(transport_to_origin(start_)),
        back_(transport_.inverse()),
        path_(act(transport_, end_)) {}

  const ChartPoint& start() const { return start_; }
  const ChartPoint& end() const { return end_; }
  const UnitaryElement& transport() const { return transport_; }
  const PolysphereDecomposition& decomposition() const { return path_.decomposition(); }

  ChartPoint eval(double t) const { return act(back_, path_.at(t)); }

  TangentVector velocity(double t) const {
    const ChartPoint x = path_.at(t);
    return push_forward(back_, x, act(back_, x), path_.velocity(t));
  }

  /// Riemannian length, sqrt(sum (2 theta_j)^2).
  double length() const {
    return 2.0 * decomposition().theta.norm();
  }

 private:
  ChartPoint start_;
  ChartPoint end_;
  UnitaryElement transport_;
  UnitaryElement back_;
  OriginGeodesic path_;
};

/// Throws NotRegular unless classify_pair(z, w) is Regular.
inline GeodesicSegment geodesic(const ChartPoint& z, const ChartPoint& w,
                                int samples = kDefaultClassifySamples) {
  const PairClass cls = classify_pair(z, w, samples);
  if (!cls.regular()) throw NotRegular(cls, "geodesic");
  return GeodesicSegment(z, w);
}

/// Riemannian distance in the normalized metric. Throws NotRegular (CutLocus)
/// only when W cannot be transported, so points near the antipode still get
/// a distance close to pi.
inline double distance(const ChartPoint& z, const ChartPoint& w) {
  const UnitaryElement u = transport_to_origin(z);
  if (!action_defined(u, w)) {
    PairClass cls;
    cls.tag = PairClass::Tag::CutLocus;
    cls.max_angle = kHalfPi;
    cls.min_boundary = 0.0;
    throw NotRegular(cls, "distance");
  }
  return 2.0 * polysphere_decompose(act(u, w)).theta.norm();
}

}  // namespace symarea
