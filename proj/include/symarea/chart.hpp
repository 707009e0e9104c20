#pragma once

// Matrix model of the complex Grassmannian Gr(m, C^{k+m}).
//
// A point is an m-dimensional subspace of C^n, n = k + m. The chart sends a
// k x m matrix Z to the column span of [Z; I_m]; the origin is span[0; I_m].
// U(n) acts on the chart by the fractional map Z -> (AZ + B)(CZ + D)^{-1}.

#include <cmath>
#include <cstdlib>
#include <utility>

#include "symarea/types.hpp"

namespace symarea {

/// Dimensions of Gr(m, C^{k+m}) with the derived rank and genus.
class SpaceParams {
 public:
  SpaceParams(int k, int m) : k_(k), m_(m) {
    if (k < 1 || m < 1) throw std::invalid_argument("SpaceParams: k and m must be >= 1");
    // genus from the restricted-root multiplicities a = 2, b = |m - k|
    const int a = 2;
    const int b = std::abs(m - k);
    if ((rank() - 1) * a + b + 2 != genus())
      throw std::logic_error("SpaceParams: genus formula mismatch");
  }

  int k() const { return k_; }
  int m() const { return m_; }
  int n() const { return k_ + m_; }
  int rank() const { return std::min(k_, m_); }
  int genus() const { return k_ + m_; }

  friend bool operator==(const SpaceParams&, const SpaceParams&) = default;

 private:
  int k_;
  int m_;
};

/// A point of the big cell in chart coordinates (a k x m complex matrix).
class ChartPoint {
 public:
  ChartPoint() = default;
  explicit ChartPoint(CMatrix z) : z_(std::move(z)) {
    if (!z_.allFinite()) throw std::invalid_argument("ChartPoint: non-finite entry");
  }

  const CMatrix& matrix() const { return z_; }
  Eigen::Index rows() const { return z_.rows(); }
  Eigen::Index cols() const { return z_.cols(); }
  bool has_shape(const SpaceParams& s) const { return z_.rows() == s.k() && z_.cols() == s.m(); }

  static ChartPoint origin(const SpaceParams& s) { return ChartPoint(CMatrix::Zero(s.k(), s.m())); }
  static ChartPoint scalar(Complex z) { return ChartPoint(CMatrix::Constant(1, 1, z)); }

 private:
  CMatrix z_;
};

/// Chart tangent vector (same shape as the chart point it is attached to).
using TangentVector = CMatrix;

/// An m-dimensional subspace given by an n x m frame with orthonormal columns.
class FramePoint {
 public:
  explicit FramePoint(CMatrix f) : f_(std::move(f)) {
    if (f_.cols() > f_.rows()) throw std::invalid_argument("FramePoint: more columns than rows");
    const CMatrix gram = f_.adjoint() * f_;
    if ((gram - CMatrix::Identity(f_.cols(), f_.cols())).norm() > 1e-12)
      throw std::invalid_argument("FramePoint: columns are not orthonormal");
  }

  const CMatrix& matrix() const { return f_; }
  CMatrix projector() const { return f_ * f_.adjoint(); }

  /// Same subspace (compares orthogonal projectors).
  bool same_point(const FramePoint& other, double tol = 1e-10) const {
    return f_.rows() == other.f_.rows() && (projector() - other.projector()).norm() <= tol;
  }

 private:
  CMatrix f_;
};

/// An element of U(n) with its k/m block split.
class UnitaryElement {
 public:
  UnitaryElement(CMatrix g, int k) : g_(std::move(g)), k_(k) {
    if (g_.rows() != g_.cols() || k_ < 1 || k_ >= g_.rows())
      throw std::invalid_argument("UnitaryElement: bad shape");
    if ((g_.adjoint() * g_ - CMatrix::Identity(g_.rows(), g_.cols())).norm() > 1e-12)
      throw std::invalid_argument("UnitaryElement: matrix is not unitary");
  }

  static UnitaryElement identity(const SpaceParams& s) {
    return UnitaryElement(CMatrix::Identity(s.n(), s.n()), s.k());
  }

  const CMatrix& matrix() const { return g_; }
  int k() const { return k_; }
  int m() const { return static_cast<int>(g_.rows()) - k_; }

  auto a() const { return g_.topLeftCorner(k_, k_); }
  auto b() const { return g_.topRightCorner(k_, m()); }
  auto c() const { return g_.bottomLeftCorner(m(), k_); }
  auto d() const { return g_.bottomRightCorner(m(), m()); }

  UnitaryElement inverse() const { return UnitaryElement(g_.adjoint(), k_, Unchecked{}); }

  friend UnitaryElement operator*(const UnitaryElement& lhs, const UnitaryElement& rhs) {
    return UnitaryElement(lhs.g_ * rhs.g_, lhs.k_, Unchecked{});
  }

 private:
  struct Unchecked {};
  UnitaryElement(CMatrix g, int k, Unchecked) : g_(std::move(g)), k_(k) {}

  CMatrix g_;
  int k_;
};

/// |det(bottom)| divided by the product of column norms of [top; bottom].
///
/// Lies in [0, 1] by Hadamard's inequality and vanishes exactly when the
/// spanned subspace meets the cut locus of the origin.
inline double big_cell_ratio(const CMatrix& top, const CMatrix& bottom) {
  double scale = 1.0;
  for (Eigen::Index j = 0; j < bottom.cols(); ++j)
    scale *= std::sqrt(top.col(j).squaredNorm() + bottom.col(j).squaredNorm());
  if (scale == 0.0) return 0.0;
  return std::abs(bottom.determinant()) / scale;
}

inline CMatrix stacked_frame(const ChartPoint& z) {
  const auto k = z.rows();
  const auto m = z.cols();
  CMatrix f(k + m, m);
  f.topRows(k) = z.matrix();
  f.bottomRows(m) = CMatrix::Identity(m, m);
  return f;
}

inline FramePoint embed(const ChartPoint& z) {
  const CMatrix f = stacked_frame(z);
  Eigen::HouseholderQR<CMatrix> qr(f);
  const CMatrix q = qr.householderQ() * CMatrix::Identity(f.rows(), f.cols());
  return FramePoint(q);
}

/// Chart coordinates of a frame, Z = F1 F2^{-1}. Throws OutsideBigCell.
inline ChartPoint chart_inverse(const FramePoint& frame, int k) {
  const CMatrix& f = frame.matrix();
  const auto m = f.cols();
  if (k < 1 || k + m != f.rows()) throw std::invalid_argument("chart_inverse: shape mismatch");
  const CMatrix top = f.topRows(k);
  const CMatrix bottom = f.bottomRows(m);
  if (big_cell_ratio(top, bottom) < kSingularityThreshold) throw OutsideBigCell();
  return ChartPoint(bottom.transpose().partialPivLu().solve(top.transpose()).transpose());
}

/// Numerator AZ + B and denominator CZ + D of the fractional action.
inline std::pair<CMatrix, CMatrix> action_blocks(const UnitaryElement& g, const CMatrix& z) {
  return {g.a() * z + g.b(), g.c() * z + g.d()};
}

inline bool action_defined(const UnitaryElement& g, const ChartPoint& z) {
  const auto [num, den] = action_blocks(g, z.matrix());
  return big_cell_ratio(num, den) >= kSingularityThreshold;
}

/// g(Z) = (AZ + B)(CZ + D)^{-1}. Throws UndefinedAction off the big cell.
inline ChartPoint act(const UnitaryElement& g, const ChartPoint& z) {
  if (g.k() != z.rows() || g.m() != z.cols()) throw std::invalid_argument("act: shape mismatch");
  const auto [num, den] = action_blocks(g, z.matrix());
  if (big_cell_ratio(num, den) < kSingularityThreshold) throw UndefinedAction();
  // Y den = num  <=>  den^T Y^T = num^T
  return ChartPoint(den.transpose().partialPivLu().solve(num.transpose()).transpose());
}

/// mu(g, Z) = det(CZ + D); zero exactly where act is undefined.
inline Complex denominator(const UnitaryElement& g, const ChartPoint& z) {
  return (g.c() * z.matrix() + g.d()).determinant();
}

/// Differential of Z -> g(Z): dY = (A - Y C) dZ (CZ + D)^{-1}, with Y = g(Z).
inline TangentVector push_forward(const UnitaryElement& g, const ChartPoint& z,
                                  const ChartPoint& image, const TangentVector& dz) {
  const CMatrix den = g.c() * z.matrix() + g.d();
  const CMatrix lhs = (g.a() - image.matrix() * g.c()) * dz;
  return den.transpose().partialPivLu().solve(lhs.transpose()).transpose();
}

}  // namespace symarea
