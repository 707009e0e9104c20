#pragma once

// The compact canonical kernel h(Z, W) = det(I + Z W*) and the closed-form
// Kaehler data it generates. All forms use the curvature-normalized kernel
// h^2, whose Kaehler form gives every Helgason sphere area 4*pi.

#include <cmath>

#include "symarea/chart.hpp"

namespace symarea {

inline Complex h_kernel(const ChartPoint& z, const ChartPoint& w) {
  const auto k = z.rows();
  return (CMatrix::Identity(k, k) + z.matrix() * w.matrix().adjoint()).determinant();
}

/// Unnormalized kernel h^p, p the genus.
inline Complex k_c(const ChartPoint& z, const ChartPoint& w) {
  const int p = static_cast<int>(z.rows() + z.cols());
  const Complex h = h_kernel(z, w);
  Complex out = 1.0;
  for (int i = 0; i < p; ++i) out *= h;
  return out;
}

inline Complex k_tilde(const ChartPoint& z, const ChartPoint& w) {
  const Complex h = h_kernel(z, w);
  return h * h;
}

/// Principal-branch 2*Arg h. Exact continuous determination in rank one only;
/// see arg_k_tilde for the general case. Throws ArgUndefined on h in (-inf, 0].
inline double principal_arg_k_tilde(const ChartPoint& z, const ChartPoint& w) {
  const Complex h = h_kernel(z, w);
  if (h.imag() == 0.0 && h.real() <= 0.0) throw ArgUndefined("h lies on (-inf, 0]");
  return 2.0 * std::arg(h);
}

/// log k~(Z, Z) = 2 log det(I + Z Z*).
inline double potential(const ChartPoint& z) {
  const auto k = z.rows();
  const CMatrix s = CMatrix::Identity(k, k) + z.matrix() * z.matrix().adjoint();
  // s is Hermitian positive definite with eigenvalues >= 1
  return 2.0 * std::log(s.ldlt().vectorD().real().prod());
}

namespace detail {

// tr[(I + ZZ*)^{-1} X (I + Z*Z)^{-1} Y*]
inline Complex hermitian_pairing(const ChartPoint& z, const TangentVector& x,
                                 const TangentVector& y) {
  const CMatrix& zm = z.matrix();
  const auto k = zm.rows();
  const auto m = zm.cols();
  const CMatrix left = CMatrix::Identity(k, k) + zm * zm.adjoint();
  const CMatrix right = CMatrix::Identity(m, m) + zm.adjoint() * zm;
  const CMatrix lx = left.ldlt().solve(x);
  const CMatrix ry = right.ldlt().solve(y.adjoint());
  return (lx * ry).trace();
}

}  // namespace detail

/// omega~_Z(X, Y) = -4 Im tr[(I+ZZ*)^{-1} X (I+Z*Z)^{-1} Y*].
/// Positive on (X, iX).
inline double kahler_form(const ChartPoint& z, const TangentVector& x, const TangentVector& y) {
  return -4.0 * detail::hermitian_pairing(z, x, y).imag();
}

/// g~_Z(X, Y) = 4 Re tr[(I+ZZ*)^{-1} X (I+Z*Z)^{-1} Y*].
inline double metric(const ChartPoint& z, const TangentVector& x, const TangentVector& y) {
  return 4.0 * detail::hermitian_pairing(z, x, y).real();
}

/// rho~_Z(X) = d_C log k~(Z, Z) applied to X = 4 Im tr[(I+ZZ*)^{-1} X Z*].
/// d rho~ = 2 omega~.
inline double rho(const ChartPoint& z, const TangentVector& x) {
  const CMatrix& zm = z.matrix();
  const auto k = zm.rows();
  const CMatrix left = CMatrix::Identity(k, k) + zm * zm.adjoint();
  return 4.0 * (left.ldlt().solve(x) * zm.adjoint()).trace().imag();
}

/// Residual of k~(gZ, gW) mu(g,Z)^2 conj(mu(g,W))^2 = k~(Z, W).
/// Throws UndefinedAction when g is not defined at Z or W.
inline double covariance_defect(const UnitaryElement& g, const ChartPoint& z, const ChartPoint& w) {
  const ChartPoint gz = act(g, z);
  const ChartPoint gw = act(g, w);
  const Complex mz = denominator(g, z);
  const Complex mw = std::conj(denominator(g, w));
  return std::abs(k_tilde(gz, gw) * mz * mz * mw * mw - k_tilde(z, w));
}

}  // namespace symarea
