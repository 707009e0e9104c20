#include <gtest/gtest.h>

#include "oracles.hpp"
#include "symarea/area.hpp"
#include "symarea/argument.hpp"
#include "symarea/kernel.hpp"
#include "symarea/random.hpp"

using namespace symarea;

namespace {

const Complex kI{0.0, 1.0};

ChartPoint diag2(Complex a, Complex b) {
  CMatrix z = CMatrix::Zero(2, 2);
  z(0, 0) = a;
  z(1, 1) = b;
  return ChartPoint(z);
}

ChartPoint scalar(Complex z) { return ChartPoint::scalar(z); }

const std::vector<SpaceParams> kSpaces{SpaceParams(1, 1), SpaceParams(2, 1), SpaceParams(2, 2),
                                       SpaceParams(1, 3)};

}  // namespace

TEST(HKernel, Examples) {
  EXPECT_EQ(h_kernel(ChartPoint::origin(SpaceParams(2, 2)), diag2(3.0, kI)), Complex(1.0));
  const Complex h = h_kernel(scalar(1.0), scalar(kI));
  EXPECT_NEAR(std::abs(h - Complex(1.0, -1.0)), 0.0, 1e-15);
  const Complex z1(0.3, 0.2), z2(-1.1, 0.5), w1(0.7, -0.4), w2(2.0, 1.0);
  const Complex expected = (1.0 + z1 * std::conj(w1)) * (1.0 + z2 * std::conj(w2));
  EXPECT_NEAR(std::abs(h_kernel(diag2(z1, z2), diag2(w1, w2)) - expected), 0.0, 1e-14);
}

TEST(HKernel, ProjectiveLineModulusIdentity) {
  // |1 + z conj(w)|^2 = (1 + |z|^2)(1 + |w|^2) - |z - w|^2
  for (double a = -2.0; a <= 2.0; a += 0.5)
    for (double b = -2.0; b <= 2.0; b += 0.5) {
      const Complex z(a, 0.3 * b), w(b, -0.7 * a);
      const double lhs = std::norm(h_kernel(scalar(z), scalar(w)));
      const double rhs = (1 + std::norm(z)) * (1 + std::norm(w)) - std::norm(z - w);
      EXPECT_NEAR(lhs, rhs, 1e-12 * (1 + rhs));
    }
}

TEST(HKernel, HermitianSymmetryPositivityAndK0Invariance) {
  Rng rng(3);
  for (const auto& space : kSpaces) {
    for (int i = 0; i < 30; ++i) {
      const ChartPoint z = random_chart_point(rng, space, 1.5);
      const ChartPoint w = random_chart_point(rng, space, 1.5);
      const Complex hzw = h_kernel(z, w);
      EXPECT_LT(std::abs(h_kernel(w, z) - std::conj(hzw)), 1e-14 * (1 + std::abs(hzw)));
      const Complex hzz = h_kernel(z, z);
      EXPECT_GE(hzz.real(), 1.0);
      EXPECT_LT(std::abs(hzz.imag()), 1e-12 * hzz.real());

      // K0 = U(k) x U(m) acting by Z -> u Z v*
      Eigen::HouseholderQR<CMatrix> qk(random_chart_point(rng, SpaceParams(space.k(), space.k())).matrix());
      Eigen::HouseholderQR<CMatrix> qm(random_chart_point(rng, SpaceParams(space.m(), space.m())).matrix());
      const CMatrix uk = qk.householderQ();
      const CMatrix vm = qm.householderQ();
      const Complex moved =
          h_kernel(ChartPoint(uk * z.matrix() * vm.adjoint()), ChartPoint(uk * w.matrix() * vm.adjoint()));
      EXPECT_LT(std::abs(moved - hzw), 1e-10 * (1 + std::abs(hzw)));
    }
  }
  EXPECT_EQ(h_kernel(ChartPoint::origin(SpaceParams(2, 3)), ChartPoint::origin(SpaceParams(2, 3))), Complex(1.0));
}

TEST(KernelPowers, Examples) {
  const Complex z(0.4, -1.2), w(-0.3, 0.8);
  const Complex closed = (1.0 + z * std::conj(w)) * (1.0 + z * std::conj(w));
  EXPECT_LT(std::abs(k_c(scalar(z), scalar(w)) - closed), 1e-14);
  EXPECT_EQ(k_c(scalar(0.0), scalar(0.0)), Complex(1.0));
  EXPECT_EQ(k_tilde(scalar(0.0), scalar(0.0)), Complex(1.0));
  // h = (1+1)(1+1) = 4 on Gr(2,4), genus 4
  EXPECT_NEAR(std::abs(k_c(diag2(1, 1), diag2(1, 1)) - 256.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(k_tilde(diag2(1, 1), diag2(1, 1)) - 16.0), 0.0, 1e-13);
}

TEST(ArgKTilde, ProjectiveLineExamples) {
  EXPECT_EQ(arg_k_tilde(scalar(Complex(0.3, 0.4)), scalar(Complex(0.3, 0.4))), 0.0);
  // principal argument of 1 - i is -pi/4
  EXPECT_NEAR(arg_k_tilde(scalar(1.0), scalar(kI)), -kPi / 2, 1e-15);
  EXPECT_THROW(arg_k_tilde(scalar(1.0), scalar(-2.0)), ArgUndefined);
  EXPECT_THROW(principal_arg_k_tilde(scalar(1.0), scalar(-1.0)), ArgUndefined);
}

TEST(ArgKTilde, RankTwoFollowsBothSphereFactors) {
  // Each sphere factor is a regular CP^1 pair with Arg(1 + z conj w) about
  // 0.78 pi; the continuous argument is the sum, past the principal range.
  const Complex w = 3.0 * std::polar(1.0, -0.85 * kPi);
  const ChartPoint z = diag2(1.0, 1.0);
  const ChartPoint wd = diag2(w, w);
  const double per_factor = std::arg(oracle::cp1_h(1.0, w));
  EXPECT_GT(2 * per_factor, kPi);
  const double expected = 2.0 * (2.0 * per_factor);
  EXPECT_NEAR(arg_k_tilde(z, wd), expected, 1e-12);
  // the principal value differs by a full turn of h
  EXPECT_NEAR(principal_arg_k_tilde(z, wd), expected - 4.0 * kPi, 1e-12);
  // and the rho line integral sides with the continuous determination
  EXPECT_NEAR(0.5 * path_integral_rho(geodesic(z, wd)), -expected, 1e-9);
}

TEST(ArgKTilde, ContinuousOnRegularPairs) {
  // a sampled path can jump across the non-regular set between samples, so
  // continuity is checked locally: small moves of W change the argument by a
  // small amount
  Rng rng(5);
  for (const auto& space : kSpaces) {
    int rejected = 0;
    for (int trial = 0; trial < 10; ++trial) {
      const auto p = sample_configuration(rng, space, 2, rejected);
      const double base = arg_k_tilde(p[0], p[1]);
      for (int i = 0; i < 5; ++i) {
        const ChartPoint q(p[1].matrix() + 1e-7 * random_chart_point(rng, space).matrix());
        EXPECT_LT(std::abs(arg_k_tilde(p[0], q) - base), 1e-5);
      }
    }
  }
}

TEST(Potential, Examples) {
  EXPECT_EQ(potential(scalar(0.0)), 0.0);
  EXPECT_NEAR(potential(scalar(1.0)), 2.0 * std::log(2.0), 1e-15);
  EXPECT_NEAR(potential(diag2(1.0, 1.0)), 2.0 * std::log(4.0), 1e-14);
  EXPECT_NEAR(potential(diag2(1.0, 1.0)), 2.772588722239781, 1e-12);
}

TEST(KahlerForm, Examples) {
  const CMatrix one = CMatrix::Constant(1, 1, 1.0);
  const CMatrix i = CMatrix::Constant(1, 1, kI);
  EXPECT_NEAR(oracle::kahler_form(CMatrix::Zero(1, 1), one, i), 4.0, 1e-6);
  EXPECT_NEAR(kahler_form(scalar(0.0), one, i), 4.0, 1e-15);
  EXPECT_NEAR(oracle::kahler_form(CMatrix::Constant(1, 1, 1.0), one, i), 1.0, 1e-6);
  EXPECT_NEAR(kahler_form(scalar(1.0), one, i), 1.0, 1e-15);
  EXPECT_NEAR(kahler_form(scalar(Complex(0.3, 2.0)), one, i), oracle::cp1_area_density(Complex(0.3, 2.0)), 1e-14);
  EXPECT_EQ(kahler_form(diag2(0.2, kI), diag2(1, 2).matrix(), diag2(1, 2).matrix()), 0.0);
}

TEST(Metric, Examples) {
  const CMatrix one = CMatrix::Constant(1, 1, 1.0);
  EXPECT_NEAR(metric(scalar(0.0), one, one), 4.0, 1e-15);
  EXPECT_NEAR(oracle::metric(CMatrix::Zero(1, 1), one, one), 4.0, 1e-6);
}

TEST(Rho, Examples) {
  const CMatrix one = CMatrix::Constant(1, 1, 1.0);
  const CMatrix i = CMatrix::Constant(1, 1, kI);
  EXPECT_EQ(rho(ChartPoint::origin(SpaceParams(2, 2)), diag2(1, kI).matrix()), 0.0);
  EXPECT_NEAR(rho(scalar(1.0), i), 2.0, 1e-15);
  EXPECT_NEAR(oracle::rho(CMatrix::Constant(1, 1, 1.0), i), 2.0, 1e-7);
  EXPECT_NEAR(rho(scalar(1.0), one), 0.0, 1e-15);
}

TEST(KahlerData, MatchesPotentialFiniteDifferences) {
  Rng rng(17);
  for (const auto& space : kSpaces) {
    for (int i = 0; i < 10; ++i) {
      const ChartPoint z = random_chart_point(rng, space);
      const CMatrix x = random_chart_point(rng, space).matrix();
      const CMatrix y = random_chart_point(rng, space).matrix();
      EXPECT_NEAR(kahler_form(z, x, y), oracle::kahler_form(z.matrix(), x, y), 1e-5);
      EXPECT_NEAR(metric(z, x, y), oracle::metric(z.matrix(), x, y), 1e-5);
      EXPECT_NEAR(rho(z, x), oracle::rho(z.matrix(), x), 1e-5);
    }
  }
}

TEST(KahlerData, AlgebraicStructure) {
  Rng rng(19);
  for (const auto& space : kSpaces) {
    for (int i = 0; i < 20; ++i) {
      const ChartPoint z = random_chart_point(rng, space);
      const CMatrix x = random_chart_point(rng, space).matrix();
      const CMatrix y = random_chart_point(rng, space).matrix();
      const double w = kahler_form(z, x, y);
      EXPECT_NEAR(kahler_form(z, y, x), -w, 1e-12);
      EXPECT_NEAR(kahler_form(z, kI * x, kI * y), w, 1e-12);
      EXPECT_NEAR(metric(z, x, y), metric(z, y, x), 1e-12);
      EXPECT_NEAR(w, metric(z, kI * x, y), 1e-10);
      EXPECT_GT(metric(z, x, x), 0.0);
      EXPECT_GT(kahler_form(z, x, kI * x), 0.0);
    }
  }
}

TEST(Rho, ExteriorDerivativeIsTwiceKahlerForm) {
  Rng rng(23);
  for (const auto& space : kSpaces) {
    for (int i = 0; i < 10; ++i) {
      const ChartPoint z = random_chart_point(rng, space);
      // coordinate 2-planes spanned by single entries and their i-multiples
      CMatrix x = CMatrix::Zero(space.k(), space.m());
      CMatrix y = CMatrix::Zero(space.k(), space.m());
      x(i % space.k(), 0) = 1.0;
      y(0, i % space.m()) = (i % 2 == 0) ? kI : Complex(1.0);
      const auto form = [](const CMatrix& at, const CMatrix& v) { return rho(ChartPoint(at), v); };
      const double d_rho = oracle::exterior_derivative(form, z.matrix(), x, y);
      EXPECT_NEAR(d_rho, 2.0 * kahler_form(z, x, y), 1e-5);
    }
  }
}

TEST(CovarianceDefect, Examples) {
  const SpaceParams cp1(1, 1);
  EXPECT_LT(covariance_defect(UnitaryElement::identity(cp1), scalar(0.5), scalar(kI)), 1e-15);
  CMatrix g(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  g << s, -s, s, s;
  EXPECT_LT(covariance_defect(UnitaryElement(g, 1), scalar(1.0), scalar(kI)), 1e-10);

  Rng rng(29);
  const SpaceParams gr24(2, 2);
  int checked = 0;
  for (int i = 0; i < 100; ++i) {
    const UnitaryElement u = random_unitary(rng, gr24);
    const ChartPoint z = random_chart_point(rng, gr24);
    const ChartPoint w = random_chart_point(rng, gr24);
    if (!action_defined(u, z) || !action_defined(u, w)) continue;
    EXPECT_LT(covariance_defect(u, z, w), 1e-9);
    ++checked;
  }
  EXPECT_GT(checked, 90);

  CMatrix swap(2, 2);
  swap << 0, 1, -1, 0;
  EXPECT_THROW(covariance_defect(UnitaryElement(swap, 1), scalar(0.0), scalar(1.0)), UndefinedAction);
}
