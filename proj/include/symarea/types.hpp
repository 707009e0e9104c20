#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace symarea {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHalfPi = std::numbers::pi / 2.0;

// Relative zero test for chart denominators (see big_cell_ratio).
inline constexpr double kSingularityThreshold = 1e-9;
// Pairs whose transported endpoint has a principal angle this close to pi/2
// are treated as lying on the cut locus.
inline constexpr double kCutLocusAngleTolerance = 1e-6;

/// Base class of every geometric refusal raised by the library.
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A frame does not lie in the image of the chart (cut locus of the origin).
class OutsideBigCell : public GeometryError {
 public:
  OutsideBigCell() : GeometryError("point lies outside the big cell") {}
};

/// g(Z) leaves the chart.
class UndefinedAction : public GeometryError {
 public:
  UndefinedAction() : GeometryError("action is undefined at this chart point") {}
};

/// The kernel argument has no continuous determination at this pair.
class ArgUndefined : public GeometryError {
 public:
  explicit ArgUndefined(const std::string& why)
      : GeometryError("kernel argument undefined: " + why) {}
};

/// The coned filling of a triangle exits the chart or nears its boundary.
class FillingLeavesChart : public GeometryError {
 public:
  explicit FillingLeavesChart(const std::string& why)
      : GeometryError("filling leaves the chart: " + why) {}
};

}  // namespace symarea
