#pragma once

// Gauss-Legendre rules and adaptive integration over axis-aligned boxes.

#include <functional>
#include <vector>

namespace qlan {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule by Newton iteration on P_n.
GaussRule gauss_legendre(int n);

struct Box {
  std::vector<double> lo, hi;

  int dim() const { return static_cast<int>(lo.size()); }
  double volume() const;
  bool contains(const std::vector<double>& x) const;
  std::vector<double> center() const;
  /// 2^dim halves.
  std::vector<Box> split() const;
};

bool boxes_overlap(const Box& a, const Box& b);

using ScalarField = std::function<double(const std::vector<double>&)>;

/// Tensor-product rule of the given order on the box.
double box_integral(const ScalarField& f, const Box& box, int order = 8);

struct AdaptiveResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int evaluations = 0;
};

/// Bisects every dimension until the rule on a box agrees with the sum over its
/// halves to within the local share of tol, or the depth limit is reached.
AdaptiveResult adaptive_box_integral(const ScalarField& f, const Box& box, double tol, int order = 8,
                                     int max_depth = 10);

/// Composite Gauss-Legendre on [a, b].
double integrate_1d(const std::function<double(double)>& f, double a, double b, int panels, int order = 8);

}  // namespace qlan
