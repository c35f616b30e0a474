#include "qlan/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "qlan/errors.hpp"

namespace qlan {

GaussRule gauss_legendre(int n) {
  if (n < 1) throw InvalidArgument("gauss_legendre: n must be positive");
  GaussRule r;
  r.nodes.resize(static_cast<std::size_t>(n));
  r.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double pn = n == 1 ? x : p1;
      double pm = n == 1 ? 1.0 : p0;
      dp = n * (x * pn - pm) / (x * x - 1.0);
      double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[static_cast<std::size_t>(i)] = -x;
    r.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    r.weights[static_cast<std::size_t>(i)] = w;
    r.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1) r.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return r;
}

double Box::volume() const {
  double v = 1.0;
  for (int i = 0; i < dim(); ++i) v *= hi[static_cast<std::size_t>(i)] - lo[static_cast<std::size_t>(i)];
  return v;
}

bool Box::contains(const std::vector<double>& x) const {
  for (int i = 0; i < dim(); ++i)
    if (x[static_cast<std::size_t>(i)] < lo[static_cast<std::size_t>(i)] || x[static_cast<std::size_t>(i)] > hi[static_cast<std::size_t>(i)])
      return false;
  return true;
}

std::vector<double> Box::center() const {
  std::vector<double> c(lo.size());
  for (std::size_t i = 0; i < lo.size(); ++i) c[i] = 0.5 * (lo[i] + hi[i]);
  return c;
}

std::vector<Box> Box::split() const {
  std::vector<Box> out;
  const int k = dim();
  const auto mid = center();
  for (int mask = 0; mask < (1 << k); ++mask) {
    Box b = *this;
    for (int i = 0; i < k; ++i) {
      if (mask & (1 << i))
        b.lo[static_cast<std::size_t>(i)] = mid[static_cast<std::size_t>(i)];
      else
        b.hi[static_cast<std::size_t>(i)] = mid[static_cast<std::size_t>(i)];
    }
    out.push_back(std::move(b));
  }
  return out;
}

bool boxes_overlap(const Box& a, const Box& b) {
  // Shared faces do not count as overlap.
  const double eps = 1e-12;
  for (int i = 0; i < a.dim(); ++i) {
    const double lo = std::max(a.lo[static_cast<std::size_t>(i)], b.lo[static_cast<std::size_t>(i)]);
    const double hi = std::min(a.hi[static_cast<std::size_t>(i)], b.hi[static_cast<std::size_t>(i)]);
    if (hi - lo <= eps * std::max(1.0, std::abs(hi))) return false;
  }
  return true;
}

namespace {

double rule_on_box(const ScalarField& f, const Box& box, const GaussRule& g, int* evals) {
  const int k = box.dim();
  const int m = static_cast<int>(g.nodes.size());
  std::vector<int> idx(static_cast<std::size_t>(k), 0);
  std::vector<double> x(static_cast<std::size_t>(k));
  double total = 0.0;
  while (true) {
    double w = 1.0;
    for (int i = 0; i < k; ++i) {
      const double half = 0.5 * (box.hi[static_cast<std::size_t>(i)] - box.lo[static_cast<std::size_t>(i)]);
      const double mid = 0.5 * (box.hi[static_cast<std::size_t>(i)] + box.lo[static_cast<std::size_t>(i)]);
      x[static_cast<std::size_t>(i)] = mid + half * g.nodes[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
      w *= half * g.weights[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
    }
    total += w * f(x);
    if (evals) ++*evals;
    int i = 0;
    while (i < k && ++idx[static_cast<std::size_t>(i)] == m) idx[static_cast<std::size_t>(i++)] = 0;
    if (i == k) break;
  }
  return total;
}

void adaptive_rec(const ScalarField& f, const Box& box, double coarse, double tol, const GaussRule& g, int depth,
                  int max_depth, AdaptiveResult& res) {
  const auto kids = box.split();
  std::vector<double> vals;
  double fine = 0.0;
  for (const auto& k : kids) {
    vals.push_back(rule_on_box(f, k, g, &res.evaluations));
    fine += vals.back();
  }
  const double err = std::abs(fine - coarse);
  if (err <= tol || depth >= max_depth) {
    res.value += fine;
    res.error_estimate += err;
    return;
  }
  const double share = tol / static_cast<double>(kids.size());
  for (std::size_t i = 0; i < kids.size(); ++i) adaptive_rec(f, kids[i], vals[i], share, g, depth + 1, max_depth, res);
}

}  // namespace

double box_integral(const ScalarField& f, const Box& box, int order) {
  return rule_on_box(f, box, gauss_legendre(order), nullptr);
}

AdaptiveResult adaptive_box_integral(const ScalarField& f, const Box& box, double tol, int order, int max_depth) {
  const GaussRule g = gauss_legendre(order);
  AdaptiveResult res;
  const double coarse = rule_on_box(f, box, g, &res.evaluations);
  adaptive_rec(f, box, coarse, tol, g, 0, max_depth, res);
  return res;
}

double integrate_1d(const std::function<double(double)>& f, double a, double b, int panels, int order) {
  const GaussRule g = gauss_legendre(order);
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h, mid = lo + 0.5 * h;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) total += 0.5 * h * g.weights[i] * f(mid + 0.5 * h * g.nodes[i]);
  }
  return total;
}

}  // namespace qlan
