#include "qlan/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "qlan/errors.hpp"

namespace qlan {

double trace_distance(const MatrixXc& A, const MatrixXc& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols()) throw InvalidArgument("trace_distance: dimension mismatch");
  return trace_norm_hermitian(A - B);
}

namespace {

void check_disjoint(const std::vector<const Box*>& boxes) {
  std::vector<const Box*> sorted = boxes;
  std::sort(sorted.begin(), sorted.end(), [](const Box* a, const Box* b) { return a->lo[0] < b->lo[0]; });
  for (std::size_t i = 0; i < sorted.size(); ++i)
    for (std::size_t j = i + 1; j < sorted.size() && sorted[j]->lo[0] < sorted[i]->hi[0]; ++j)
      if (boxes_overlap(*sorted[i], *sorted[j])) throw InvalidArgument("classical_l1: boxes overlap");
}

// Whether height - N(x) keeps one sign over the box, judged on a 5-point grid per axis.
bool one_signed(const BoxDensity& b, const VectorXd& mean, const MatrixXd& cov) {
  const int k = b.box.dim();
  const int pts = 5;
  int total = 1;
  for (int i = 0; i < k; ++i) total *= pts;
  int pos = 0, neg = 0;
  std::vector<double> x(static_cast<std::size_t>(k));
  for (int code = 0; code < total; ++code) {
    int c = code;
    for (int i = 0; i < k; ++i) {
      const double t = (c % pts) / (pts - 1.0);
      c /= pts;
      x[static_cast<std::size_t>(i)] = b.box.lo[static_cast<std::size_t>(i)] + t * (b.box.hi[static_cast<std::size_t>(i)] - b.box.lo[static_cast<std::size_t>(i)]);
    }
    const double diff = b.height - gaussian_density(mean, cov, x);
    (diff >= 0.0 ? pos : neg)++;
  }
  // The mode of the Gaussian can hide a sign change between grid points.
  if (b.box.contains(std::vector<double>(mean.data(), mean.data() + mean.size()))) return false;
  return pos == 0 || neg == 0;
}

}  // namespace

double classical_l1(const std::vector<BoxDensity>& boxes, const VectorXd& mean, const MatrixXd& cov,
                    double tol_per_box) {
  std::vector<const Box*> ptrs;
  for (const auto& b : boxes) ptrs.push_back(&b.box);
  check_disjoint(ptrs);
  double total = 0.0, inside = 0.0;
  for (const auto& b : boxes) {
    const double g = gaussian_box_mass(mean, cov, b.box);
    inside += g;
    if (one_signed(b, mean, cov)) {
      total += std::abs(b.height * b.box.volume() - g);
    } else {
      auto f = [&](const std::vector<double>& x) { return std::abs(b.height - gaussian_density(mean, cov, x)); };
      total += adaptive_box_integral(f, b.box, tol_per_box, 8, 10).value;
    }
  }
  return total + std::max(0.0, 1.0 - inside);
}

DistanceReport cq_distance(const ClassicalQuantumState& out, const LimitState& limit,
                           const std::vector<std::pair<YoungDiagram, double>>& all_weights, const Spectrum& mu, int n,
                           const CqOptions& opts) {
  DistanceReport rep;
  const double hscale = std::pow(std::sqrt(static_cast<double>(n)), mu.d() - 1);
  std::vector<BoxDensity> all;
  for (const auto& [shape, p] : all_weights) all.push_back({tau_kernel(shape, n, mu).box, p * hscale});
  rep.classical = classical_l1(all, limit.mean, limit.covariance, opts.tol_per_box);

  double inside = 0.0, cells_total = 0.0;
  for (const auto& c : out.cells) {
    if (c.quantum.rows() != limit.quantum.rows()) throw InvalidArgument("cq_distance: Fock dimensions differ");
    inside += gaussian_box_mass(limit.mean, limit.covariance, c.box);
    auto f = [&](const std::vector<double>& x) {
      const double nx = gaussian_density(limit.mean, limit.covariance, x);
      return trace_norm_hermitian(nx * limit.quantum - c.height * c.quantum);
    };
    cells_total += adaptive_box_integral(f, c.box, opts.tol_per_box, opts.order, opts.max_depth).value;
    if (c.typical) rep.quantum_sup = std::max(rep.quantum_sup, trace_distance(limit.quantum, c.quantum));
  }
  rep.outside_mass = std::max(0.0, 1.0 - inside);
  rep.total = cells_total + rep.outside_mass;
  rep.atypical = out.atypical_mass;
  rep.truncation_budget = out.truncation_budget + out.neglected_mass + limit.tail_budget;
  rep.extra["cells"] = static_cast<double>(out.cells.size());
  rep.extra["neglected_mass"] = out.neglected_mass;
  rep.extra["fock_tail"] = limit.tail_budget;
  return rep;
}

SnReport sn_distance(const BlockFormState& recon, const ForwardResult& forward) {
  std::map<YoungDiagram, std::pair<double, const BlockOperator*>> fwd;
  for (const auto& [shape, p] : forward.all_weights) fwd[shape] = {p, nullptr};
  for (const auto& st : forward.block_states) fwd[st.shape].second = &st;

  SnReport rep;
  for (const auto& b : recon.blocks) {
    auto it = fwd.find(b.shape);
    const double p = it == fwd.end() ? 0.0 : it->second.first;
    const BlockOperator* rho = it == fwd.end() ? nullptr : it->second.second;
    if (rho && b.rho.size() > 0) {
      rep.exact_part += trace_norm_hermitian(b.weight * b.rho - p * rho->matrix);
    } else {
      rep.unresolved_bound += b.weight + p;
    }
  }
  rep.truncation_budget = 2.0 * forward.state.truncation_budget;
  rep.total = rep.exact_part + rep.unresolved_bound;
  return rep;
}

}  // namespace qlan
