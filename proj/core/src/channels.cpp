#include "qlan/channels.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "qlan/errors.hpp"

namespace qlan {

BoxKernel tau_kernel(const YoungDiagram& shape, int n, const Spectrum& mu) {
  if (shape.size() != n) throw InvalidArgument("tau_kernel: diagram does not have n boxes");
  const int d = mu.d();
  if (shape.num_rows() > d) throw InvalidArgument("tau_kernel: diagram has more than d rows");
  const double s = std::sqrt(static_cast<double>(n));
  BoxKernel k;
  k.shape = shape;
  for (int i = 0; i < d - 1; ++i) {
    const double c = (shape.row(i) - n * mu[i]) / s;
    k.box.lo.push_back(c - 0.5 / s);
    k.box.hi.push_back(c + 0.5 / s);
  }
  k.height = std::pow(s, d - 1);
  return k;
}

YoungDiagram sigma_kernel(const std::vector<double>& x, int n, const Spectrum& mu) {
  const int d = mu.d();
  if (static_cast<int>(x.size()) != d - 1) throw InvalidArgument("sigma_kernel: x must have d-1 coordinates");
  const double s = std::sqrt(static_cast<double>(n));
  std::vector<int> rows(static_cast<std::size_t>(d));
  long total = 0;
  bool ok = true;
  for (int i = 0; i < d - 1 && ok; ++i) {
    const double y = s * x[static_cast<std::size_t>(i)] + n * mu[i];
    if (!std::isfinite(y) || std::abs(y) > 1e15) {
      ok = false;
      break;
    }
    const double r = std::round(y);
    if (!(std::abs(y - r) < 0.5)) ok = false;
    rows[static_cast<std::size_t>(i)] = static_cast<int>(r);
    total += static_cast<long>(r);
  }
  if (ok) {
    rows[static_cast<std::size_t>(d - 1)] = static_cast<int>(n - total);
    for (int i = 0; i < d; ++i) {
      if (rows[static_cast<std::size_t>(i)] < 0) ok = false;
      if (i > 0 && rows[static_cast<std::size_t>(i)] > rows[static_cast<std::size_t>(i - 1)]) ok = false;
    }
  }
  if (!ok) return YoungDiagram({n});
  return YoungDiagram(rows);
}

BlockIsometry build_isometry(const BlockBasis& basis, const FockSpec& fock) {
  if (fock.d() != basis.d()) throw InvalidArgument("build_isometry: Fock space built for another d");
  const int K = basis.size();
  const std::int64_t F = fock.dim();
  std::vector<std::int64_t> rows(static_cast<std::size_t>(K));
  std::vector<bool> used(static_cast<std::size_t>(F), false);
  for (int k = 0; k < K; ++k) {
    const std::int64_t f = fock.index_of(basis.label(k));
    if (f < 0)
      throw DimensionError("basis label " + basis.label(k).to_string() + " exceeds the Fock cutoff " +
                           std::to_string(fock.cutoff()));
    rows[static_cast<std::size_t>(k)] = f;
    used[static_cast<std::size_t>(f)] = true;
  }
  const int zero = basis.index_of(MVector(basis.d()));
  if (zero < 0) throw InvalidArgument("build_isometry: basis does not contain m = 0");

  Eigen::SelfAdjointEigenSolver<MatrixXd> es(basis.gram());
  const VectorXd& g = es.eigenvalues();
  BlockIsometry iso;
  iso.shape = basis.shape();
  iso.scale = std::max(1.0, g.maxCoeff());
  iso.V = MatrixXc::Zero(F, K);
  const double rs = 1.0 / std::sqrt(iso.scale);
  for (int k = 0; k < K; ++k)
    iso.V.row(rows[static_cast<std::size_t>(k)]) = (basis.sqrt_gram().row(k) * rs).cast<Complex>();

  std::int64_t next_free = 0;
  for (int k = 0; k < K; ++k) {
    const double c = 1.0 - g(k) / iso.scale;
    if (c <= 1e-15) continue;
    while (next_free < F && used[static_cast<std::size_t>(next_free)]) ++next_free;
    if (next_free >= F)
      throw DimensionError("Fock space of dimension " + std::to_string(F) + " is too small to complete the isometry of " +
                           basis.shape().to_string());
    used[static_cast<std::size_t>(next_free)] = true;
    iso.V.row(next_free) = (std::sqrt(c) * es.eigenvectors().col(k).transpose()).cast<Complex>();
    ++iso.completion_rank;
  }
  iso.vacuum = basis.sqrt_gram().col(zero).cast<Complex>();
  iso.vacuum_overlap = std::abs((iso.V * iso.vacuum)(0));
  return iso;
}

MatrixXc apply_isometry(const BlockIsometry& iso, const MatrixXc& rho) {
  return hermitian_part(iso.V * rho * iso.V.adjoint());
}

MatrixXc reverse_block_map(const BlockIsometry& iso, const MatrixXc& phi) {
  MatrixXc r = hermitian_part(iso.V.adjoint() * phi * iso.V);
  const double rest = 1.0 - r.trace().real();
  r += rest * (iso.vacuum * iso.vacuum.adjoint());
  return r;
}

double ClassicalQuantumState::classical_mass() const {
  double m = 0.0;
  for (const auto& c : cells) m += c.weight;
  return m;
}

ForwardResult apply_T_n(const Spectrum& mu, const LocalParams& theta, int n, const FockSpec& fock,
                        const ChannelOptions& opts) {
  theta.validate(mu, n);
  const int d = mu.d();
  ForwardResult out;
  for (const auto& shape : enumerate_diagrams(n, d))
    out.all_weights.emplace_back(shape, block_weight(shape, mu, theta.u, n));

  for (const auto& [shape, p] : out.all_weights) {
    const bool typ = is_typical(shape, n, mu.mu(), opts.alpha);
    if (!typ) out.state.atypical_mass += p;
    if (p < opts.weight_floor) {
      out.state.neglected_mass += p;
      continue;
    }
    BlockBasis basis = BlockBasis::build(shape, d, opts.basis_cutoff, opts.state_budget);
    BlockOperator rho = block_state(basis, mu, theta, n, opts.max_truncation);
    BlockIsometry iso = build_isometry(basis, fock);
    const BoxKernel tau = tau_kernel(shape, n, mu);
    CqCell cell;
    cell.shape = shape;
    cell.box = tau.box;
    cell.weight = p;
    cell.height = p * tau.height;
    cell.typical = typ;
    cell.truncation_loss = rho.truncation_defect;
    cell.quantum = apply_isometry(iso, rho.matrix);
    out.state.truncation_budget += p * rho.truncation_defect;
    out.state.cells.push_back(std::move(cell));
    out.bases.push_back(std::move(basis));
    out.isometries.push_back(std::move(iso));
    out.block_states.push_back(std::move(rho));
  }
  if (out.state.neglected_mass > opts.max_neglected)
    throw CoverageError("diagrams without a quantum cell carry mass " + std::to_string(out.state.neglected_mass) +
                        "; lower the weight floor or raise alpha");
  return out;
}

double gaussian_density(const VectorXd& mean, const MatrixXd& cov, const std::vector<double>& x) {
  const Eigen::Index k = mean.size();
  VectorXd dx(k);
  for (Eigen::Index i = 0; i < k; ++i) dx(i) = x[static_cast<std::size_t>(i)] - mean(i);
  Eigen::LLT<MatrixXd> llt(cov);
  const double q = dx.dot(llt.solve(dx));
  const double logdet = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
  return std::exp(-0.5 * q - 0.5 * logdet - 0.5 * k * std::log(2.0 * std::numbers::pi));
}

namespace {

double normal_interval(double a, double b) {
  // P[a <= Z <= b] for a standard normal, accurate in both tails.
  if (a >= 0.0) return 0.5 * (std::erfc(a / std::numbers::sqrt2) - std::erfc(b / std::numbers::sqrt2));
  if (b <= 0.0) return 0.5 * (std::erfc(-b / std::numbers::sqrt2) - std::erfc(-a / std::numbers::sqrt2));
  return 1.0 - 0.5 * std::erfc(-a / std::numbers::sqrt2) - 0.5 * std::erfc(b / std::numbers::sqrt2);
}

}  // namespace

double gaussian_box_mass(const VectorXd& mean, const MatrixXd& cov, const Box& box) {
  const int k = box.dim();
  if (mean.size() != k || cov.rows() != k) throw InvalidArgument("gaussian_box_mass: dimension mismatch");
  if (k == 1) {
    const double s = std::sqrt(cov(0, 0));
    return normal_interval((box.lo[0] - mean(0)) / s, (box.hi[0] - mean(0)) / s);
  }
  if (k == 2) {
    // x1 marginal times the conditional probability of the x2 interval.
    const double s1 = std::sqrt(cov(0, 0));
    const double slope = cov(0, 1) / cov(0, 0);
    const double s2 = std::sqrt(cov(1, 1) - cov(0, 1) * slope);
    auto f = [&](const std::vector<double>& x) {
      const double t = (x[0] - mean(0)) / s1;
      const double m2 = mean(1) + slope * (x[0] - mean(0));
      return std::exp(-0.5 * t * t) / (s1 * std::sqrt(2.0 * std::numbers::pi)) *
             normal_interval((box.lo[1] - m2) / s2, (box.hi[1] - m2) / s2);
    };
    Box b1{{box.lo[0]}, {box.hi[0]}};
    // Clip to ±12 standard deviations; the rest is below double precision.
    b1.lo[0] = std::max(b1.lo[0], mean(0) - 12.0 * s1);
    b1.hi[0] = std::min(b1.hi[0], mean(0) + 12.0 * s1);
    if (!(b1.hi[0] > b1.lo[0])) return 0.0;
    return adaptive_box_integral(f, b1, 1e-13, 8, 12).value;
  }
  auto f = [&](const std::vector<double>& x) { return gaussian_density(mean, cov, x); };
  return adaptive_box_integral(f, box, 1e-12, 6, 6).value;
}

BlockFormState apply_S_n(const LimitState& limit, const Spectrum& mu, int n, const std::vector<BlockIsometry>& isos) {
  const int d = mu.d();
  std::map<YoungDiagram, const BlockIsometry*> by_shape;
  for (const auto& iso : isos) by_shape[iso.shape] = &iso;
  const YoungDiagram fallback({n});

  BlockFormState out;
  double others = 0.0;
  std::size_t fallback_index = 0;
  for (const auto& shape : enumerate_diagrams(n, d)) {
    BlockFormState::Block b;
    b.shape = shape;
    if (shape == fallback) {
      fallback_index = out.blocks.size();
    } else {
      b.weight = gaussian_box_mass(limit.mean, limit.covariance, tau_kernel(shape, n, mu).box);
      others += b.weight;
    }
    out.blocks.push_back(std::move(b));
  }
  out.blocks[fallback_index].weight = std::max(0.0, 1.0 - others);

  for (auto& b : out.blocks) {
    auto it = by_shape.find(b.shape);
    if (it == by_shape.end()) {
      out.unresolved_mass += b.weight;
      continue;
    }
    b.rho = reverse_block_map(*it->second, limit.quantum);
  }
  return out;
}

}  // namespace qlan
