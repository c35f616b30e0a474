#include "qlan/models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qlan/errors.hpp"

namespace qlan {

Spectrum::Spectrum(std::vector<double> mu) : mu_(std::move(mu)) {
  if (mu_.size() < 2) throw InvalidArgument("spectrum needs at least two eigenvalues");
  double sum = 0.0;
  for (double v : mu_) {
    if (!(v > 0.0)) throw InvalidArgument("spectrum entries must be positive (faithful state)");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw InvalidArgument("spectrum must sum to 1, got " + std::to_string(sum));
  for (std::size_t i = 1; i < mu_.size(); ++i)
    if (!(mu_[i] < mu_[i - 1])) throw DegenerateSpectrum("spectrum must be strictly decreasing");
}

double Spectrum::gap() const {
  double g = mu_.back();
  for (std::size_t i = 1; i < mu_.size(); ++i) g = std::min(g, mu_[i - 1] - mu_[i]);
  return g;
}

MatrixXc Spectrum::density() const {
  MatrixXc r = MatrixXc::Zero(d(), d());
  for (int i = 0; i < d(); ++i) r(i, i) = mu_[static_cast<std::size_t>(i)];
  return r;
}

LocalParams LocalParams::zero(int d) {
  LocalParams p;
  p.u.assign(static_cast<std::size_t>(d - 1), 0.0);
  p.zeta.assign(static_cast<std::size_t>(num_pairs(d)), Complex(0.0, 0.0));
  return p;
}

bool LocalParams::has_rotation() const {
  for (const auto& z : zeta)
    if (z != Complex(0.0, 0.0)) return true;
  for (double v : xi)
    if (v != 0.0) return true;
  return false;
}

std::vector<double> perturbed_spectrum(const Spectrum& mu, const std::vector<double>& u, int n) {
  const int d = mu.d();
  if (static_cast<int>(u.size()) != d - 1) throw InvalidArgument("u must have d-1 entries");
  if (n < 1) throw InvalidArgument("n must be positive");
  const double s = std::sqrt(static_cast<double>(n));
  std::vector<double> x(static_cast<std::size_t>(d));
  double tot = 0.0;
  for (int i = 0; i < d - 1; ++i) {
    x[static_cast<std::size_t>(i)] = mu[i] + u[static_cast<std::size_t>(i)] / s;
    tot += u[static_cast<std::size_t>(i)];
  }
  x[static_cast<std::size_t>(d - 1)] = mu[d - 1] - tot / s;
  return x;
}

void LocalParams::validate(const Spectrum& mu, int n) const {
  const int d = mu.d();
  if (static_cast<int>(u.size()) != d - 1) throw InvalidArgument("u must have d-1 entries");
  if (static_cast<int>(zeta.size()) != num_pairs(d)) throw InvalidArgument("zeta must have d(d-1)/2 entries");
  if (!xi.empty() && static_cast<int>(xi.size()) != d - 1) throw InvalidArgument("xi must have d-1 entries");
  auto x = perturbed_spectrum(mu, u, n);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0 && x[i] < 1.0))
      throw ParameterOutOfRange("perturbed eigenvalue " + std::to_string(i + 1) + " leaves (0,1) at n=" + std::to_string(n));
    if (i > 0 && !(x[i] < x[i - 1]))
      throw ParameterOutOfRange("perturbed eigenvalues are not strictly decreasing at n=" + std::to_string(n));
  }
}

std::vector<MatrixXc> SuGenerators::all() const {
  std::vector<MatrixXc> out = H;
  for (std::size_t p = 0; p < Tr.size(); ++p) {
    out.push_back(Tr[p]);
    out.push_back(Ti[p]);
  }
  return out;
}

SuGenerators su_generators(int d) {
  if (d < 2) throw InvalidArgument("su_generators: d must be at least 2");
  const Complex I(0.0, 1.0);
  SuGenerators g;
  for (int j = 0; j + 1 < d; ++j) {
    MatrixXc h = MatrixXc::Zero(d, d);
    h(j, j) = 1.0;
    h(j + 1, j + 1) = -1.0;
    g.H.push_back(h);
  }
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      MatrixXc a = MatrixXc::Zero(d, d), b = MatrixXc::Zero(d, d);
      a(j, k) = I;
      a(k, j) = -I;
      b(j, k) = 1.0;
      b(k, j) = 1.0;
      g.Tr.push_back(a);
      g.Ti.push_back(b);
    }
  return g;
}

MatrixXc rotation_unitary(const Spectrum& mu, const std::vector<Complex>& zeta, const std::vector<double>& xi,
                          std::optional<double> scale) {
  const int d = mu.d();
  if (static_cast<int>(zeta.size()) != num_pairs(d)) throw InvalidArgument("zeta must have d(d-1)/2 entries");
  if (!xi.empty() && static_cast<int>(xi.size()) != d - 1) throw InvalidArgument("xi must have d-1 entries");
  const double s = scale.value_or(1.0);
  if (!(s > 0.0)) throw InvalidArgument("rotation scale must be positive");
  SuGenerators g = su_generators(d);
  MatrixXc X = MatrixXc::Zero(d, d);
  for (std::size_t i = 0; i < xi.size(); ++i) X += xi[i] * g.H[i];
  for (int p = 0; p < num_pairs(d); ++p) {
    auto [j, k] = pair_of(p, d);
    const double gap = mu[j] - mu[k];
    if (!(gap > 0.0)) throw DegenerateSpectrum("rotation_unitary: eigenvalues " + std::to_string(j + 1) + " and " +
                                              std::to_string(k + 1) + " coincide");
    const Complex z = zeta[static_cast<std::size_t>(p)];
    X += (z.real() * g.Tr[static_cast<std::size_t>(p)] + z.imag() * g.Ti[static_cast<std::size_t>(p)]) / std::sqrt(gap);
  }
  return exp_i_hermitian(X / s);
}

MatrixXc rho_theta(const Spectrum& mu, const LocalParams& theta, int n, Family family) {
  theta.validate(mu, n);
  const int d = mu.d();
  const auto x = perturbed_spectrum(mu, theta.u, n);
  MatrixXc rho = MatrixXc::Zero(d, d);
  for (int i = 0; i < d; ++i) rho(i, i) = x[static_cast<std::size_t>(i)];
  const double s = std::sqrt(static_cast<double>(n));
  if (family == Family::Unitary) {
    if (theta.has_rotation()) {
      MatrixXc U = rotation_unitary(mu, theta.zeta, theta.xi, s);
      rho = hermitian_part(U * rho * U.adjoint());
    }
  } else {
    for (int p = 0; p < num_pairs(d); ++p) {
      auto [j, k] = pair_of(p, d);
      const Complex z = theta.zeta[static_cast<std::size_t>(p)] / s;
      rho(k, j) = z;
      rho(j, k) = std::conj(z);
    }
  }
  auto spec = hermitian_spectrum(rho);
  if (!(spec.back() > 0.0)) throw ParameterOutOfRange("rho_theta is not positive definite at n=" + std::to_string(n));
  return rho;
}

double schur_ratio(const YoungDiagram& shape, const std::vector<double>& x) {
  const int d = static_cast<int>(x.size());
  if (shape.num_rows() > d) throw InvalidArgument("schur_ratio: diagram has more rows than variables");
  std::vector<double> lx(static_cast<std::size_t>(d)), l(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    if (!(x[static_cast<std::size_t>(j)] > 0.0)) throw InvalidArgument("schur_ratio: variables must be positive");
    if (j > 0 && !(x[static_cast<std::size_t>(j)] < x[static_cast<std::size_t>(j - 1)]))
      throw DegenerateSpectrum("schur_ratio: variables must be strictly decreasing");
    lx[static_cast<std::size_t>(j)] = std::log(x[static_cast<std::size_t>(j)]);
    l[static_cast<std::size_t>(j)] = shape.row(j) + d - 1 - j;
  }
  std::vector<int> sigma(static_cast<std::size_t>(d));
  std::iota(sigma.begin(), sigma.end(), 0);
  double num = 0.0;
  do {
    int inv = 0;
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j)
        if (sigma[static_cast<std::size_t>(i)] > sigma[static_cast<std::size_t>(j)]) ++inv;
    double e = 0.0;
    for (int j = 0; j < d; ++j)
      e += l[static_cast<std::size_t>(j)] * (lx[static_cast<std::size_t>(sigma[static_cast<std::size_t>(j)])] - lx[static_cast<std::size_t>(j)]);
    num += (inv % 2 ? -1.0 : 1.0) * std::exp(e);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  double den = 1.0;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) den *= -std::expm1(lx[static_cast<std::size_t>(j)] - lx[static_cast<std::size_t>(i)]);
  return num / den;
}

double log_block_constant(const YoungDiagram& shape, int n, int d) {
  if (shape.size() != n)
    throw InvalidArgument("diagram " + shape.to_string() + " does not have n=" + std::to_string(n) + " boxes");
  if (shape.num_rows() > d) throw InvalidArgument("diagram has more than d rows");
  double lc = std::lgamma(n + 1.0);
  for (int l = 0; l < d; ++l) {
    const int ll = shape.row(l);
    lc -= std::lgamma(ll + 1.0);
    lc += std::lgamma(ll + 1.0) - std::lgamma(ll + d - l + 0.0);
    for (int k = l + 1; k < d; ++k) lc += std::log(static_cast<double>(ll - shape.row(k) + k - l));
  }
  return lc;
}

double log_block_weight(const YoungDiagram& shape, const Spectrum& mu, const std::vector<double>& u, int n) {
  const auto x = perturbed_spectrum(mu, u, n);
  double lw = log_block_constant(shape, n, mu.d());
  for (int i = 0; i < mu.d(); ++i) lw += shape.row(i) * std::log(x[static_cast<std::size_t>(i)]);
  return lw + std::log(schur_ratio(shape, x));
}

double block_weight(const YoungDiagram& shape, const Spectrum& mu, const std::vector<double>& u, int n) {
  return std::exp(log_block_weight(shape, mu, u, n));
}

double block_eigenvalue(const YoungDiagram& shape, const MVector& m, const std::vector<double>& x) {
  double e = 0.0;
  const int d = m.d();
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) e += m.at(i, j) * (std::log(x[static_cast<std::size_t>(j)]) - std::log(x[static_cast<std::size_t>(i)]));
  return std::exp(e) / schur_ratio(shape, x);
}

double block_weight_enumerated(const YoungDiagram& shape, const Spectrum& mu, const std::vector<double>& u, int n) {
  const auto x = perturbed_spectrum(mu, u, n);
  const int d = mu.d();
  double lead = log_block_constant(shape, n, d);
  for (int i = 0; i < d; ++i) lead += shape.row(i) * std::log(x[static_cast<std::size_t>(i)]);
  double sum = 0.0;
  for (const auto& m : enumerate_m_vectors(shape, d)) {
    double e = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) e += m.at(i, j) * std::log(x[static_cast<std::size_t>(j)] / x[static_cast<std::size_t>(i)]);
    sum += std::exp(e);
  }
  return std::exp(lead) * sum;
}

BlockOperator block_state(const BlockBasis& basis, const Spectrum& mu, const LocalParams& theta, int n,
                          double max_loss) {
  theta.validate(mu, n);
  if (basis.d() != mu.d()) throw InvalidArgument("block_state: basis and spectrum dimensions differ");
  const auto x = perturbed_spectrum(mu, theta.u, n);
  const int k = basis.size();
  VectorXd c(k);
  for (int i = 0; i < k; ++i) c(i) = block_eigenvalue(basis.shape(), basis.label(i), x);

  BlockOperator out;
  out.shape = basis.shape();
  if (theta.has_rotation()) {
    MatrixXc U = rotation_unitary(mu, theta.zeta, theta.xi, std::sqrt(static_cast<double>(n)));
    MatrixXc M = block_unitary(basis, U).matrix;
    out.matrix = hermitian_part(M * c.cast<Complex>().asDiagonal() * M.adjoint());
  } else {
    out.matrix = c.cast<Complex>().asDiagonal();
  }
  const double tr = out.matrix.trace().real();
  out.truncation_defect = std::max(0.0, 1.0 - tr);
  if (out.truncation_defect > max_loss)
    throw TruncationError("block state of " + basis.shape().to_string() + " loses " +
                          std::to_string(out.truncation_defect) + " of its trace; raise the basis cutoff");
  out.matrix /= tr;
  return out;
}

MatrixXd fisher_info(const Spectrum& mu) {
  const int k = mu.d() - 1;
  MatrixXd I = MatrixXd::Constant(k, k, 1.0 / mu[k]);
  for (int i = 0; i < k; ++i) I(i, i) += 1.0 / mu[i];
  return I;
}

MatrixXd covariance(const Spectrum& mu) {
  const int k = mu.d() - 1;
  MatrixXd V(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) V(i, j) = (i == j ? mu[i] : 0.0) - mu[i] * mu[j];
  return V;
}

double multinomial_pmf(const std::vector<int>& counts, const std::vector<double>& p) {
  if (counts.size() != p.size()) throw InvalidArgument("multinomial_pmf: size mismatch");
  int n = 0;
  double lp = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] < 0) throw InvalidArgument("multinomial_pmf: negative count");
    n += counts[i];
    if (counts[i] > 0) {
      if (!(p[i] > 0.0)) return 0.0;
      lp += counts[i] * std::log(p[i]) - std::lgamma(counts[i] + 1.0);
    }
  }
  return std::exp(lp + std::lgamma(n + 1.0));
}

double binomial_two_sided_tail(int n, double p, double x) {
  double tail = 0.0;
  for (int k = 0; k <= n; ++k) {
    if (std::abs(k - n * p) < x) continue;
    tail += multinomial_pmf({k, n - k}, {p, 1.0 - p});
  }
  return tail;
}

double hoeffding_bound(int n, double x) { return 2.0 * std::exp(-2.0 * x * x / n); }

}  // namespace qlan
