#include "qlan/gaussian.hpp"

#include <cmath>
#include <numbers>

#include "qlan/errors.hpp"
#include "qlan/quadrature.hpp"

namespace qlan {

FockSpec::FockSpec(int d, int cutoff, std::int64_t limit) : d_(d), cutoff_(cutoff) {
  if (d < 2) throw InvalidArgument("FockSpec: d must be at least 2");
  if (cutoff < 1) throw InvalidArgument("FockSpec: cutoff must be at least 1");
  double dim = std::pow(cutoff + 1.0, num_pairs(d));
  if (dim > static_cast<double>(limit))
    throw ResourceLimit("Fock space dimension " + std::to_string(static_cast<long long>(dim)) + " exceeds the limit " +
                        std::to_string(limit) + "; lower the Fock cutoff");
  dim_ = static_cast<std::int64_t>(dim);
}

std::int64_t FockSpec::index_of(const MVector& m) const {
  if (m.d() != d_) throw InvalidArgument("FockSpec::index_of: dimension mismatch");
  std::int64_t idx = 0;
  for (int v : m.entries()) {
    if (v > cutoff_) return -1;
    idx = idx * (cutoff_ + 1) + v;
  }
  return idx;
}

MVector FockSpec::label(std::int64_t index) const {
  MVector m(d_);
  for (int p = modes() - 1; p >= 0; --p) {
    m.entries()[static_cast<std::size_t>(p)] = static_cast<int>(index % (cutoff_ + 1));
    index /= cutoff_ + 1;
  }
  return m;
}

std::string to_string(DisplacementConvention c) {
  switch (c) {
    case DisplacementConvention::Unit: return "unit";
    case DisplacementConvention::Sqrt2: return "sqrt2";
    case DisplacementConvention::Two: return "two";
  }
  return "unit";
}

DisplacementConvention parse_displacement_convention(const std::string& s) {
  if (s == "unit") return DisplacementConvention::Unit;
  if (s == "sqrt2") return DisplacementConvention::Sqrt2;
  if (s == "two") return DisplacementConvention::Two;
  throw InvalidArgument("unknown displacement convention '" + s + "' (expected unit, sqrt2 or two)");
}

Complex mode_amplitude(const Spectrum& mu, int j, int k, Complex zeta, DisplacementConvention c) {
  const double gap = mu[j] - mu[k];
  if (!(gap > 0.0)) throw DegenerateSpectrum("mode_amplitude: degenerate pair");
  switch (c) {
    case DisplacementConvention::Unit: return zeta;
    case DisplacementConvention::Sqrt2: return zeta / std::sqrt(2.0 * gap);
    case DisplacementConvention::Two: return zeta / (2.0 * std::sqrt(gap));
  }
  return zeta;
}

SingleModeState thermal(double beta, int N) {
  if (!(beta > 0.0)) throw InvalidArgument("thermal: beta must be positive");
  if (N < 0) throw InvalidArgument("thermal: cutoff must be nonnegative");
  SingleModeState s;
  s.rho = MatrixXc::Zero(N + 1, N + 1);
  const double q = -std::expm1(-beta);
  double tot = 0.0;
  for (int k = 0; k <= N; ++k) {
    const double p = q * std::exp(-beta * k);
    s.rho(k, k) = p;
    tot += p;
  }
  s.raw_tail = std::exp(-beta * (N + 1.0));
  s.rho /= tot;
  return s;
}

WeylOperator weyl(Complex z, int N) {
  if (N < 1) throw InvalidArgument("weyl: cutoff must be at least 1");
  MatrixXc G = MatrixXc::Zero(N + 1, N + 1);
  for (int k = 1; k <= N; ++k) {
    const double s = std::sqrt(static_cast<double>(k));
    G(k, k - 1) = z * s;              // z a†
    G(k - 1, k) = -std::conj(z) * s;  // -z̄ a
  }
  WeylOperator w;
  // G is anti-Hermitian, so exp(G) = exp(i H) with H = -iG.
  w.W = exp_i_hermitian(Complex(0.0, -1.0) * G);
  w.truncation_flag = std::norm(z) > N / 4.0;
  return w;
}

SingleModeState displaced_thermal(double beta, Complex z, int N) {
  SingleModeState s = thermal(beta, N);
  const MatrixXc W = weyl(z, N).W;
  s.rho = hermitian_part(W.adjoint() * s.rho * W);
  s.rho /= s.rho.trace().real();
  return s;
}

VectorXc coherent_vector(Complex z, int N) {
  VectorXc v(N + 1);
  Complex c = std::exp(-0.5 * std::norm(z));
  for (int m = 0; m <= N; ++m) {
    v(m) = c;
    c *= z / std::sqrt(m + 1.0);
  }
  return v;
}

Complex characteristic_function(const MatrixXc& rho, Complex zprime) {
  const MatrixXc W = weyl(zprime, static_cast<int>(rho.rows()) - 1).W;
  return (rho * W).trace();
}

Complex displaced_thermal_characteristic(double beta, Complex mean, Complex zprime) {
  const double env = -std::norm(zprime) / (2.0 * std::tanh(beta / 2.0));
  const double phase = -2.0 * (std::conj(zprime) * mean).imag();
  return std::exp(Complex(env, phase));
}

MatrixXc smeared_coherent_states(double beta, int N, int radial_panels, int angular_nodes) {
  const double eb = std::exp(beta);
  const double c = eb - 1.0;
  const double R = std::sqrt((N + 1.0 + 60.0 + 10.0 * std::sqrt(N + 1.0)) / eb);
  const GaussRule g = gauss_legendre(8);
  MatrixXc out = MatrixXc::Zero(N + 1, N + 1);
  const double h = R / radial_panels;
  for (int p = 0; p < radial_panels; ++p) {
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      const double r = p * h + 0.5 * h * (1.0 + g.nodes[i]);
      const double wr = 0.5 * h * g.weights[i] * r * std::exp(-c * r * r);
      for (int a = 0; a < angular_nodes; ++a) {
        const double phi = 2.0 * std::numbers::pi * a / angular_nodes;
        const VectorXc v = coherent_vector(std::polar(r, phi), N);
        out += (wr * 2.0 * std::numbers::pi / angular_nodes) * (v * v.adjoint());
      }
    }
  }
  return out * (c / std::numbers::pi);
}

Complex mode_mean(const MatrixXc& rho) {
  Complex m = 0.0;
  for (Eigen::Index k = 1; k < rho.rows(); ++k) m += std::sqrt(static_cast<double>(k)) * rho(k, k - 1);
  return m;
}

LimitState limit_quantum_state(const Spectrum& mu, const std::vector<Complex>& zeta, const FockSpec& fock,
                               DisplacementConvention c) {
  const int d = mu.d();
  if (fock.d() != d) throw InvalidArgument("limit_quantum_state: Fock space built for another d");
  if (static_cast<int>(zeta.size()) != num_pairs(d)) throw InvalidArgument("zeta must have d(d-1)/2 entries");
  LimitState s;
  s.fock = fock;
  MatrixXc rho = MatrixXc::Ones(1, 1);
  for (int p = 0; p < num_pairs(d); ++p) {
    auto [j, k] = pair_of(p, d);
    if (!(mu[j] > mu[k])) throw DegenerateSpectrum("limit_quantum_state: degenerate pair");
    const double beta = std::log(mu[j] / mu[k]);
    const Complex amp = mode_amplitude(mu, j, k, zeta[static_cast<std::size_t>(p)], c);
    // W(z)* Φ W(z) has mean -z.
    SingleModeState m = displaced_thermal(beta, -amp, fock.cutoff());
    s.tail_budget += m.raw_tail;
    s.amplitudes.push_back(amp);
    s.betas.push_back(beta);
    rho = kron(rho, m.rho);
  }
  s.quantum = rho;
  return s;
}

LimitState limit_state(const Spectrum& mu, const LocalParams& theta, const FockSpec& fock, DisplacementConvention c) {
  if (static_cast<int>(theta.u.size()) != mu.d() - 1) throw InvalidArgument("u must have d-1 entries");
  LimitState s = limit_quantum_state(mu, theta.zeta, fock, c);
  s.mean = Eigen::Map<const VectorXd>(theta.u.data(), static_cast<Eigen::Index>(theta.u.size()));
  s.covariance = covariance(mu);
  return s;
}

MatrixXc mode_marginal(const MatrixXc& rho, const FockSpec& fock, int mode) {
  const int N1 = fock.cutoff() + 1;
  const int P = fock.modes();
  std::int64_t inner = 1;
  for (int p = mode + 1; p < P; ++p) inner *= N1;
  const std::int64_t outer = fock.dim() / (inner * N1);
  MatrixXc out = MatrixXc::Zero(N1, N1);
  for (std::int64_t o = 0; o < outer; ++o)
    for (std::int64_t in = 0; in < inner; ++in)
      for (int a = 0; a < N1; ++a)
        for (int b = 0; b < N1; ++b)
          out(a, b) += rho((o * N1 + a) * inner + in, (o * N1 + b) * inner + in);
  return out;
}

}  // namespace qlan
