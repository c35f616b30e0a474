#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qlan/channels.hpp"
#include "qlan/errors.hpp"
#include "qlan/gaussian.hpp"
#include "qlan/metrics.hpp"
#include "qlan/models.hpp"

using namespace qlan;

namespace {

MatrixXc random_state(int k, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> g;
  MatrixXc A(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) A(i, j) = Complex(g(rng), g(rng));
  MatrixXc r = A * A.adjoint();
  return r / r.trace();
}

std::vector<BoxDensity> lattice_discretization(const Spectrum& mu, int n, const std::vector<double>& u) {
  std::vector<BoxDensity> out;
  for (const auto& s : enumerate_diagrams(n, mu.d())) {
    const BoxKernel k = tau_kernel(s, n, mu);
    out.push_back({k.box, block_weight(s, mu, u, n) * k.height});
  }
  return out;
}

struct ChannelRun {
  ForwardResult fwd;
  LimitState limit;
};

ChannelRun forward_run(const Spectrum& mu, const LocalParams& theta, int n, int fock_cutoff, int basis_cutoff) {
  ChannelOptions opts;
  opts.basis_cutoff = basis_cutoff;
  const FockSpec fock(mu.d(), fock_cutoff);
  return {apply_T_n(mu, theta, n, fock, opts), limit_state(mu, theta, fock, DisplacementConvention::Unit)};
}

}  // namespace

TEST(TraceDistance, Examples) {
  const MatrixXc a = random_state(4, 1);
  EXPECT_NEAR(trace_distance(a, a), 0.0, 1e-14);
  MatrixXc p = MatrixXc::Zero(2, 2), q = MatrixXc::Zero(2, 2);
  p(0, 0) = 1.0;
  q(1, 1) = 1.0;
  EXPECT_NEAR(trace_distance(p, q), 2.0, 1e-14);
  MatrixXc x = MatrixXc::Zero(2, 2), y = MatrixXc::Zero(2, 2);
  x(0, 0) = 0.8;
  x(1, 1) = 0.2;
  y(0, 0) = 0.6;
  y(1, 1) = 0.4;
  EXPECT_NEAR(trace_distance(x, y), 0.4, 1e-14);
  EXPECT_THROW(trace_distance(p, random_state(3, 2)), InvalidArgument);
}

TEST(TraceDistance, MetricProperties) {
  for (unsigned s = 0; s < 20; ++s) {
    const MatrixXc a = random_state(5, 3 * s + 1), b = random_state(5, 3 * s + 2), c = random_state(5, 3 * s + 3);
    const double ab = trace_distance(a, b);
    EXPECT_NEAR(ab, trace_distance(b, a), 1e-12);
    EXPECT_LE(ab, trace_distance(a, c) + trace_distance(c, b) + 1e-12);
    EXPECT_LE(ab, 2.0 + 1e-12);
    EXPECT_GT(ab, 0.0);
  }
}

TEST(ClassicalL1, OverlapAndDisjointSupport) {
  VectorXd m = VectorXd::Zero(1);
  MatrixXd V = MatrixXd::Identity(1, 1) * 0.21;
  EXPECT_THROW(classical_l1({{Box{{0.0}, {1.0}}, 1.0}, {Box{{0.5}, {1.5}}, 1.0}}, m, V), InvalidArgument);
  EXPECT_NEAR(classical_l1({{Box{{50.0}, {51.0}}, 1.0}}, m, V), 2.0, 1e-9);
  VectorXd m2 = VectorXd::Zero(2);
  EXPECT_NEAR(classical_l1({{Box{{40.0, 40.0}, {40.5, 40.5}}, 4.0}}, m2, covariance(Spectrum({0.5, 0.3, 0.2}))), 2.0, 1e-9);
}

TEST(ClassicalL1, ExactDiscretizationShrinks) {
  VectorXd m = VectorXd::Constant(1, 0.2);
  MatrixXd V = MatrixXd::Constant(1, 1, 0.21);
  double prev = 1.0;
  for (double h : {0.4, 0.2, 0.1, 0.05, 0.0125}) {
    std::vector<BoxDensity> boxes;
    for (double a = -4.0; a < 4.0 - 1e-12; a += h) {
      const Box b{{a}, {a + h}};
      boxes.push_back({b, gaussian_box_mass(m, V, b) / h});
    }
    const double v = classical_l1(boxes, m, V);
    EXPECT_LT(v, prev) << h;
    prev = v;
  }
  EXPECT_LT(prev, 0.01);
}

TEST(ClassicalL1, LatticeModelApproachesGaussian) {
  const Spectrum mu({0.7, 0.3});
  const std::vector<double> u{0.5};
  VectorXd mean = VectorXd::Constant(1, 0.5);
  const double at25 = classical_l1(lattice_discretization(mu, 25, u), mean, covariance(mu));
  const double at400 = classical_l1(lattice_discretization(mu, 400, u), mean, covariance(mu));
  EXPECT_LT(at400, at25);
  EXPECT_LT(at400, 0.1);
}

TEST(CqDistance, LimitAgainstItsOwnDiscretization) {
  // With Φ in every cell the distance reduces to the classical discretization residual.
  const Spectrum mu({0.7, 0.3});
  const int n = 36;
  const FockSpec fock(2, 20);
  const LimitState L = limit_state(mu, LocalParams{{0.2}, {{0.3, 0.1}}, {}}, fock, DisplacementConvention::Unit);
  ClassicalQuantumState cq;
  std::vector<std::pair<YoungDiagram, double>> weights;
  std::vector<BoxDensity> boxes;
  for (const auto& s : enumerate_diagrams(n, 2)) {
    const BoxKernel k = tau_kernel(s, n, mu);
    const double w = gaussian_box_mass(L.mean, L.covariance, k.box);
    weights.emplace_back(s, w);
    boxes.push_back({k.box, w * k.height});
    cq.cells.push_back({s, k.box, w, w * k.height, true, 0.0, L.quantum});
  }
  const DistanceReport r = cq_distance(cq, L, weights, mu, n);
  EXPECT_NEAR(r.total, classical_l1(boxes, L.mean, L.covariance), 1e-5);
  EXPECT_LT(r.quantum_sup, 1e-12);
}

TEST(CqDistance, DecreasesAndIsDominated) {
  const Spectrum mu({0.7, 0.3});
  std::vector<double> totals;
  for (int n : {8, 64}) {
    const ChannelRun run = forward_run(mu, LocalParams::zero(2), n, 30, 20);
    const DistanceReport r = cq_distance(run.fwd.state, run.limit, run.fwd.all_weights, mu, n);
    EXPECT_LE(r.total, r.components_sum() + 1e-8) << n;
    EXPECT_GE(r.total, 0.0);
    totals.push_back(r.total);
  }
  EXPECT_LT(totals[1], totals[0]);
}

TEST(CqDistance, RelabelingAndUnitaryInvariance) {
  const Spectrum mu({0.7, 0.3});
  const int n = 20;
  ChannelRun run = forward_run(mu, LocalParams{{0.3}, {{0.4, 0.2}}, {}}, n, 16, 12);
  const DistanceReport base = cq_distance(run.fwd.state, run.limit, run.fwd.all_weights, mu, n);

  ClassicalQuantumState shuffled = run.fwd.state;
  std::reverse(shuffled.cells.begin(), shuffled.cells.end());
  std::rotate(shuffled.cells.begin(), shuffled.cells.begin() + 2, shuffled.cells.end());
  EXPECT_NEAR(cq_distance(shuffled, run.limit, run.fwd.all_weights, mu, n).total, base.total, 1e-10);

  const MatrixXc W = random_unitary(static_cast<int>(run.limit.quantum.rows()), 42);
  ClassicalQuantumState rotated = run.fwd.state;
  for (auto& c : rotated.cells) c.quantum = W * c.quantum * W.adjoint();
  LimitState L = run.limit;
  L.quantum = W * L.quantum * W.adjoint();
  EXPECT_NEAR(cq_distance(rotated, L, run.fwd.all_weights, mu, n).total, base.total, 1e-7);
}

TEST(SnDistance, IdenticalStatesGiveZero) {
  const Spectrum mu({0.7, 0.3});
  const ChannelRun run = forward_run(mu, LocalParams{{0.2}, {{0.1, 0.1}}, {}}, 10, 12, 10);
  BlockFormState same;
  for (std::size_t k = 0; k < run.fwd.block_states.size(); ++k)
    same.blocks.push_back({run.fwd.block_states[k].shape, run.fwd.state.cells[k].weight, run.fwd.block_states[k].matrix});
  EXPECT_NEAR(sn_distance(same, run.fwd).exact_part, 0.0, 1e-12);
}

// The reconstructed block state ⊕ w_λ S̃_λ(Φ) ⊗ I/M lifted to the full tensor
// space: embed one copy with normalized Young vectors, then twirl over S_n.
TEST(SnDistance, MatchesFullTensorOracle) {
  const Spectrum mu({0.7, 0.3});
  const LocalParams theta{{0.4}, {{0.5, 0.3}}, {}};
  for (int n = 2; n <= 6; ++n) {
    ChannelOptions opts;
    opts.basis_cutoff = n;
    opts.alpha = 0.99;
    opts.weight_floor = 0.0;
    const FockSpec fock(2, n + 2);
    const ForwardResult fwd = apply_T_n(mu, theta, n, fock, opts);
    const LimitState L = limit_state(mu, theta, fock, DisplacementConvention::Unit);
    const BlockFormState recon = apply_S_n(L, mu, n, fwd.isometries);
    const SnReport rep = sn_distance(recon, fwd);
    ASSERT_NEAR(rep.unresolved_bound, 0.0, 1e-15) << n;

    const std::int64_t D = std::int64_t{1} << n;
    MatrixXc R = MatrixXc::Zero(D, D);
    for (const auto& b : recon.blocks) {
      const auto it = std::find_if(fwd.bases.begin(), fwd.bases.end(), [&](const BlockBasis& x) { return x.shape() == b.shape; });
      ASSERT_NE(it, fwd.bases.end());
      MatrixXc Y(D, it->size());
      for (int k = 0; k < it->size(); ++k)
        Y.col(k) = oracle::young_vector(b.shape, oracle::canonical_filling(b.shape, it->label(k)), 2).normalized().cast<Complex>();
      const MatrixXc E = Y * it->orthonormalizer().cast<Complex>();
      R += b.weight * oracle::symmetric_twirl(E * b.rho * E.adjoint(), 2, n);
    }
    const MatrixXc target = oracle::tensor_power(rho_theta(mu, theta, n), n);
    EXPECT_NEAR(trace_norm_hermitian(R - target), rep.total, 1e-8) << n;
  }
}

TEST(SnDistance, DecreasesWithN) {
  const Spectrum mu({0.7, 0.3});
  const LocalParams theta{{0.5}, {{0.5, 0.3}}, {}};
  double prev = 2.0;
  for (int n : {16, 64, 256}) {
    const ChannelRun run = forward_run(mu, theta, n, 30, 20);
    const double v = sn_distance(apply_S_n(run.limit, mu, n, run.fwd.isometries), run.fwd).total;
    EXPECT_LT(v, prev) << n;
    prev = v;
  }
}
