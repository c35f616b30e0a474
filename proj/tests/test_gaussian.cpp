#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qlan/errors.hpp"
#include "qlan/gaussian.hpp"
#include "qlan/models.hpp"

using namespace qlan;

namespace {

// Independent closed forms.
Complex expected_characteristic(double beta, Complex mean, Complex zp) {
  const double width = std::norm(zp) / (2.0 * std::tanh(beta / 2.0));
  return std::exp(Complex(-width, 0.0) + zp * std::conj(mean) - std::conj(zp) * mean);
}

double coherent_coeff_abs(Complex z, int m) {
  return std::exp(-0.5 * std::norm(z) + m * std::log(std::abs(z)) - 0.5 * std::lgamma(m + 1.0));
}

}  // namespace

TEST(FockSpec, IndexAndLabel) {
  const FockSpec f(3, 4);
  EXPECT_EQ(f.modes(), 3);
  EXPECT_EQ(f.dim(), 125);
  for (std::int64_t i = 0; i < f.dim(); ++i) EXPECT_EQ(f.index_of(f.label(i)), i);
  EXPECT_EQ(f.index_of(MVector(3, {1, 0, 0})), 25);
  EXPECT_EQ(f.index_of(MVector(3, {0, 0, 5})), -1);
  EXPECT_THROW(FockSpec(3, 0), InvalidArgument);
  EXPECT_THROW(FockSpec(4, 30), ResourceLimit);
}

TEST(Conventions, ParseAndAmplitude) {
  for (auto c : {DisplacementConvention::Unit, DisplacementConvention::Sqrt2, DisplacementConvention::Two})
    EXPECT_EQ(parse_displacement_convention(to_string(c)), c);
  EXPECT_THROW(parse_displacement_convention("half"), InvalidArgument);
  const Spectrum mu({0.7, 0.3});
  const Complex z(0.5, 0.3);
  EXPECT_LT(std::abs(mode_amplitude(mu, 0, 1, z, DisplacementConvention::Unit) - z), 1e-15);
  EXPECT_LT(std::abs(mode_amplitude(mu, 0, 1, z, DisplacementConvention::Sqrt2) - z / std::sqrt(0.8)), 1e-15);
  EXPECT_LT(std::abs(mode_amplitude(mu, 0, 1, z, DisplacementConvention::Two) - z / (2.0 * std::sqrt(0.4))), 1e-15);
}

TEST(Thermal, Examples) {
  const auto cold = thermal(50.0, 10);
  EXPECT_NEAR(cold.rho(0, 0).real(), 1.0, 1e-20);
  for (int k = 1; k <= 10; ++k) EXPECT_LT(cold.rho(k, k).real(), 1e-20);

  const auto t = thermal(std::log(2.0), 20);
  const double norm = 1.0 - std::pow(0.5, 21);
  EXPECT_NEAR(t.rho(0, 0).real(), 0.5 / norm, 1e-14);
  for (int k = 0; k < 20; ++k) EXPECT_NEAR(t.rho(k + 1, k + 1).real() / t.rho(k, k).real(), 0.5, 1e-13);
  EXPECT_NEAR(t.raw_tail, std::pow(0.5, 21), 1e-16);

  const double beta = std::log(0.7 / 0.3);
  const auto big = thermal(beta, 80);
  double mean = 0.0;
  for (int k = 0; k <= 80; ++k) mean += k * big.rho(k, k).real();
  EXPECT_NEAR(mean, 1.0 / (std::exp(beta) - 1.0), 1e-10);
  EXPECT_THROW(thermal(0.0, 5), InvalidArgument);
  EXPECT_THROW(thermal(-1.0, 5), InvalidArgument);
}

TEST(Weyl, VacuumImageAndUnitarity) {
  EXPECT_LT((weyl(0.0, 10).W - MatrixXc::Identity(11, 11)).norm(), 1e-15);
  for (Complex z : {Complex(0.3, 0.1), Complex(-1.2, 0.7), Complex(0.0, 2.0), Complex(1.5, -1.3)}) {
    const MatrixXc W = weyl(z, 40).W;
    for (int m = 0; m <= 20; ++m) {
      const Complex expect = coherent_coeff_abs(z, m) * std::polar(1.0, m * std::arg(z));
      EXPECT_LT(std::abs(W(m, 0) - expect), 1e-8) << z << " m=" << m;
    }
    EXPECT_LT((W.col(0) - coherent_vector(z, 40)).norm(), 1e-8);
  }
  const MatrixXc W1 = weyl(Complex(std::cos(0.4), std::sin(0.4)), 40).W;
  EXPECT_LT((W1.adjoint() * W1 - MatrixXc::Identity(41, 41)).norm(), 1e-10);
  EXPECT_FALSE(weyl(Complex(1.0, 0.0), 40).truncation_flag);
  EXPECT_TRUE(weyl(Complex(4.0, 0.0), 40).truncation_flag);
}

TEST(DisplacedThermal, MeanAndZeroShift) {
  const double beta = std::log(0.7 / 0.3);
  EXPECT_LT((displaced_thermal(beta, 0.0, 30).rho - thermal(beta, 30).rho).norm(), 1e-14);
  for (double b : {0.5, beta, 2.0}) {
    const Complex z(0.6, -0.4);
    const auto s = displaced_thermal(b, z, 60);
    EXPECT_LT(std::abs(mode_mean(s.rho) + z), 1e-8) << b;
    EXPECT_NEAR(s.rho.trace().real(), 1.0, 1e-12);
    EXPECT_LT((s.rho - s.rho.adjoint()).norm(), 1e-13);
    Eigen::SelfAdjointEigenSolver<MatrixXc> es(s.rho);
    EXPECT_GT(es.eigenvalues().minCoeff(), -1e-12);
  }
}

TEST(DisplacedThermal, CharacteristicFunction) {
  const double beta = std::log(0.7 / 0.3);
  for (Complex z : {Complex(0.0, 0.0), Complex(0.5, 0.3), Complex(-1.0, 0.8)}) {
    const auto s = displaced_thermal(beta, z, 60);
    for (Complex zp : {Complex(0.3, 0.0), Complex(0.0, -1.0), Complex(1.2, 0.9), Complex(-1.4, 1.4), Complex(2.0, 0.0)}) {
      const Complex got = characteristic_function(s.rho, zp);
      EXPECT_LT(std::abs(got - expected_characteristic(beta, -z, zp)), 1e-6) << z << " " << zp;
      EXPECT_LT(std::abs(displaced_thermal_characteristic(beta, -z, zp) - expected_characteristic(beta, -z, zp)), 1e-14);
    }
  }
}

TEST(DisplacedThermal, SmearingIdentity) {
  for (double beta : {std::log(0.7 / 0.3), 1.5}) {
    const int N = 20;
    const MatrixXc S = smeared_coherent_states(beta, 60);
    const MatrixXc T = thermal(beta, 60).rho;
    EXPECT_LT((S.topLeftCorner(N + 1, N + 1) - T.topLeftCorner(N + 1, N + 1)).cwiseAbs().maxCoeff(), 1e-4);
  }
}

TEST(LimitState, ProductStructure) {
  const Spectrum mu2({0.7, 0.3});
  const FockSpec f2(2, 30);
  const LimitState zero = limit_state(mu2, LocalParams::zero(2), f2, DisplacementConvention::Unit);
  EXPECT_LT((zero.quantum - thermal(std::log(0.7 / 0.3), 30).rho).norm(), 1e-14);
  EXPECT_NEAR(zero.covariance(0, 0), 0.21, 1e-15);
  EXPECT_NEAR(zero.mean(0), 0.0, 0.0);
  EXPECT_NEAR(zero.betas[0], std::log(0.7 / 0.3), 1e-15);

  const Spectrum mu3({0.5, 0.3, 0.2});
  const FockSpec f3(3, 8);
  const std::vector<Complex> zeta{{0.3, 0.2}, {-0.1, 0.4}, {0.2, -0.3}};
  const LimitState L = limit_state(mu3, LocalParams{{0.1, -0.2}, zeta, {}}, f3, DisplacementConvention::Unit);
  EXPECT_LT((L.covariance - covariance(mu3)).norm(), 1e-15);
  EXPECT_NEAR(L.mean(0), 0.1, 1e-15);
  EXPECT_NEAR(L.quantum.trace().real(), 1.0, 1e-12);
  const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (int p = 0; p < 3; ++p) {
    const double beta = std::log(mu3[pairs[p][0]] / mu3[pairs[p][1]]);
    const MatrixXc one = displaced_thermal(beta, -L.amplitudes[static_cast<std::size_t>(p)], 8).rho;
    EXPECT_LT((mode_marginal(L.quantum, f3, p) - one).norm(), 1e-10) << p;
    EXPECT_LT(std::abs(L.amplitudes[static_cast<std::size_t>(p)] - zeta[static_cast<std::size_t>(p)]), 1e-15);
    const MatrixXc wide = displaced_thermal(beta, -L.amplitudes[static_cast<std::size_t>(p)], 80).rho;
    EXPECT_LT(std::abs(mode_mean(wide) - zeta[static_cast<std::size_t>(p)]), 1e-6);
  }
  EXPECT_GT(L.tail_budget, 0.0);
  EXPECT_THROW(limit_state(mu3, LocalParams::zero(2), f3, DisplacementConvention::Unit), InvalidArgument);
}
