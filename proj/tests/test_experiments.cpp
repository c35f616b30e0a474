#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "qlan/errors.hpp"
#include "qlan/experiments.hpp"

using namespace qlan;

TEST(Fit, LogLogSlope) {
  const std::vector<double> n{8, 16, 32, 64};
  std::vector<double> y;
  for (double x : n) y.push_back(3.0 * std::pow(x, -0.5));
  EXPECT_NEAR(loglog_slope(n, y), -0.5, 1e-12);
  EXPECT_THROW(loglog_slope({8}, {1.0}), InvalidArgument);
}

TEST(Diagrams, ProportionalAndMostProbable) {
  const Spectrum mu({0.5, 0.3, 0.2});
  EXPECT_EQ(proportional_diagram(mu, 13), YoungDiagram({6, 4, 3}));
  EXPECT_EQ(proportional_diagram(mu, 26), YoungDiagram({13, 8, 5}));
  EXPECT_EQ(proportional_diagram(mu, 52), YoungDiagram({26, 16, 10}));
  EXPECT_EQ(most_probable_diagram(Spectrum({0.75, 0.25}), {0.0}, 2), YoungDiagram({2}));
  const YoungDiagram s = most_probable_diagram(Spectrum({0.7, 0.3}), {0.0}, 100);
  EXPECT_NEAR(s.row(0), 70, 3);
}

TEST(Config, RangeChecks) {
  ExperimentConfig cfg;
  EXPECT_TRUE(cfg.range_violations().empty());
  EXPECT_NO_THROW(cfg.validate());
  cfg.beta = 0.2;
  EXPECT_FALSE(cfg.range_violations().empty());
  EXPECT_THROW(cfg.validate(), ParameterOutOfRange);
  cfg.allow_out_of_range = true;
  EXPECT_NO_THROW(cfg.validate());

  ExperimentConfig big;
  big.zeta = {Complex(3.0, 0.0)};
  EXPECT_FALSE(big.range_violations().empty());
  ExperimentConfig bad;
  bad.mu = {0.5, 0.5};
  EXPECT_THROW(bad.validate(), DegenerateSpectrum);
  EXPECT_EQ(ExperimentConfig{}.resolved_fock_cutoff(), 30);
  EXPECT_EQ(ExperimentConfig{}.resolved_basis_cutoff(), 23);
}

TEST(Converge, RowsInOrderAndCsv) {
  setenv("QLAN_THREADS", "2", 1);
  EXPECT_EQ(worker_count(), 2);
  ExperimentConfig cfg;
  cfg.n_list = {16, 8};
  const ConvergeResult r = run_converge(cfg);
  unsetenv("QLAN_THREADS");
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_EQ(r.rows[0].n, 16);
  EXPECT_EQ(r.rows[1].n, 8);
  const ConvergeRow single = converge_point(cfg, 8);
  EXPECT_EQ(single.cq.total, r.rows[1].cq.total);
  std::ostringstream os;
  write_converge_csv(os, r);
  std::istringstream is(os.str());
  std::string header;
  std::getline(is, header);
  EXPECT_EQ(header, "n,total,classical,quantum_sup,atypical,sn_total,trunc_budget");
  int count = 0;
  for (std::string l; std::getline(is, l);) count += !l.empty();
  EXPECT_EQ(count, 2);
}

TEST(Verify, NamesAndDispatch) {
  EXPECT_EQ(verifier_names().size(), 10u);
  ExperimentConfig cfg;
  EXPECT_TRUE(run_verify("dims", cfg).passed);
  EXPECT_THROW(run_verify("nosuch", cfg), InvalidArgument);
  ExperimentConfig q;
  q.d = 2;
  q.mu = {0.7, 0.3};
  EXPECT_THROW(run_verify("non-orth", q), InvalidArgument);

  ExperimentConfig zero;
  zero.n_list = {25, 100};
  const VerifyReport at_zero = run_verify("ldisplacement", zero);
  EXPECT_TRUE(at_zero.passed) << at_zero.detail;
}

TEST(Decompose, MassAccounting) {
  ExperimentConfig cfg;
  cfg.mu = {0.75, 0.25};
  cfg.u = {0.0};
  const Decomposition dec = run_decompose(cfg, 2);
  ASSERT_EQ(dec.blocks.size(), 2u);
  EXPECT_NEAR(dec.blocks[0].weight, 0.8125, 1e-12);
  EXPECT_EQ(dec.blocks[0].dimension, 3);
  EXPECT_NEAR(dec.total_weight, 1.0, 1e-12);

  ExperimentConfig c3;
  c3.d = 3;
  c3.mu = {0.5, 0.3, 0.2};
  c3.u = {0.1, -0.1};
  c3.zeta = {0, 0, 0};
  const Decomposition d3 = run_decompose(c3, 8);
  double tot = 0.0;
  for (const auto& b : d3.blocks) {
    tot += b.weight;
    double s = 0.0;
    for (double e : b.spectrum) s += e;
    EXPECT_NEAR(s, 1.0, 1e-10) << b.shape.to_string();
  }
  EXPECT_NEAR(tot, 1.0, 1e-10);
}

TEST(BlockLimits, DisplacementAndThermal) {
  const Spectrum mu({0.7, 0.3});
  const std::vector<Complex> zeta{Complex(0.5, 0.3)};
  double prev = 1.0;
  for (int n : {25, 100}) {
    const YoungDiagram s = most_probable_diagram(mu, {0.5}, n);
    const double e = displacement_error(s, mu, zeta, n, 22, FockSpec(2, 30), DisplacementConvention::Unit);
    EXPECT_LT(e, prev);
    EXPECT_GE(e, 0.0);
    prev = e;
  }
  const ThermalBlockError t = thermal_block_error(mu, {0.5}, 25, 22, FockSpec(2, 30));
  EXPECT_GT(t.distance, 0.0);
  EXPECT_GE(t.budget, 0.0);
}
