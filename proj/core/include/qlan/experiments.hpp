#pragma once

// Sweeps over n, lemma verifiers and decomposition dumps built on the model,
// channel and metric layers. Serialization of the results lives in the tool.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qlan/channels.hpp"
#include "qlan/gaussian.hpp"
#include "qlan/metrics.hpp"
#include "qlan/models.hpp"

namespace qlan {

struct ExperimentConfig {
  int d = 2;
  std::vector<double> mu{0.7, 0.3};
  std::vector<double> u{0.5};
  std::vector<Complex> zeta{Complex(0.5, 0.3)};
  std::vector<double> xi;
  std::vector<int> n_list{8, 16, 32, 64};

  double alpha = 0.6;
  double beta = 0.1;
  double gamma = 0.24;
  double eta = 0.2;

  std::optional<int> fock_cutoff;   // default 30 for d = 2, 12 for d = 3
  std::optional<int> basis_cutoff;  // default from the spectrum and the amplitudes
  std::int64_t orbit_budget = kDefaultOrbitBudget;
  std::int64_t state_budget = kDefaultPairingStateBudget;
  DisplacementConvention displacement = DisplacementConvention::Unit;
  bool allow_out_of_range = false;

  std::optional<Complex> z_extra;   // second displacement for lgrouplimit

  Spectrum spectrum() const;
  LocalParams theta() const;
  int resolved_fock_cutoff() const;
  int resolved_basis_cutoff() const;

  /// Violated hypotheses of the main theorem for this config; empty when all hold.
  std::vector<std::string> range_violations() const;
  /// Throws InvalidArgument on malformed input and ParameterOutOfRange on
  /// violated hypotheses unless allow_out_of_range is set.
  void validate() const;
};

struct ConvergeRow {
  int n = 0;
  DistanceReport cq;
  SnReport sn;
  double trunc_budget = 0.0;
};

struct ConvergeResult {
  std::vector<ConvergeRow> rows;
  double fitted_rate = 0.0;     // slope of log total against log n
  double fitted_rate_sn = 0.0;
  std::vector<std::string> overrides;
};

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Worker count from QLAN_THREADS, else the available parallelism.
int worker_count();

ConvergeRow converge_point(const ExperimentConfig& cfg, int n);
ConvergeResult run_converge(const ExperimentConfig& cfg);

/// n,total,classical,quantum_sup,atypical,sn_total,trunc_budget
void write_converge_csv(std::ostream& os, const ConvergeResult& r);

/// Most probable diagram of n boxes under p^{u,n}.
YoungDiagram most_probable_diagram(const Spectrum& mu, const std::vector<double>& u, int n);

/// Diagram with rows nμ_i rounded by largest remainders.
YoungDiagram proportional_diagram(const Spectrum& mu, int n);

/// 1 - |⟨ζ'|V_λ U_λ(ζ)|0,λ⟩|² with ζ' the coherent amplitudes of the convention.
double displacement_error(const YoungDiagram& shape, const Spectrum& mu, const std::vector<Complex>& zeta, int n,
                          int basis_cutoff, const FockSpec& fock, DisplacementConvention c);

/// ||Δ^{ζ+z}(|0,λ⟩⟨0,λ|) - Δ^ζ Δ^z(|0,λ⟩⟨0,λ|)||_1, computed with the exact orbit sum for the
/// vacuum overlap of π_λ(U(ζ+z)* U(ζ) U(z)).
double group_limit_error(const YoungDiagram& shape, const Spectrum& mu, const std::vector<Complex>& zeta,
                         const std::vector<Complex>& z, int n);

/// ||Φ^0 - V_λ ρ_λ^{0,u,n} V_λ*||_1 and the truncation budget of that block.
struct ThermalBlockError {
  YoungDiagram shape;
  double distance = 0.0;
  double budget = 0.0;
};
ThermalBlockError thermal_block_error(const Spectrum& mu, const std::vector<double>& u, int n, int basis_cutoff,
                                      const FockSpec& fock);

struct Measurement {
  std::string name;
  std::vector<std::pair<std::string, double>> values;
};

struct VerifyReport {
  std::string lemma;
  bool passed = false;
  std::string detail;
  std::vector<Measurement> measurements;
  std::vector<std::string> overrides;
};

/// Lemma names: lclassical, lconcentration, len0, ldisplacement, lgrouplimit,
/// non-orth, dims, formdet, calibrate.
const std::vector<std::string>& verifier_names();
VerifyReport run_verify(const std::string& lemma, const ExperimentConfig& cfg);

struct DecomposedBlock {
  YoungDiagram shape;
  double weight = 0.0;
  bool typical = false;
  BigInt dimension;
  std::vector<double> spectrum;  // decreasing; only labels of small weight when truncated
  bool spectrum_truncated = false;
};

struct Decomposition {
  int n = 0;
  std::vector<DecomposedBlock> blocks;
  double total_weight = 0.0;
  double atypical_mass = 0.0;
};

inline constexpr std::size_t kMaxSpectrumEntries = 4096;

Decomposition run_decompose(const ExperimentConfig& cfg, int n);

}  // namespace qlan
