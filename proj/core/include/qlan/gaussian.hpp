#pragma once

// Truncated Fock-space states of the Gaussian limit model.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qlan/linalg.hpp"
#include "qlan/models.hpp"
#include "qlan/tableaux.hpp"

namespace qlan {

inline constexpr std::int64_t kDefaultFockLimit = 20'000;

/// Multimode Fock space with one mode per pair (j,k), j<k, each truncated to
/// number states 0..N. Mode 0 is the most significant index.
class FockSpec {
 public:
  FockSpec() = default;
  FockSpec(int d, int cutoff, std::int64_t limit = kDefaultFockLimit);

  int d() const { return d_; }
  int cutoff() const { return cutoff_; }
  int modes() const { return num_pairs(d_); }
  std::int64_t dim() const { return dim_; }
  /// Index of the number state |m⟩; -1 when some m_p exceeds the cutoff.
  std::int64_t index_of(const MVector& m) const;
  MVector label(std::int64_t index) const;

 private:
  int d_ = 0;
  int cutoff_ = 0;
  std::int64_t dim_ = 0;
};

enum class DisplacementConvention { Unit, Sqrt2, Two };

std::string to_string(DisplacementConvention c);
DisplacementConvention parse_displacement_convention(const std::string& s);

/// Coherent amplitude of mode (j,k) for local parameter ζ_jk: ζ (unit),
/// ζ/√(2(μ_j-μ_k)) (sqrt2) or ζ/(2√(μ_j-μ_k)) (two).
Complex mode_amplitude(const Spectrum& mu, int j, int k, Complex zeta, DisplacementConvention c);

struct SingleModeState {
  MatrixXc rho;
  double raw_tail = 0.0;  // mass beyond the cutoff before renormalization
};

/// Geometric mixture (1-e^{-β}) e^{-kβ}, k = 0..N, renormalized.
SingleModeState thermal(double beta, int N);

struct WeylOperator {
  MatrixXc W;
  bool truncation_flag = false;  // |z|^2 > N/4
};

/// exp(z a† - z̄ a) of the truncated generator.
WeylOperator weyl(Complex z, int N);

/// W(z)* Φ_β W(z); its mean ⟨a⟩ is -z.
SingleModeState displaced_thermal(double beta, Complex z, int N);

/// e^{-|z|²/2} z^m / √(m!), m = 0..N.
VectorXc coherent_vector(Complex z, int N);

/// Tr[ρ W(z')].
Complex characteristic_function(const MatrixXc& rho, Complex zprime);
/// exp(-|z'|²/(2 tanh(β/2)) - 2i Im(conj(z') w)) for the displaced thermal state with mean w.
Complex displaced_thermal_characteristic(double beta, Complex mean, Complex zprime);

/// (e^β-1)/π ∫ e^{-(e^β-1)|z|²} |z⟩⟨z| d²z in polar coordinates: composite
/// Gauss-Legendre panels in r, trapezoid rule in the angle.
MatrixXc smeared_coherent_states(double beta, int N, int radial_panels = 40, int angular_nodes = 64);

/// Mean ⟨a⟩ of a single-mode state.
Complex mode_mean(const MatrixXc& rho);

struct LimitState {
  VectorXd mean;        // u
  MatrixXd covariance;  // V(μ)
  FockSpec fock;
  MatrixXc quantum;     // Φ^ζ on the truncated Fock space
  double tail_budget = 0.0;
  std::vector<Complex> amplitudes;  // per mode
  std::vector<double> betas;        // per mode
};

/// ⊗_{j<k} displaced thermal states with β_jk = ln(μ_j/μ_k) and mean equal to the mode amplitude.
LimitState limit_quantum_state(const Spectrum& mu, const std::vector<Complex>& zeta, const FockSpec& fock,
                               DisplacementConvention c);
LimitState limit_state(const Spectrum& mu, const LocalParams& theta, const FockSpec& fock, DisplacementConvention c);

/// Reduced state of one mode of a multimode density matrix.
MatrixXc mode_marginal(const MatrixXc& rho, const FockSpec& fock, int mode);

}  // namespace qlan
