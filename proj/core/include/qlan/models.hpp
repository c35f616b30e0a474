#pragma once

// The local model ρ_θ around Diag(μ) and its block decomposition data.

#include <optional>
#include <string>
#include <vector>

#include "qlan/linalg.hpp"
#include "qlan/schur_weyl.hpp"
#include "qlan/tableaux.hpp"

namespace qlan {

class Spectrum {
 public:
  Spectrum() = default;
  /// Throws DegenerateSpectrum unless strictly decreasing, InvalidArgument
  /// unless positive with unit sum (1e-12).
  explicit Spectrum(std::vector<double> mu);

  int d() const { return static_cast<int>(mu_.size()); }
  const std::vector<double>& mu() const { return mu_; }
  double operator[](int i) const { return mu_[static_cast<std::size_t>(i)]; }
  /// min(μ_i - μ_{i+1}, μ_d).
  double gap() const;
  MatrixXc density() const;

 private:
  std::vector<double> mu_;
};

struct LocalParams {
  std::vector<double> u;      // length d-1
  std::vector<Complex> zeta;  // one per pair, lexicographic
  std::vector<double> xi;     // length d-1, may be empty

  static LocalParams zero(int d);
  /// Throws InvalidArgument on wrong lengths and ParameterOutOfRange when the
  /// perturbed eigenvalues leave (0,1) or stop decreasing at this n.
  void validate(const Spectrum& mu, int n) const;
  bool has_rotation() const;
};

/// μ_i + u_i/√n for i < d, μ_d - Σu/√n.
std::vector<double> perturbed_spectrum(const Spectrum& mu, const std::vector<double>& u, int n);

struct SuGenerators {
  std::vector<MatrixXc> H;   // H_j = E_jj - E_{j+1,j+1}
  std::vector<MatrixXc> Tr;  // T_{j,k} = iE_jk - iE_kj, per pair
  std::vector<MatrixXc> Ti;  // T_{k,j} = E_jk + E_kj, per pair
  std::vector<MatrixXc> all() const;
};

SuGenerators su_generators(int d);

/// exp(i[Σ ξ_i H_i + Σ (Re ζ_jk T_jk + Im ζ_jk T_kj)/√(μ_j - μ_k)]), all
/// arguments divided by scale when given.
MatrixXc rotation_unitary(const Spectrum& mu, const std::vector<Complex>& zeta, const std::vector<double>& xi = {},
                          std::optional<double> scale = std::nullopt);

enum class Family { Unitary, Tilde };

/// ρ_{θ/√n} in the chosen parametrization.
MatrixXc rho_theta(const Spectrum& mu, const LocalParams& theta, int n, Family family = Family::Unitary);

/// s_λ(x) / x^λ from the bialternant formula; x strictly decreasing and positive.
double schur_ratio(const YoungDiagram& shape, const std::vector<double>& x);

/// log c_n^λ = log[multinomial(n; λ) prod_l λ_l! prod_{k>l}(λ_l - λ_k + k - l) / (λ_l + d - l)!].
double log_block_constant(const YoungDiagram& shape, int n, int d);

double log_block_weight(const YoungDiagram& shape, const Spectrum& mu, const std::vector<double>& u, int n);
/// p_λ^{u,n}; does not depend on ζ.
double block_weight(const YoungDiagram& shape, const Spectrum& mu, const std::vector<double>& u, int n);
/// Literal sum over m fitting λ of the eigenvalue products, times c_n^λ.
double block_weight_enumerated(const YoungDiagram& shape, const Spectrum& mu, const std::vector<double>& u, int n);

/// Eigenvalue of ρ_λ^{0,u,n} on |m,λ⟩: prod (x_j/x_i)^{m_ij} / (s_λ/x^λ).
double block_eigenvalue(const YoungDiagram& shape, const MVector& m, const std::vector<double>& x);

/// ρ_λ^{θ,n} on the basis span in orthonormal coordinates, renormalized;
/// truncation_defect holds the lost trace. Throws TruncationError above max_loss.
BlockOperator block_state(const BlockBasis& basis, const Spectrum& mu, const LocalParams& theta, int n,
                          double max_loss = 1.0);

MatrixXd fisher_info(const Spectrum& mu);
MatrixXd covariance(const Spectrum& mu);

double multinomial_pmf(const std::vector<int>& counts, const std::vector<double>& p);
/// P[|Y - np| >= x] for Y ~ Binomial(n, p), exactly.
double binomial_two_sided_tail(int n, double p, double x);
double hoeffding_bound(int n, double x);

}  // namespace qlan
