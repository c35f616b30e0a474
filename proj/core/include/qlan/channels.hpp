#pragma once

// The forward channel T_n (blocks -> classical-quantum Gaussian side) and the
// reverse channel S_n, with their classical kernels and block isometries.

#include <cstdint>
#include <optional>
#include <vector>

#include "qlan/gaussian.hpp"
#include "qlan/linalg.hpp"
#include "qlan/models.hpp"
#include "qlan/quadrature.hpp"
#include "qlan/schur_weyl.hpp"
#include "qlan/tableaux.hpp"

namespace qlan {

struct BoxKernel {
  YoungDiagram shape;
  Box box;        // {x : |√n x_i + nμ_i - λ_i| <= 1/2, i < d}
  double height;  // n^{(d-1)/2}
};

BoxKernel tau_kernel(const YoungDiagram& shape, int n, const Spectrum& mu);

/// The λ whose box contains x (strict inequalities), or (n) when that lattice
/// point is not a valid diagram.
YoungDiagram sigma_kernel(const std::vector<double>& x, int n, const Spectrum& mu);

struct BlockIsometry {
  YoungDiagram shape;
  MatrixXc V;              // Fock dimension x basis size
  double scale = 1.0;      // s = max(1, largest Gram eigenvalue)
  int completion_rank = 0;
  VectorXc vacuum;         // |0,λ⟩ in orthonormal coordinates
  double vacuum_overlap = 1.0;  // |⟨0|V|0,λ⟩|
};

/// V = A + R with A = s^{-1/2} Σ_m |m⟩⟨m,λ| and R completing A to an isometry on
/// the first Fock number states outside the image of A.
BlockIsometry build_isometry(const BlockBasis& basis, const FockSpec& fock);

/// V ρ V*.
MatrixXc apply_isometry(const BlockIsometry& iso, const MatrixXc& rho);
/// V* φ V + (1 - Tr[V* φ V]) |0,λ⟩⟨0,λ|.
MatrixXc reverse_block_map(const BlockIsometry& iso, const MatrixXc& phi);

struct CqCell {
  YoungDiagram shape;
  Box box;
  double weight = 0.0;  // p_λ
  double height = 0.0;  // p_λ n^{(d-1)/2}
  bool typical = false;
  double truncation_loss = 0.0;
  MatrixXc quantum;     // V ρ_λ V*
};

struct ClassicalQuantumState {
  std::vector<CqCell> cells;
  double neglected_mass = 0.0;      // Σ p_λ over diagrams without a cell
  double atypical_mass = 0.0;       // Σ p_λ over all non-typical diagrams
  double truncation_budget = 0.0;   // Σ p_λ · basis truncation loss
  double classical_mass() const;
};

struct ChannelOptions {
  int basis_cutoff = 20;
  double alpha = 0.6;
  double weight_floor = 1e-10;       // diagrams below this get no quantum cell
  double max_neglected = 1e-3;       // coverage error above this
  double max_truncation = 0.05;      // per-block trace loss allowed
  std::int64_t state_budget = kDefaultPairingStateBudget;
};

struct ForwardResult {
  ClassicalQuantumState state;
  std::vector<BlockBasis> bases;
  std::vector<BlockIsometry> isometries;
  std::vector<BlockOperator> block_states;
  /// All diagrams of n with their weights, in enumeration order.
  std::vector<std::pair<YoungDiagram, double>> all_weights;
};

/// T_n applied to ρ^{θ,n}.
ForwardResult apply_T_n(const Spectrum& mu, const LocalParams& theta, int n, const FockSpec& fock,
                        const ChannelOptions& opts);

/// Mass of N(mean, cov) on a box.
double gaussian_box_mass(const VectorXd& mean, const MatrixXd& cov, const Box& box);
double gaussian_density(const VectorXd& mean, const MatrixXd& cov, const std::vector<double>& x);

struct BlockFormState {
  struct Block {
    YoungDiagram shape;
    double weight = 0.0;
    MatrixXc rho;  // empty when no isometry is available for this block
  };
  std::vector<Block> blocks;
  double unresolved_mass = 0.0;  // weight of blocks without an isometry
};

/// σ^n pushforward of the classical part (with the fallback to (n)) and S̃_λ
/// on the quantum part for every block that has an isometry.
BlockFormState apply_S_n(const LimitState& limit, const Spectrum& mu, int n, const std::vector<BlockIsometry>& isos);

}  // namespace qlan
