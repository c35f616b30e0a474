#pragma once

// Irreducible blocks of U^{⊗n}: the non-orthogonal basis |m,λ⟩ built from
// Young symmetrizers, its Gram matrix, and operators expressed in the
// symmetric (Löwdin) orthonormal coordinates G^{-1/2}.

#include <cstdint>
#include <optional>
#include <vector>

#include "qlan/linalg.hpp"
#include "qlan/orbit_pairing.hpp"
#include "qlan/tableaux.hpp"

namespace qlan {

/// ⟨f_a| q_λ U^{⊗n} f_b⟩ = prod_c det U[t_a^c, t_b^c].
Complex minor_det_product(const MatrixXc& U, const Tableau& a, const Tableau& b);

/// The same quantity by expanding q_λ as a signed sum over column permutations.
Complex column_permutation_sum(const MatrixXc& U, const Tableau& a, const Tableau& b);

/// S_U(m, l) summed over admissible orbit elements. U defaults to the identity.
Complex symmetrizer_pairing(const YoungDiagram& shape, const MVector& m, const MVector& l,
                            const std::optional<MatrixXc>& U = std::nullopt,
                            std::int64_t state_budget = kDefaultPairingStateBudget);

/// S_U(m, l) by explicit enumeration of both orbits; orbit budget counts tableau pairs.
Complex symmetrizer_pairing_enumerated(const YoungDiagram& shape, const MVector& m, const MVector& l,
                                       const MatrixXc& U, std::int64_t budget = kDefaultOrbitBudget);

/// True iff m and l have the same total multiplicities on λ.
bool same_weight_class(const YoungDiagram& shape, const MVector& m, const MVector& l);

/// G[m,l] = ⟨m,λ|l,λ⟩; exact zeros across weight classes, unit diagonal.
MatrixXd gram_matrix(const YoungDiagram& shape, const std::vector<MVector>& basis,
                     std::int64_t state_budget = kDefaultPairingStateBudget);

/// G^{-1/2}; throws NearSingularGram when the smallest eigenvalue is <= 1e-12.
MatrixXd orthonormalize(const MatrixXd& G);

class BlockBasis {
 public:
  /// All m fitting λ with |m| <= cutoff (no cutoff: the full irrep).
  static BlockBasis build(const YoungDiagram& shape, int d, std::optional<int> cutoff,
                          std::int64_t state_budget = kDefaultPairingStateBudget);
  static BlockBasis from_list(const YoungDiagram& shape, int d, std::vector<MVector> basis,
                              std::int64_t state_budget = kDefaultPairingStateBudget);

  const YoungDiagram& shape() const { return shape_; }
  int d() const { return d_; }
  int size() const { return static_cast<int>(basis_.size()); }
  const std::vector<MVector>& basis() const { return basis_; }
  const MVector& label(int k) const { return basis_[static_cast<std::size_t>(k)]; }
  /// Position of m in the basis, -1 when absent.
  int index_of(const MVector& m) const;
  std::optional<int> cutoff() const { return cutoff_; }
  /// Whether the basis holds every m of the irrep.
  bool complete() const { return complete_; }

  const MatrixXd& gram() const { return gram_; }
  /// G^{-1/2}: column k holds the coefficients of the k-th orthonormal vector.
  const MatrixXd& orthonormalizer() const { return orth_; }
  /// G^{1/2}: column k holds the orthonormal coordinates of |label(k),λ⟩.
  const MatrixXd& sqrt_gram() const { return sqrt_gram_; }
  /// S_I(m,m), the squared norm of the unnormalized symmetrizer vector.
  const VectorXd& raw_norms() const { return raw_norms_; }
  /// Basis indices grouped by total multiplicities.
  const std::vector<std::vector<int>>& weight_classes() const { return classes_; }
  std::int64_t pairing_budget() const { return budget_; }

 private:
  YoungDiagram shape_;
  int d_ = 0;
  std::vector<MVector> basis_;
  std::optional<int> cutoff_;
  bool complete_ = false;
  MatrixXd gram_, orth_, sqrt_gram_;
  VectorXd raw_norms_;
  std::vector<std::vector<int>> classes_;
  std::int64_t budget_ = kDefaultPairingStateBudget;
};

/// ⟨m,λ| π_λ(U) |0,λ⟩.
Complex coherent_overlap(const YoungDiagram& shape, const MVector& m, const MatrixXc& U,
                         std::int64_t state_budget = kDefaultPairingStateBudget);

/// Orthonormal coordinates of the projection of π_λ(U)|0,λ⟩ onto the span of the basis.
VectorXc coherent_vector(const BlockBasis& basis, const MatrixXc& U);

struct BlockOperator {
  YoungDiagram shape;
  MatrixXc matrix;
  double truncation_defect = 0.0;
};

/// π_λ(U) compressed to the basis span, in orthonormal coordinates. Throws
/// TruncationError when the defect 1 - min column norm² exceeds max_defect.
BlockOperator block_unitary(const BlockBasis& basis, const MatrixXc& U, double max_defect = 1.0);

struct BruteBlock {
  YoungDiagram shape;
  double weight = 0.0;
  std::vector<double> spectrum;  // normalized, decreasing
  int dimension = 0;
  BigInt multiplicity;
};

inline constexpr std::int64_t kDefaultTensorLimit = 6561;

/// Block weights and spectra of ρ^{⊗n} from explicit Young symmetrizers on
/// the full tensor space. Throws ResourceLimit when d^n exceeds limit.
std::vector<BruteBlock> brute_force_blocks(const MatrixXc& rho, int n, std::int64_t limit = kDefaultTensorLimit);

}  // namespace qlan
