#pragma once

// Trace-norm distances between the finite-n model, its channel images and the
// Gaussian limit.

#include <map>
#include <string>
#include <vector>

#include "qlan/channels.hpp"
#include "qlan/gaussian.hpp"
#include "qlan/linalg.hpp"
#include "qlan/quadrature.hpp"

namespace qlan {

double trace_distance(const MatrixXc& A, const MatrixXc& B);

struct BoxDensity {
  Box box;
  double height = 0.0;
};

/// Σ_boxes ∫ |height - N(x)| dx plus the Gaussian mass outside all boxes.
/// Throws InvalidArgument when two boxes overlap.
double classical_l1(const std::vector<BoxDensity>& boxes, const VectorXd& mean, const MatrixXd& cov,
                    double tol_per_box = 1e-6);

struct DistanceReport {
  double total = 0.0;
  double classical = 0.0;
  double quantum_sup = 0.0;   // max over typical cells of ||Φ - φ_λ||_1
  double atypical = 0.0;      // Σ p_λ over non-typical diagrams
  double outside_mass = 0.0;  // Gaussian mass on no cell
  double truncation_budget = 0.0;
  std::map<std::string, double> extra;

  /// classical + quantum_sup + 2 atypical: the triangle-inequality bound on total.
  double components_sum() const { return classical + quantum_sup + 2.0 * atypical; }
};

struct CqOptions {
  double tol_per_box = 1e-6;
  int order = 8;
  int max_depth = 6;
};

/// ∫ ||N(x) Φ - Σ_λ b_λ(x) φ_λ||_1 dx, evaluated box by box.
DistanceReport cq_distance(const ClassicalQuantumState& out, const LimitState& limit,
                           const std::vector<std::pair<YoungDiagram, double>>& all_weights, const Spectrum& mu, int n,
                           const CqOptions& opts = {});

struct SnReport {
  double total = 0.0;         // exact part + bound for unresolved blocks
  double exact_part = 0.0;
  double unresolved_bound = 0.0;
  double truncation_budget = 0.0;
};

/// Σ_λ || w_λ S̃_λ(Φ) - p_λ ρ_λ ||_1; blocks without a state on either side
/// contribute w_λ + p_λ.
SnReport sn_distance(const BlockFormState& recon, const ForwardResult& forward);

}  // namespace qlan
