#pragma once

// Young diagram and tableau combinatorics.
//
// Conventions: rows, columns and tableau entries are 0-based in code. A
// tableau entry v stands for the basis vector f_{v+1}. Pairs (i, j) with
// i < j are ordered lexicographically: (0,1), (0,2), ..., (0,d-1), (1,2), ...

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qlan/linalg.hpp"

namespace qlan {

inline constexpr std::int64_t kDefaultOrbitBudget = 10'000'000;

class YoungDiagram {
 public:
  YoungDiagram() = default;
  /// Trailing zero rows are dropped; throws InvalidArgument if rows increase
  /// or are negative, or if nothing is left.
  explicit YoungDiagram(std::vector<int> rows);

  const std::vector<int>& rows() const { return rows_; }
  /// Length of row i, 0 beyond the last row.
  int row(int i) const { return i < num_rows() ? rows_[static_cast<std::size_t>(i)] : 0; }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  int size() const { return size_; }
  int num_columns() const { return rows_.empty() ? 0 : rows_.front(); }
  int column_length(int c) const;
  bool contains(int r, int c) const { return r >= 0 && c >= 0 && c < row(r); }

  std::string to_string() const;

  auto operator<=>(const YoungDiagram&) const = default;

 private:
  std::vector<int> rows_;
  int size_ = 0;
};

int num_pairs(int d);
int pair_index(int i, int j, int d);
std::pair<int, int> pair_of(int index, int d);

/// Off-diagonal occupation labels m_{i,j}, i < j.
class MVector {
 public:
  MVector() = default;
  explicit MVector(int d) : d_(d), e_(static_cast<std::size_t>(num_pairs(d)), 0) {}
  MVector(int d, std::vector<int> entries);

  int d() const { return d_; }
  int at(int i, int j) const { return e_[static_cast<std::size_t>(pair_index(i, j, d_))]; }
  void set(int i, int j, int v) { e_[static_cast<std::size_t>(pair_index(i, j, d_))] = v; }
  const std::vector<int>& entries() const { return e_; }
  std::vector<int>& entries() { return e_; }

  /// |m| = sum of all entries.
  int weight() const;
  /// Bricks placed on row i: sum_{j>i} m_{i,j}.
  int row_bricks(int i) const;
  /// Number of entries equal to v in the filling: λ_v - sum_{j>v} m_{v,j} + sum_{j<v} m_{j,v}.
  std::vector<int> total_multiplicities(const YoungDiagram& shape) const;

  std::string to_string() const;
  auto operator<=>(const MVector&) const = default;

 private:
  int d_ = 0;
  std::vector<int> e_;
};

class Tableau {
 public:
  Tableau() = default;
  Tableau(YoungDiagram shape, std::vector<std::vector<int>> rows);

  /// Parses "11233/23/3": rows separated by '/', one decimal digit per box,
  /// digits 1..9 mapped to entries 0..8.
  static Tableau parse(std::string_view text);

  const YoungDiagram& shape() const { return shape_; }
  const std::vector<std::vector<int>>& rows() const { return rows_; }
  int at(int r, int c) const { return rows_[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]; }
  void set(int r, int c, int v) { rows_[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = v; }
  /// Entries of column c from top to bottom (the function t^c).
  std::vector<int> column(int c) const;

  std::string to_string() const;
  auto operator<=>(const Tableau&) const = default;

 private:
  YoungDiagram shape_;
  std::vector<std::vector<int>> rows_;
};

/// Set of bricks (i, j) placed in one column together with its signature of
/// added and deleted entries.
struct ColumnModifier {
  std::vector<std::pair<int, int>> bricks;
  std::vector<int> added;
  std::vector<int> deleted;

  auto operator<=>(const ColumnModifier&) const = default;
};

/// Partitions of n into at most d parts, in descending lexicographic order.
std::vector<YoungDiagram> enumerate_diagrams(int n, int d);

int hook_length(const YoungDiagram& shape, int r, int c);

/// Dimension of the SU(d) irrep: product over boxes of (c - r + d) / hook.
BigInt dim_irrep(const YoungDiagram& shape, int d);

/// Dimension of the S(n) irrep: n! / product of hooks.
BigInt multiplicity(const YoungDiagram& shape, int n);

/// The same number from the multinomial-times-ratios form; an exact cross-check.
BigInt multiplicity_multinomial_form(const YoungDiagram& shape, int n, int d);

/// True iff the canonical row-sorted filling of m is semistandard (and the
/// row capacities are respected).
bool fits(const YoungDiagram& shape, const MVector& m);

/// All m whose canonical filling is semistandard, optionally with |m| <= max_weight.
/// Ordered by weight, then lexicographically by entries.
std::vector<MVector> enumerate_m_vectors(const YoungDiagram& shape, int d,
                                         std::optional<int> max_weight = std::nullopt);

/// Row i holds its own value first, then m_{i,j} copies of j in increasing j.
Tableau canonical_tableau(const YoungDiagram& shape, const MVector& m);
/// Inverse of canonical_tableau; rows must be non-decreasing with no entry below the row index.
MVector m_of(const Tableau& t, int d);

bool is_semistandard(const Tableau& t);
bool is_admissible(const Tableau& t);

/// Orbit size under row permutations: product over rows of multinomials.
BigInt orbit_size(const YoungDiagram& shape, const MVector& m);

/// Visits each tableau of the row-permutation orbit of the canonical filling
/// of m exactly once. Throws ResourceLimit when the orbit is larger than budget.
void for_each_orbit_tableau(const YoungDiagram& shape, const MVector& m, bool admissible_only,
                            std::int64_t budget, const std::function<void(const Tableau&)>& visit);

std::vector<Tableau> orbit(const YoungDiagram& shape, const MVector& m, bool admissible_only,
                           std::int64_t budget = kDefaultOrbitBudget);

/// |m| minus the number of modified columns. t must be an admissible orbit element.
int gamma(const Tableau& t);
/// One modifier per modified column, sorted.
std::vector<ColumnModifier> modifiers_of(const Tableau& t);

/// #{admissible orbit elements with gamma = 0}, by enumeration.
std::int64_t count_gamma0(const YoungDiagram& shape, const MVector& m,
                          std::int64_t budget = kDefaultOrbitBudget);
/// prod (λ_i - λ_j)^{m_ij} / m_ij!
double gamma0_upper_bound(const YoungDiagram& shape, const MVector& m);
/// prod (λ_i - λ_j - |m|)_+^{m_ij} / m_ij!
double gamma0_lower_bound(const YoungDiagram& shape, const MVector& m);

/// |λ_i - n μ_i| <= n^α for every row i (rows beyond the diagram count as 0).
bool is_typical(const YoungDiagram& shape, int n, const std::vector<double>& mu, double alpha);

}  // namespace qlan
