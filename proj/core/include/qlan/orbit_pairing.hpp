#pragma once

// Orbit-sum pairings S_U(m, l) = sum_{a in O(m)} sum_{b in O(l)} prod_c det U[t_a^c, t_b^c].
//
// The double orbit sum factorizes over columns, so it is evaluated by a
// forward pass over the columns of λ. The state after c columns is the pair
// of brick-count vectors used so far on the a side and the b side; a column of
// length L moves the state by one injective filling on each side with weight
// det U[fa, fb]. One pass yields S_U(m, l) for every requested pair at once.

#include <cstdint>
#include <vector>

#include "qlan/linalg.hpp"
#include "qlan/tableaux.hpp"

namespace qlan {

inline constexpr std::int64_t kDefaultPairingStateBudget = 20'000'000;

struct PairingStats {
  std::int64_t states = 0;       // joint states of the forward pass
  std::int64_t transitions = 0;  // multiply-adds performed
};

/// S_U(rows[i], cols[j]) for all i, j. When U is exactly the identity only
/// permutation-related fillings contribute and pairs whose weight classes
/// differ come out as exact zeros.
MatrixXc orbit_pairing_matrix(const YoungDiagram& shape, const MatrixXc& U, const std::vector<MVector>& rows,
                              const std::vector<MVector>& cols,
                              std::int64_t state_budget = kDefaultPairingStateBudget,
                              PairingStats* stats = nullptr);

}  // namespace qlan
