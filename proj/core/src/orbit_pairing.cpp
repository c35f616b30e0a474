#include "qlan/orbit_pairing.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "qlan/errors.hpp"

namespace qlan {

namespace {

struct Filling {
  std::vector<int> values;  // entry of row r, r < L
  std::vector<int> delta;   // brick-count increment per pair
};

std::vector<Filling> injective_fillings(int L, int d) {
  std::vector<Filling> out;
  std::vector<int> v(static_cast<std::size_t>(L));
  std::vector<bool> used(static_cast<std::size_t>(d), false);
  std::function<void(int)> rec = [&](int r) {
    if (r == L) {
      Filling f;
      f.values = v;
      f.delta.assign(static_cast<std::size_t>(num_pairs(d)), 0);
      for (int i = 0; i < L; ++i)
        if (v[static_cast<std::size_t>(i)] != i) ++f.delta[static_cast<std::size_t>(pair_index(i, v[static_cast<std::size_t>(i)], d))];
      out.push_back(std::move(f));
      return;
    }
    for (int x = r; x < d; ++x) {
      if (used[static_cast<std::size_t>(x)]) continue;
      used[static_cast<std::size_t>(x)] = true;
      v[static_cast<std::size_t>(r)] = x;
      rec(r + 1);
      used[static_cast<std::size_t>(x)] = false;
    }
  };
  rec(0);
  return out;
}

// Count vectors dominated by at least one target, indexed densely.
struct SideStates {
  std::vector<int> radix;
  std::vector<int> code_to_index;  // -1 when not a state
  std::vector<std::vector<int>> vectors;

  long code(const std::vector<int>& c) const {
    long k = 0;
    for (std::size_t p = 0; p < radix.size(); ++p) k = k * radix[p] + c[p];
    return k;
  }
  int index_of(const std::vector<int>& c) const {
    for (std::size_t p = 0; p < radix.size(); ++p)
      if (c[p] >= radix[p]) return -1;
    return code_to_index[static_cast<std::size_t>(code(c))];
  }
  int size() const { return static_cast<int>(vectors.size()); }
};

SideStates build_side(const std::vector<MVector>& targets, int np) {
  SideStates s;
  s.radix.assign(static_cast<std::size_t>(np), 1);
  for (const auto& t : targets)
    for (int p = 0; p < np; ++p)
      s.radix[static_cast<std::size_t>(p)] = std::max(s.radix[static_cast<std::size_t>(p)], t.entries()[static_cast<std::size_t>(p)] + 1);
  long total = 1;
  for (int r : s.radix) total *= r;
  if (total > 400'000'000L) throw ResourceLimit("orbit pairing: brick-count lattice too large (" + std::to_string(total) + ")");
  s.code_to_index.assign(static_cast<std::size_t>(total), -1);
  std::vector<int> c(static_cast<std::size_t>(np), 0);
  for (const auto& t : targets) {
    std::function<void(int)> rec = [&](int p) {
      if (p == np) {
        long k = s.code(c);
        if (s.code_to_index[static_cast<std::size_t>(k)] < 0) {
          s.code_to_index[static_cast<std::size_t>(k)] = static_cast<int>(s.vectors.size());
          s.vectors.push_back(c);
        }
        return;
      }
      for (int v = 0; v <= t.entries()[static_cast<std::size_t>(p)]; ++v) {
        c[static_cast<std::size_t>(p)] = v;
        rec(p + 1);
      }
      c[static_cast<std::size_t>(p)] = 0;
    };
    rec(0);
  }
  return s;
}

// trans[f][state] = state after applying filling f, or -1.
std::vector<std::vector<int>> side_transitions(const SideStates& s, const std::vector<Filling>& fills) {
  std::vector<std::vector<int>> trans(fills.size(), std::vector<int>(static_cast<std::size_t>(s.size()), -1));
  std::vector<int> c;
  for (std::size_t f = 0; f < fills.size(); ++f)
    for (int i = 0; i < s.size(); ++i) {
      c = s.vectors[static_cast<std::size_t>(i)];
      for (std::size_t p = 0; p < c.size(); ++p) c[p] += fills[f].delta[p];
      trans[f][static_cast<std::size_t>(i)] = s.index_of(c);
    }
  return trans;
}

int permutation_sign_or_zero(const std::vector<int>& a, const std::vector<int>& b) {
  // Sign of the permutation taking b to a when they hold the same set, else 0.
  std::vector<int> pos(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto it = std::find(b.begin(), b.end(), a[i]);
    if (it == b.end()) return 0;
    pos[i] = static_cast<int>(it - b.begin());
  }
  int sign = 1;
  for (std::size_t i = 0; i < pos.size(); ++i)
    for (std::size_t j = i + 1; j < pos.size(); ++j)
      if (pos[i] > pos[j]) sign = -sign;
  return sign;
}

}  // namespace

MatrixXc orbit_pairing_matrix(const YoungDiagram& shape, const MatrixXc& U, const std::vector<MVector>& rows,
                              const std::vector<MVector>& cols, std::int64_t state_budget, PairingStats* stats) {
  const int d = static_cast<int>(U.rows());
  if (U.cols() != d) throw InvalidArgument("orbit pairing: U must be square");
  if (shape.num_rows() > d) throw InvalidArgument("orbit pairing: diagram has more rows than d");
  for (const auto* list : {&rows, &cols})
    for (const auto& m : *list) {
      if (m.d() != d) throw InvalidArgument("orbit pairing: m-vector dimension differs from U");
      for (int i = 0; i < d; ++i)
        if (m.row_bricks(i) > shape.row(i)) throw InvalidArgument("orbit pairing: " + m.to_string() + " exceeds row capacity");
    }
  MatrixXc out = MatrixXc::Zero(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  if (rows.empty() || cols.empty()) return out;

  const int np = num_pairs(d);
  const bool identity = U == MatrixXc::Identity(d, d);
  SideStates sa = build_side(rows, np);
  SideStates sb = build_side(cols, np);
  const std::int64_t na = sa.size(), nb = sb.size();
  if (na * nb > state_budget)
    throw ResourceLimit("orbit pairing needs " + std::to_string(na * nb) + " joint states, above the budget of " +
                        std::to_string(state_budget));

  // Per column length: fillings, transitions and the weight matrix det U[fa, fb].
  std::vector<std::vector<Filling>> fills(static_cast<std::size_t>(d + 1));
  std::vector<std::vector<std::vector<int>>> ta(static_cast<std::size_t>(d + 1)), tb(static_cast<std::size_t>(d + 1));
  std::vector<MatrixXc> weight(static_cast<std::size_t>(d + 1));
  for (int L = 1; L <= shape.num_rows(); ++L) {
    auto& F = fills[static_cast<std::size_t>(L)];
    F = injective_fillings(L, d);
    ta[static_cast<std::size_t>(L)] = side_transitions(sa, F);
    tb[static_cast<std::size_t>(L)] = side_transitions(sb, F);
    MatrixXc W(static_cast<Eigen::Index>(F.size()), static_cast<Eigen::Index>(F.size()));
    for (std::size_t x = 0; x < F.size(); ++x)
      for (std::size_t y = 0; y < F.size(); ++y) {
        if (identity) {
          W(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) = permutation_sign_or_zero(F[x].values, F[y].values);
        } else {
          MatrixXc minor(L, L);
          for (int r = 0; r < L; ++r)
            for (int s = 0; s < L; ++s) minor(r, s) = U(F[x].values[static_cast<std::size_t>(r)], F[y].values[static_cast<std::size_t>(s)]);
          W(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) = minor.determinant();
        }
      }
    weight[static_cast<std::size_t>(L)] = W;
  }

  std::vector<Complex> cur(static_cast<std::size_t>(na * nb), Complex(0.0, 0.0)), next;
  {
    std::vector<int> zero(static_cast<std::size_t>(np), 0);
    cur[static_cast<std::size_t>(sa.index_of(zero) * nb + sb.index_of(zero))] = 1.0;
  }
  std::int64_t work = 0;
  for (int c = 0; c < shape.num_columns(); ++c) {
    const int L = shape.column_length(c);
    const auto& F = fills[static_cast<std::size_t>(L)];
    const auto& TA = ta[static_cast<std::size_t>(L)];
    const auto& TB = tb[static_cast<std::size_t>(L)];
    const auto& W = weight[static_cast<std::size_t>(L)];
    next.assign(cur.size(), Complex(0.0, 0.0));
    for (std::int64_t ia = 0; ia < na; ++ia) {
      for (std::int64_t ib = 0; ib < nb; ++ib) {
        const Complex v = cur[static_cast<std::size_t>(ia * nb + ib)];
        if (v == Complex(0.0, 0.0)) continue;
        for (std::size_t x = 0; x < F.size(); ++x) {
          const int ja = TA[x][static_cast<std::size_t>(ia)];
          if (ja < 0) continue;
          for (std::size_t y = 0; y < F.size(); ++y) {
            const Complex w = W(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y));
            if (w == Complex(0.0, 0.0)) continue;
            const int jb = TB[y][static_cast<std::size_t>(ib)];
            if (jb < 0) continue;
            next[static_cast<std::size_t>(ja * nb + jb)] += w * v;
            ++work;
          }
        }
      }
    }
    cur.swap(next);
  }
  if (stats) {
    stats->states = na * nb;
    stats->transitions = work;
  }

  for (std::size_t i = 0; i < rows.size(); ++i) {
    const int ia = sa.index_of(rows[i].entries());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      const int ib = sb.index_of(cols[j].entries());
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = cur[static_cast<std::size_t>(ia * nb + ib)];
    }
  }
  return out;
}

}  // namespace qlan
