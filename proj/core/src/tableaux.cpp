#include "qlan/tableaux.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "qlan/errors.hpp"

namespace qlan {

namespace {

BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Row r of the canonical filling: r first, then the brick values in increasing order.
std::vector<int> canonical_row(const YoungDiagram& shape, const MVector& m, int r) {
  const int d = m.d();
  std::vector<int> row;
  int own = shape.row(r) - m.row_bricks(r);
  row.insert(row.end(), static_cast<std::size_t>(own), r);
  for (int j = r + 1; j < d; ++j) row.insert(row.end(), static_cast<std::size_t>(m.at(r, j)), j);
  return row;
}

void check_capacity(const YoungDiagram& shape, const MVector& m) {
  if (m.d() < shape.num_rows())
    throw InvalidArgument("m-vector dimension " + std::to_string(m.d()) + " is smaller than the row count of " +
                          shape.to_string());
  for (int i = 0; i < m.d(); ++i) {
    if (m.row_bricks(i) > shape.row(i))
      throw InvalidArgument("m-vector " + m.to_string() + " exceeds the capacity of row " + std::to_string(i + 1) +
                            " of " + shape.to_string());
  }
}

}  // namespace

YoungDiagram::YoungDiagram(std::vector<int> rows) : rows_(std::move(rows)) {
  while (!rows_.empty() && rows_.back() == 0) rows_.pop_back();
  if (rows_.empty()) throw InvalidArgument("Young diagram must have at least one box");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i] < 0) throw InvalidArgument("Young diagram rows must be nonnegative");
    if (i > 0 && rows_[i] > rows_[i - 1]) throw InvalidArgument("Young diagram rows must be non-increasing");
  }
  size_ = std::accumulate(rows_.begin(), rows_.end(), 0);
}

int YoungDiagram::column_length(int c) const {
  int len = 0;
  while (len < num_rows() && rows_[static_cast<std::size_t>(len)] > c) ++len;
  return len;
}

std::string YoungDiagram::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < rows_.size(); ++i) os << (i ? "," : "") << rows_[i];
  os << ')';
  return os.str();
}

int num_pairs(int d) { return d * (d - 1) / 2; }

int pair_index(int i, int j, int d) {
  // Pairs before row i: sum_{r<i} (d-1-r).
  return i * (2 * d - i - 1) / 2 + (j - i - 1);
}

std::pair<int, int> pair_of(int index, int d) {
  int i = 0;
  while (index >= d - 1 - i) {
    index -= d - 1 - i;
    ++i;
  }
  return {i, i + 1 + index};
}

MVector::MVector(int d, std::vector<int> entries) : d_(d), e_(std::move(entries)) {
  if (static_cast<int>(e_.size()) != num_pairs(d))
    throw InvalidArgument("m-vector for d=" + std::to_string(d) + " needs " + std::to_string(num_pairs(d)) +
                          " entries");
  for (int v : e_)
    if (v < 0) throw InvalidArgument("m-vector entries must be nonnegative");
}

int MVector::weight() const { return std::accumulate(e_.begin(), e_.end(), 0); }

int MVector::row_bricks(int i) const {
  int s = 0;
  for (int j = i + 1; j < d_; ++j) s += at(i, j);
  return s;
}

std::vector<int> MVector::total_multiplicities(const YoungDiagram& shape) const {
  std::vector<int> out(static_cast<std::size_t>(d_), 0);
  for (int v = 0; v < d_; ++v) {
    int s = shape.row(v) - row_bricks(v);
    for (int i = 0; i < v; ++i) s += at(i, v);
    out[static_cast<std::size_t>(v)] = s;
  }
  return out;
}

std::string MVector::to_string() const {
  std::ostringstream os;
  os << '{';
  for (int k = 0; k < static_cast<int>(e_.size()); ++k) {
    auto [i, j] = pair_of(k, d_);
    os << (k ? "," : "") << "m" << i + 1 << j + 1 << '=' << e_[static_cast<std::size_t>(k)];
  }
  os << '}';
  return os.str();
}

Tableau::Tableau(YoungDiagram shape, std::vector<std::vector<int>> rows)
    : shape_(std::move(shape)), rows_(std::move(rows)) {
  if (static_cast<int>(rows_.size()) != shape_.num_rows()) throw InvalidArgument("tableau row count mismatch");
  for (int r = 0; r < shape_.num_rows(); ++r) {
    if (static_cast<int>(rows_[static_cast<std::size_t>(r)].size()) != shape_.row(r))
      throw InvalidArgument("tableau row length mismatch");
    for (int v : rows_[static_cast<std::size_t>(r)])
      if (v < 0) throw InvalidArgument("tableau entries must be positive");
  }
}

Tableau Tableau::parse(std::string_view text) {
  std::vector<std::vector<int>> rows(1);
  for (char ch : text) {
    if (ch == '/') {
      rows.emplace_back();
    } else if (ch >= '1' && ch <= '9') {
      rows.back().push_back(ch - '1');
    } else {
      throw InvalidArgument("bad tableau character '" + std::string(1, ch) + "'");
    }
  }
  std::vector<int> lens;
  for (const auto& r : rows) lens.push_back(static_cast<int>(r.size()));
  for (int len : lens)
    if (len == 0) throw InvalidArgument("empty tableau row");
  return Tableau(YoungDiagram(lens), std::move(rows));
}

std::vector<int> Tableau::column(int c) const {
  std::vector<int> col;
  for (int r = 0; r < shape_.column_length(c); ++r) col.push_back(at(r, c));
  return col;
}

std::string Tableau::to_string() const {
  std::string s;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (r) s += '/';
    for (int v : rows_[r]) s += std::to_string(v + 1);
  }
  return s;
}

std::vector<YoungDiagram> enumerate_diagrams(int n, int d) {
  if (n <= 0) throw InvalidArgument("enumerate_diagrams: n must be positive");
  if (d < 2) throw InvalidArgument("enumerate_diagrams: d must be at least 2");
  std::vector<YoungDiagram> out;
  std::vector<int> rows;
  // Depth-first with the largest first row first gives descending lexicographic order.
  std::function<void(int, int)> rec = [&](int remaining, int cap) {
    if (remaining == 0) {
      out.emplace_back(rows);
      return;
    }
    if (static_cast<int>(rows.size()) == d) return;
    for (int v = std::min(remaining, cap); v >= 1; --v) {
      rows.push_back(v);
      rec(remaining - v, v);
      rows.pop_back();
    }
  };
  rec(n, n);
  return out;
}

int hook_length(const YoungDiagram& shape, int r, int c) {
  if (!shape.contains(r, c))
    throw InvalidArgument("box (" + std::to_string(r + 1) + "," + std::to_string(c + 1) + ") is outside " +
                          shape.to_string());
  return 1 + (shape.row(r) - c - 1) + (shape.column_length(c) - r - 1);
}

BigInt dim_irrep(const YoungDiagram& shape, int d) {
  if (shape.num_rows() > d)
    throw InvalidArgument("diagram " + shape.to_string() + " has more than d=" + std::to_string(d) + " rows");
  BigInt num = 1, den = 1;
  for (int r = 0; r < shape.num_rows(); ++r)
    for (int c = 0; c < shape.row(r); ++c) {
      num *= (c - r + d);
      den *= hook_length(shape, r, c);
    }
  return num / den;
}

BigInt multiplicity(const YoungDiagram& shape, int n) {
  if (shape.size() != n)
    throw InvalidArgument("diagram " + shape.to_string() + " does not have n=" + std::to_string(n) + " boxes");
  BigInt den = 1;
  for (int r = 0; r < shape.num_rows(); ++r)
    for (int c = 0; c < shape.row(r); ++c) den *= hook_length(shape, r, c);
  return factorial(n) / den;
}

BigInt multiplicity_multinomial_form(const YoungDiagram& shape, int n, int d) {
  if (shape.size() != n)
    throw InvalidArgument("diagram " + shape.to_string() + " does not have n=" + std::to_string(n) + " boxes");
  if (shape.num_rows() > d) throw InvalidArgument("diagram has more than d rows");
  // multinomial(n; λ) * prod_{l<k} (λ_l - λ_k + k - l) / (λ_l + k - l); exact in integers.
  BigInt num = factorial(n), den = 1;
  for (int l = 0; l < d; ++l) den *= factorial(shape.row(l));
  for (int l = 0; l < d; ++l)
    for (int k = l + 1; k < d; ++k) {
      num *= (shape.row(l) - shape.row(k) + k - l);
      den *= (shape.row(l) + k - l);
    }
  if (num % den != 0) throw std::logic_error("multiplicity form is not an integer");
  return num / den;
}

bool fits(const YoungDiagram& shape, const MVector& m) {
  if (m.d() < shape.num_rows()) return false;
  for (int i = 0; i < m.d(); ++i)
    if (m.row_bricks(i) > shape.row(i)) return false;
  std::vector<std::vector<int>> rows;
  for (int r = 0; r < shape.num_rows(); ++r) rows.push_back(canonical_row(shape, m, r));
  return is_semistandard(Tableau(shape, std::move(rows)));
}

std::vector<MVector> enumerate_m_vectors(const YoungDiagram& shape, int d, std::optional<int> max_weight) {
  if (shape.num_rows() > d) throw InvalidArgument("diagram has more than d rows");
  const int np = num_pairs(d);
  std::vector<MVector> out;
  MVector m(d);
  std::function<void(int, int)> rec = [&](int k, int weight) {
    if (k == np) {
      if (fits(shape, m)) out.push_back(m);
      return;
    }
    auto [i, j] = pair_of(k, d);
    // Row i has room for at most λ_i - (bricks already placed on it) more.
    int room = shape.row(i) - m.row_bricks(i);
    if (max_weight) room = std::min(room, *max_weight - weight);
    for (int v = 0; v <= room; ++v) {
      m.set(i, j, v);
      rec(k + 1, weight + v);
    }
    m.set(i, j, 0);
  };
  rec(0, 0);
  std::stable_sort(out.begin(), out.end(), [](const MVector& a, const MVector& b) {
    if (a.weight() != b.weight()) return a.weight() < b.weight();
    return a.entries() < b.entries();
  });
  return out;
}

Tableau canonical_tableau(const YoungDiagram& shape, const MVector& m) {
  check_capacity(shape, m);
  std::vector<std::vector<int>> rows;
  for (int r = 0; r < shape.num_rows(); ++r) rows.push_back(canonical_row(shape, m, r));
  return Tableau(shape, std::move(rows));
}

MVector m_of(const Tableau& t, int d) {
  MVector m(d);
  const auto& shape = t.shape();
  if (shape.num_rows() > d) throw InvalidArgument("tableau has more than d rows");
  for (int r = 0; r < shape.num_rows(); ++r) {
    for (int c = 0; c < shape.row(r); ++c) {
      int v = t.at(r, c);
      if (v >= d) throw InvalidArgument("tableau entry exceeds d");
      if (v < r) throw InvalidArgument("tableau entry below its row index in row " + std::to_string(r + 1));
      if (c > 0 && v < t.at(r, c - 1)) throw InvalidArgument("tableau row " + std::to_string(r + 1) + " decreases");
      if (v > r) m.set(r, v, m.at(r, v) + 1);
    }
  }
  return m;
}

bool is_semistandard(const Tableau& t) {
  const auto& s = t.shape();
  for (int r = 0; r < s.num_rows(); ++r)
    for (int c = 0; c < s.row(r); ++c) {
      if (c > 0 && t.at(r, c) < t.at(r, c - 1)) return false;
      if (r > 0 && t.at(r, c) <= t.at(r - 1, c)) return false;
    }
  return true;
}

bool is_admissible(const Tableau& t) {
  const auto& s = t.shape();
  for (int c = 0; c < s.num_columns(); ++c) {
    auto col = t.column(c);
    std::sort(col.begin(), col.end());
    if (std::adjacent_find(col.begin(), col.end()) != col.end()) return false;
  }
  return true;
}

BigInt orbit_size(const YoungDiagram& shape, const MVector& m) {
  check_capacity(shape, m);
  BigInt total = 1;
  for (int r = 0; r < shape.num_rows(); ++r) {
    BigInt den = factorial(shape.row(r) - m.row_bricks(r));
    for (int j = r + 1; j < m.d(); ++j) den *= factorial(m.at(r, j));
    total *= factorial(shape.row(r)) / den;
  }
  return total;
}

void for_each_orbit_tableau(const YoungDiagram& shape, const MVector& m, bool admissible_only,
                            std::int64_t budget, const std::function<void(const Tableau&)>& visit) {
  BigInt size = orbit_size(shape, m);
  if (size > budget)
    throw ResourceLimit("orbit of " + m.to_string() + " in " + shape.to_string() + " has " + size.str() +
                        " elements, above the budget of " + std::to_string(budget));
  const int nr = shape.num_rows();
  Tableau t = canonical_tableau(shape, m);
  std::function<void(int)> rec = [&](int r) {
    if (r == nr) {
      visit(t);
      return;
    }
    std::vector<int> row = canonical_row(shape, m, r);
    std::sort(row.begin(), row.end());
    do {
      bool ok = true;
      if (admissible_only) {
        for (int c = 0; c < shape.row(r) && ok; ++c)
          for (int above = 0; above < r; ++above)
            if (t.at(above, c) == row[static_cast<std::size_t>(c)]) {
              ok = false;
              break;
            }
      }
      if (!ok) continue;
      for (int c = 0; c < shape.row(r); ++c) t.set(r, c, row[static_cast<std::size_t>(c)]);
      rec(r + 1);
    } while (std::next_permutation(row.begin(), row.end()));
  };
  rec(0);
}

std::vector<Tableau> orbit(const YoungDiagram& shape, const MVector& m, bool admissible_only, std::int64_t budget) {
  std::vector<Tableau> out;
  for_each_orbit_tableau(shape, m, admissible_only, budget, [&](const Tableau& t) { out.push_back(t); });
  return out;
}

std::vector<ColumnModifier> modifiers_of(const Tableau& t) {
  if (!is_admissible(t)) throw InvalidArgument("modifiers_of: tableau " + t.to_string() + " is not admissible");
  const auto& s = t.shape();
  std::vector<ColumnModifier> out;
  for (int c = 0; c < s.num_columns(); ++c) {
    ColumnModifier k;
    std::set<int> now, before;
    for (int r = 0; r < s.column_length(c); ++r) {
      int v = t.at(r, c);
      if (v < r) throw InvalidArgument("modifiers_of: entry below its row index, not an orbit element");
      if (v != r) k.bricks.emplace_back(r, v);
      now.insert(v);
      before.insert(r);
    }
    if (k.bricks.empty()) continue;
    std::set_difference(now.begin(), now.end(), before.begin(), before.end(), std::back_inserter(k.added));
    std::set_difference(before.begin(), before.end(), now.begin(), now.end(), std::back_inserter(k.deleted));
    std::sort(k.bricks.begin(), k.bricks.end());
    out.push_back(std::move(k));
  }
  std::sort(out.begin(), out.end());
  return out;
}

int gamma(const Tableau& t) {
  auto mods = modifiers_of(t);
  int bricks = 0;
  for (const auto& k : mods) bricks += static_cast<int>(k.bricks.size());
  return bricks - static_cast<int>(mods.size());
}

std::int64_t count_gamma0(const YoungDiagram& shape, const MVector& m, std::int64_t budget) {
  std::int64_t count = 0;
  for_each_orbit_tableau(shape, m, true, budget, [&](const Tableau& t) {
    if (gamma(t) == 0) ++count;
  });
  return count;
}

namespace {
double bound_product(const YoungDiagram& shape, const MVector& m, int shift) {
  double p = 1.0;
  for (int i = 0; i < m.d(); ++i)
    for (int j = i + 1; j < m.d(); ++j) {
      int k = m.at(i, j);
      double base = std::max(0, shape.row(i) - shape.row(j) - shift);
      p *= std::pow(base, k) / std::tgamma(k + 1.0);
    }
  return p;
}
}  // namespace

double gamma0_upper_bound(const YoungDiagram& shape, const MVector& m) { return bound_product(shape, m, 0); }

double gamma0_lower_bound(const YoungDiagram& shape, const MVector& m) {
  return bound_product(shape, m, m.weight());
}

bool is_typical(const YoungDiagram& shape, int n, const std::vector<double>& mu, double alpha) {
  const double tol = std::pow(static_cast<double>(n), alpha);
  if (shape.num_rows() > static_cast<int>(mu.size())) return false;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    double dev = std::abs(shape.row(static_cast<int>(i)) - n * mu[i]);
    // Small slack so that integer-valued deviations equal to n^α are not lost to rounding.
    if (dev > tol * (1.0 + 1e-12)) return false;
  }
  return true;
}

}  // namespace qlan
