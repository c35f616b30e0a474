#include "qlan/schur_weyl.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>

#include "qlan/errors.hpp"

namespace qlan {

namespace {

void check_same_shape(const Tableau& a, const Tableau& b) {
  if (a.shape() != b.shape())
    throw InvalidArgument("tableaux have different shapes: " + a.shape().to_string() + " vs " + b.shape().to_string());
}

void check_entries(const MatrixXc& U, const Tableau& t) {
  for (const auto& row : t.rows())
    for (int v : row)
      if (v >= U.rows()) throw InvalidArgument("tableau entry exceeds the dimension of U");
}

}  // namespace

Complex minor_det_product(const MatrixXc& U, const Tableau& a, const Tableau& b) {
  check_same_shape(a, b);
  check_entries(U, a);
  check_entries(U, b);
  Complex prod = 1.0;
  for (int c = 0; c < a.shape().num_columns(); ++c) {
    const int L = a.shape().column_length(c);
    MatrixXc minor(L, L);
    for (int r = 0; r < L; ++r)
      for (int s = 0; s < L; ++s) minor(r, s) = U(a.at(r, c), b.at(s, c));
    prod *= minor.determinant();
    if (prod == Complex(0.0, 0.0)) break;
  }
  return prod;
}

Complex column_permutation_sum(const MatrixXc& U, const Tableau& a, const Tableau& b) {
  check_same_shape(a, b);
  check_entries(U, a);
  check_entries(U, b);
  const auto& shape = a.shape();
  // Enumerate σ = product of one permutation per column; term = sgn σ prod_boxes U[a(r,c), b(σ_c(r), c)].
  Complex total = 0.0;
  std::function<void(int, Complex)> rec = [&](int c, Complex acc) {
    if (c == shape.num_columns()) {
      total += acc;
      return;
    }
    const int L = shape.column_length(c);
    std::vector<int> perm(static_cast<std::size_t>(L));
    std::iota(perm.begin(), perm.end(), 0);
    do {
      int inversions = 0;
      for (int i = 0; i < L; ++i)
        for (int j = i + 1; j < L; ++j)
          if (perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)]) ++inversions;
      Complex term = (inversions % 2) ? -1.0 : 1.0;
      for (int r = 0; r < L; ++r) term *= U(a.at(r, c), b.at(perm[static_cast<std::size_t>(r)], c));
      rec(c + 1, acc * term);
    } while (std::next_permutation(perm.begin(), perm.end()));
  };
  rec(0, Complex(1.0, 0.0));
  return total;
}

Complex symmetrizer_pairing(const YoungDiagram& shape, const MVector& m, const MVector& l,
                            const std::optional<MatrixXc>& U, std::int64_t state_budget) {
  if (!fits(shape, m) || !fits(shape, l)) throw InvalidArgument("symmetrizer_pairing: m-vector does not fit the diagram");
  const MatrixXc u = U ? *U : MatrixXc::Identity(m.d(), m.d());
  return orbit_pairing_matrix(shape, u, {m}, {l}, state_budget)(0, 0);
}

Complex symmetrizer_pairing_enumerated(const YoungDiagram& shape, const MVector& m, const MVector& l,
                                       const MatrixXc& U, std::int64_t budget) {
  BigInt pairs = orbit_size(shape, m) * orbit_size(shape, l);
  if (pairs > budget)
    throw ResourceLimit("orbit pair count " + pairs.str() + " exceeds the budget of " + std::to_string(budget));
  auto oa = orbit(shape, m, true, budget);
  auto ob = orbit(shape, l, true, budget);
  Complex s = 0.0;
  for (const auto& a : oa)
    for (const auto& b : ob) s += minor_det_product(U, a, b);
  return s;
}

bool same_weight_class(const YoungDiagram& shape, const MVector& m, const MVector& l) {
  return m.total_multiplicities(shape) == l.total_multiplicities(shape);
}

namespace {

MatrixXd normalized_gram(const YoungDiagram& shape, const std::vector<MVector>& basis, const MatrixXd& S) {
  const Eigen::Index k = static_cast<Eigen::Index>(basis.size());
  MatrixXd G = MatrixXd::Zero(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    if (!(S(i, i) > 0.0))
      throw NearSingularGram("symmetrizer vector of " + basis[static_cast<std::size_t>(i)].to_string() + " vanishes in " +
                             shape.to_string());
    G(i, i) = 1.0;
  }
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = i + 1; j < k; ++j) {
      if (!same_weight_class(shape, basis[static_cast<std::size_t>(i)], basis[static_cast<std::size_t>(j)])) continue;
      const double g = 0.5 * (S(i, j) + S(j, i)) / std::sqrt(S(i, i) * S(j, j));
      G(i, j) = g;
      G(j, i) = g;
    }
  return G;
}

}  // namespace

MatrixXd gram_matrix(const YoungDiagram& shape, const std::vector<MVector>& basis, std::int64_t state_budget) {
  for (const auto& m : basis)
    if (!fits(shape, m)) throw InvalidArgument("gram_matrix: " + m.to_string() + " does not fit " + shape.to_string());
  if (basis.empty()) return MatrixXd(0, 0);
  const int d = basis.front().d();
  MatrixXd S = orbit_pairing_matrix(shape, MatrixXc::Identity(d, d), basis, basis, state_budget).real();
  return normalized_gram(shape, basis, S);
}

MatrixXd orthonormalize(const MatrixXd& G) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (G + G.transpose()));
  const VectorXd& ev = es.eigenvalues();
  if (ev.size() > 0 && ev.minCoeff() <= 1e-12)
    throw NearSingularGram("Gram matrix is near singular (smallest eigenvalue " + std::to_string(ev.minCoeff()) +
                           "); lower the basis cutoff or raise n");
  MatrixXd X = es.eigenvectors() * ev.cwiseInverse().cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
  return 0.5 * (X + X.transpose());
}

BlockBasis BlockBasis::build(const YoungDiagram& shape, int d, std::optional<int> cutoff, std::int64_t state_budget) {
  BlockBasis b = from_list(shape, d, enumerate_m_vectors(shape, d, cutoff), state_budget);
  b.cutoff_ = cutoff;
  return b;
}

BlockBasis BlockBasis::from_list(const YoungDiagram& shape, int d, std::vector<MVector> basis,
                                 std::int64_t state_budget) {
  if (basis.empty()) throw InvalidArgument("BlockBasis: empty basis");
  for (const auto& m : basis) {
    if (m.d() != d) throw InvalidArgument("BlockBasis: m-vector dimension mismatch");
    if (!fits(shape, m)) throw InvalidArgument("BlockBasis: " + m.to_string() + " does not fit " + shape.to_string());
  }
  BlockBasis b;
  b.shape_ = shape;
  b.d_ = d;
  b.basis_ = std::move(basis);
  b.budget_ = state_budget;
  b.complete_ = BigInt(static_cast<long>(b.basis_.size())) == dim_irrep(shape, d);
  for (const auto& m : b.basis_) b.cutoff_ = std::max(b.cutoff_.value_or(0), m.weight());

  MatrixXd S = orbit_pairing_matrix(shape, MatrixXc::Identity(d, d), b.basis_, b.basis_, state_budget).real();
  b.gram_ = normalized_gram(shape, b.basis_, S);
  b.raw_norms_ = S.diagonal();
  b.orth_ = orthonormalize(b.gram_);
  b.sqrt_gram_ = sqrt_psd(b.gram_);

  std::map<std::vector<int>, std::vector<int>> groups;
  std::vector<std::vector<int>> order;
  for (int k = 0; k < b.size(); ++k) {
    auto key = b.basis_[static_cast<std::size_t>(k)].total_multiplicities(shape);
    if (!groups.count(key)) order.push_back(key);
    groups[key].push_back(k);
  }
  for (const auto& key : order) b.classes_.push_back(groups[key]);
  return b;
}

int BlockBasis::index_of(const MVector& m) const {
  auto it = std::find(basis_.begin(), basis_.end(), m);
  return it == basis_.end() ? -1 : static_cast<int>(it - basis_.begin());
}

Complex coherent_overlap(const YoungDiagram& shape, const MVector& m, const MatrixXc& U, std::int64_t state_budget) {
  if (!fits(shape, m)) throw InvalidArgument("coherent_overlap: " + m.to_string() + " does not fit " + shape.to_string());
  const int d = m.d();
  const MVector zero(d);
  const Complex s = orbit_pairing_matrix(shape, U, {m}, {zero}, state_budget)(0, 0);
  const double norm = orbit_pairing_matrix(shape, MatrixXc::Identity(d, d), {m}, {m}, state_budget)(0, 0).real();
  return s / std::sqrt(norm);
}

VectorXc coherent_vector(const BlockBasis& basis, const MatrixXc& U) {
  const MVector zero(basis.d());
  MatrixXc s = orbit_pairing_matrix(basis.shape(), U, basis.basis(), {zero}, basis.pairing_budget());
  VectorXc raw(basis.size());
  for (int k = 0; k < basis.size(); ++k) raw(k) = s(k, 0) / std::sqrt(basis.raw_norms()(k));
  return basis.orthonormalizer().cast<Complex>() * raw;
}

BlockOperator block_unitary(const BlockBasis& basis, const MatrixXc& U, double max_defect) {
  if (unitarity_error(U) > 1e-12) throw InvalidArgument("block_unitary: U is not unitary within 1e-12");
  MatrixXc S = orbit_pairing_matrix(basis.shape(), U, basis.basis(), basis.basis(), basis.pairing_budget());
  const VectorXd inv = basis.raw_norms().cwiseSqrt().cwiseInverse();
  MatrixXc raw = inv.cast<Complex>().asDiagonal() * S * inv.cast<Complex>().asDiagonal();
  const MatrixXc X = basis.orthonormalizer().cast<Complex>();
  BlockOperator op;
  op.shape = basis.shape();
  op.matrix = X * raw * X;
  double min_norm = 1.0;
  for (Eigen::Index j = 0; j < op.matrix.cols(); ++j) min_norm = std::min(min_norm, op.matrix.col(j).squaredNorm());
  op.truncation_defect = std::max(0.0, 1.0 - min_norm);
  if (op.truncation_defect > max_defect)
    throw TruncationError("block unitary loses " + std::to_string(op.truncation_defect) +
                          " of a column norm; raise the basis cutoff");
  return op;
}

namespace {

// Applies A to every tensor factor of v in (C^d)^{⊗n}, factor 0 most significant.
VectorXc apply_factorwise(const MatrixXc& A, const VectorXc& v, int n, int d) {
  VectorXc cur = v;
  std::int64_t stride = 1;
  for (int k = n - 1; k >= 0; --k) {
    VectorXc out = VectorXc::Zero(cur.size());
    const std::int64_t block = stride * d;
    for (std::int64_t base = 0; base < cur.size(); base += block)
      for (std::int64_t off = 0; off < stride; ++off)
        for (int i = 0; i < d; ++i) {
          Complex acc = 0.0;
          for (int j = 0; j < d; ++j) acc += A(i, j) * cur(base + j * stride + off);
          out(base + i * stride + off) = acc;
        }
    cur.swap(out);
    stride *= d;
  }
  return cur;
}

std::int64_t tensor_index(const std::vector<int>& values, int d) {
  std::int64_t idx = 0;
  for (int v : values) idx = idx * d + v;
  return idx;
}

// All fillings of positions 0..n-1 (row-major over the diagram) with sorted rows.
void sorted_row_fillings(const YoungDiagram& shape, int d, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> vals(static_cast<std::size_t>(shape.size()));
  std::vector<int> start(static_cast<std::size_t>(shape.num_rows()));
  for (int r = 1; r < shape.num_rows(); ++r) start[static_cast<std::size_t>(r)] = start[static_cast<std::size_t>(r - 1)] + shape.row(r - 1);
  std::function<void(int, int, int)> rec = [&](int r, int c, int lo) {
    if (r == shape.num_rows()) {
      visit(vals);
      return;
    }
    if (c == shape.row(r)) {
      rec(r + 1, 0, 0);
      return;
    }
    for (int v = lo; v < d; ++v) {
      vals[static_cast<std::size_t>(start[static_cast<std::size_t>(r)] + c)] = v;
      rec(r, c + 1, v);
    }
  };
  rec(0, 0, 0);
}

}  // namespace

std::vector<BruteBlock> brute_force_blocks(const MatrixXc& rho, int n, std::int64_t limit) {
  const int d = static_cast<int>(rho.rows());
  if (rho.cols() != d || d < 2) throw InvalidArgument("brute_force_blocks: rho must be a square matrix with d >= 2");
  if (n < 1) throw InvalidArgument("brute_force_blocks: n must be positive");
  double full = std::pow(static_cast<double>(d), n);
  if (full > static_cast<double>(limit))
    throw ResourceLimit("brute_force_blocks: d^n = " + std::to_string(static_cast<long long>(full)) +
                        " exceeds the tensor limit " + std::to_string(limit));
  const std::int64_t D = static_cast<std::int64_t>(full);

  std::vector<BruteBlock> out;
  for (const auto& shape : enumerate_diagrams(n, d)) {
    // Positions of the standard row-reading tableau, by row and by column.
    std::vector<std::vector<int>> row_pos(static_cast<std::size_t>(shape.num_rows()));
    std::vector<std::vector<int>> col_pos(static_cast<std::size_t>(shape.num_columns()));
    int p = 0;
    for (int r = 0; r < shape.num_rows(); ++r)
      for (int c = 0; c < shape.row(r); ++c, ++p) {
        row_pos[static_cast<std::size_t>(r)].push_back(p);
        col_pos[static_cast<std::size_t>(c)].push_back(p);
      }

    std::vector<VectorXc> vectors;
    sorted_row_fillings(shape, d, [&](const std::vector<int>& a) {
      // p_λ f_a: sum over every permutation within each row.
      std::map<std::vector<int>, double> sym;
      std::vector<int> vals = a;
      std::function<void(int)> rows_rec = [&](int r) {
        if (r == shape.num_rows()) {
          sym[vals] += 1.0;
          return;
        }
        const auto& pos = row_pos[static_cast<std::size_t>(r)];
        std::vector<int> perm(pos.size());
        std::iota(perm.begin(), perm.end(), 0);
        do {
          for (std::size_t k = 0; k < pos.size(); ++k)
            vals[static_cast<std::size_t>(pos[k])] = a[static_cast<std::size_t>(pos[static_cast<std::size_t>(perm[k])])];
          rows_rec(r + 1);
        } while (std::next_permutation(perm.begin(), perm.end()));
      };
      rows_rec(0);
      // q_λ: signed sum over permutations within each column.
      VectorXc v = VectorXc::Zero(D);
      for (const auto& [filling, coef] : sym) {
        std::vector<int> cur = filling;
        std::function<void(int, int)> cols_rec = [&](int c, int sign) {
          if (c == shape.num_columns()) {
            v(tensor_index(cur, d)) += coef * sign;
            return;
          }
          const auto& pos = col_pos[static_cast<std::size_t>(c)];
          std::vector<int> perm(pos.size());
          std::iota(perm.begin(), perm.end(), 0);
          do {
            int inv = 0;
            for (std::size_t i = 0; i < perm.size(); ++i)
              for (std::size_t j = i + 1; j < perm.size(); ++j)
                if (perm[i] > perm[j]) ++inv;
            for (std::size_t k = 0; k < pos.size(); ++k)
              cur[static_cast<std::size_t>(pos[k])] = filling[static_cast<std::size_t>(pos[static_cast<std::size_t>(perm[k])])];
            cols_rec(c + 1, (inv % 2) ? -sign : sign);
          } while (std::next_permutation(perm.begin(), perm.end()));
          for (std::size_t k = 0; k < pos.size(); ++k)
            cur[static_cast<std::size_t>(pos[k])] = filling[static_cast<std::size_t>(pos[k])];
        };
        cols_rec(0, 1);
      }
      if (v.norm() > 0.0) vectors.push_back(v);
    });

    MatrixXc Y(D, static_cast<Eigen::Index>(vectors.size()));
    for (std::size_t k = 0; k < vectors.size(); ++k) Y.col(static_cast<Eigen::Index>(k)) = vectors[k];
    Eigen::JacobiSVD<MatrixXc> svd(Y, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k)
      if (sv(k) > 1e-9 * sv(0)) ++rank;
    const BigInt dim = dim_irrep(shape, d);
    if (BigInt(rank) != dim)
      throw std::logic_error("brute_force_blocks: symmetrizer range has rank " + std::to_string(rank) +
                             " instead of " + dim.str());
    MatrixXc Q = svd.matrixU().leftCols(rank);

    MatrixXc RQ(D, rank);
    for (int k = 0; k < rank; ++k) RQ.col(k) = apply_factorwise(rho, Q.col(k), n, d);
    MatrixXc B = hermitian_part(Q.adjoint() * RQ);
    const double tr = B.trace().real();

    BruteBlock blk;
    blk.shape = shape;
    blk.dimension = rank;
    blk.multiplicity = multiplicity(shape, n);
    blk.weight = static_cast<double>(blk.multiplicity) * tr;
    blk.spectrum = tr > 1e-300 ? hermitian_spectrum(B / tr) : std::vector<double>(static_cast<std::size_t>(rank), 0.0);
    out.push_back(std::move(blk));
  }
  return out;
}

}  // namespace qlan
