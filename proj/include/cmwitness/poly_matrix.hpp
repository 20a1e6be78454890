#pragma once

#include <Eigen/Core>

#include <optional>
#include <vector>

#include "cmwitness/poly_gcd.hpp"
#include "cmwitness/polynomial.hpp"

namespace Eigen {

template <class C>
struct NumTraits<cmwitness::Polynomial<C>> : GenericNumTraits<cmwitness::Polynomial<C>> {
  using Real = cmwitness::Polynomial<C>;
  using NonInteger = Real;
  using Literal = Real;
  using Nested = Real;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 16,
    MulCost = 64
  };
  static Real epsilon() { return Real(0); }
  static Real dummy_precision() { return Real(0); }
  static int digits10() { return 0; }
};

}  // namespace Eigen

namespace cmwitness {

template <class C>
using PolynomialMatrix = Eigen::Matrix<Polynomial<C>, Eigen::Dynamic, Eigen::Dynamic>;

using PolyMatrix = PolynomialMatrix<Integer>;
using F2PolyMatrix = PolynomialMatrix<F2>;

template <class C>
PolynomialMatrix<C> zero_matrix(Eigen::Index rows, Eigen::Index cols, std::size_t nvars) {
  return PolynomialMatrix<C>::Constant(rows, cols, Polynomial<C>::zero(nvars));
}

template <class C>
bool is_zero_matrix(const PolynomialMatrix<C>& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) return false;
  return true;
}

/// Exact product; the lazy path keeps Eigen away from blocked kernels.
template <class C>
PolynomialMatrix<C> multiply(const PolynomialMatrix<C>& a, const PolynomialMatrix<C>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix dimension mismatch");
  PolynomialMatrix<C> out = a.lazyProduct(b);
  return out;
}

/// Rank over the fraction field by fraction-free (Bareiss) elimination.
template <class C>
Eigen::Index generic_rank(PolynomialMatrix<C> m) {
  using P = Polynomial<C>;
  const Eigen::Index rows = m.rows(), cols = m.cols();
  P prev(1);
  Eigen::Index rank = 0;
  for (Eigen::Index col = 0; col < cols && rank < rows; ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index r = rank; r < rows; ++r)
      if (!m(r, col).is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    m.row(rank).swap(m.row(pivot));
    for (Eigen::Index r = rank + 1; r < rows; ++r) {
      for (Eigen::Index c = col + 1; c < cols; ++c)
        m(r, c) = divide_exact(P(m(rank, col) * m(r, c) - m(r, col) * m(rank, c)), prev);
      m(r, col) = P::zero(m(r, col).nvars());
    }
    prev = m(rank, col);
    ++rank;
  }
  return rank;
}

/// Determinant by Bareiss elimination.
template <class C>
Polynomial<C> determinant(PolynomialMatrix<C> m) {
  using P = Polynomial<C>;
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const Eigen::Index n = m.rows();
  if (n == 0) return P(1);
  P prev(1);
  bool negate = false;
  for (Eigen::Index k = 0; k < n - 1; ++k) {
    if (m(k, k).is_zero()) {
      Eigen::Index swap_row = -1;
      for (Eigen::Index r = k + 1; r < n; ++r)
        if (!m(r, k).is_zero()) {
          swap_row = r;
          break;
        }
      if (swap_row < 0) return P::zero(m(0, 0).nvars());
      m.row(k).swap(m.row(swap_row));
      negate = !negate;
    }
    for (Eigen::Index r = k + 1; r < n; ++r) {
      for (Eigen::Index c = k + 1; c < n; ++c)
        m(r, c) = divide_exact(P(m(k, k) * m(r, c) - m(r, k) * m(k, c)), prev);
    }
    prev = m(k, k);
  }
  return negate ? P(-m(n - 1, n - 1)) : m(n - 1, n - 1);
}

inline std::vector<std::vector<Eigen::Index>> index_subsets(Eigen::Index n, Eigen::Index k) {
  std::vector<std::vector<Eigen::Index>> out;
  std::vector<Eigen::Index> cur;
  auto rec = [&](auto&& self, Eigen::Index start) -> void {
    if (static_cast<Eigen::Index>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (Eigen::Index i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

template <class C>
PolynomialMatrix<C> submatrix(const PolynomialMatrix<C>& m, const std::vector<Eigen::Index>& rows,
                              const std::vector<Eigen::Index>& cols) {
  PolynomialMatrix<C> s(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = m(rows[i], cols[j]);
  return s;
}

/// All nonzero k×k minors (the generators of the determinantal ideal I_k).
template <class C>
std::vector<Polynomial<C>> minors(const PolynomialMatrix<C>& m, Eigen::Index k) {
  std::vector<Polynomial<C>> out;
  if (k == 0) {
    out.emplace_back(1);
    return out;
  }
  for (const auto& rs : index_subsets(m.rows(), k))
    for (const auto& cs : index_subsets(m.cols(), k)) {
      auto d = determinant(submatrix(m, rs, cs));
      if (!d.is_zero()) out.push_back(std::move(d));
    }
  return out;
}

/// A nonzero kernel vector of a matrix whose rank is cols - 1, from signed
/// maximal minors of an independent row selection. None if the rank differs.
template <class C>
std::optional<PolynomialMatrix<C>> generic_kernel_vector(const PolynomialMatrix<C>& m) {
  const Eigen::Index n = m.cols();
  if (n == 0 || generic_rank(m) != n - 1) return std::nullopt;
  for (const auto& rs : index_subsets(m.rows(), n - 1)) {
    PolynomialMatrix<C> rows = submatrix(m, rs, [&] {
      std::vector<Eigen::Index> all(static_cast<std::size_t>(n));
      for (Eigen::Index j = 0; j < n; ++j) all[static_cast<std::size_t>(j)] = j;
      return all;
    }());
    if (generic_rank(rows) != n - 1) continue;
    PolynomialMatrix<C> v(n, 1);
    for (Eigen::Index j = 0; j < n; ++j) {
      std::vector<Eigen::Index> cs;
      for (Eigen::Index c = 0; c < n; ++c)
        if (c != j) cs.push_back(c);
      std::vector<Eigen::Index> all_rows(static_cast<std::size_t>(n - 1));
      for (Eigen::Index r = 0; r < n - 1; ++r) all_rows[static_cast<std::size_t>(r)] = r;
      auto d = determinant(submatrix(rows, all_rows, cs));
      v(j, 0) = (j % 2 == 0) ? d : Polynomial<C>(-d);
    }
    return v;
  }
  return std::nullopt;
}

/// Matrix of rational functions over the integers, stored as numerator and
/// denominator matrices of equal shape.
struct RationalMatrix {
  PolyMatrix numerators;
  PolyMatrix denominators;
};

/// Rank over Frac(S); each row is cleared of denominators first.
inline Eigen::Index generic_rank(const RationalMatrix& m) {
  if (m.numerators.rows() != m.denominators.rows() || m.numerators.cols() != m.denominators.cols())
    throw std::invalid_argument("rational matrix shape mismatch");
  PolyMatrix cleared = m.numerators;
  for (Eigen::Index i = 0; i < cleared.rows(); ++i)
    for (Eigen::Index j = 0; j < cleared.cols(); ++j) {
      if (m.denominators(i, j).is_zero()) throw std::invalid_argument("zero denominator");
      for (Eigen::Index k = 0; k < cleared.cols(); ++k)
        if (k != j) cleared(i, k) *= m.denominators(i, j);
    }
  return generic_rank(cleared);
}

}  // namespace cmwitness
