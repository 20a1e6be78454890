#include "cmwitness/f2_linear.hpp"

#include <stdexcept>

namespace cmwitness {

F2Vector F2Matrix::apply(const F2Vector& x) const {
  if (x.size() != cols_) throw std::invalid_argument("vector length mismatch");
  F2Vector out(rows());
  for (std::size_t i = 0; i < rows(); ++i) out[i] = ((rows_[i] & x).count() % 2) == 1;
  return out;
}

std::vector<std::size_t> rref(F2Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && !m(p, c)) ++p;
    if (p == m.rows()) continue;
    std::swap(m.row(p), m.row(r));
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (i != r && m(i, c)) m.row(i) ^= m.row(r);
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(F2Matrix m) { return rref(m).size(); }

std::vector<F2Vector> nullspace(F2Matrix m) {
  const auto pivots = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<F2Vector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    F2Vector v(m.cols());
    v[free] = true;
    for (std::size_t i = 0; i < pivots.size(); ++i)
      if (m(i, free)) v[pivots[i]] = true;
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<F2Vector> solve(F2Matrix m, const F2Vector& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("right-hand side length mismatch");
  // Augment with b as the last column.
  F2Matrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    F2Vector r = m.row(i);
    r.push_back(b[i]);
    aug.row(i) = std::move(r);
  }
  const auto pivots = rref(aug);
  F2Vector x(m.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] == m.cols()) return std::nullopt;
    x[pivots[i]] = aug(i, m.cols());
  }
  return x;
}

std::vector<F2Vector> span_basis(const std::vector<F2Vector>& vectors, std::size_t dim) {
  F2Matrix m(0, dim);
  for (const auto& v : vectors) {
    if (v.size() != dim) throw std::invalid_argument("vector length mismatch");
    m.append_row(v);
  }
  const auto pivots = rref(m);
  std::vector<F2Vector> out;
  out.reserve(pivots.size());
  for (std::size_t i = 0; i < pivots.size(); ++i) out.push_back(m.row(i));
  return out;
}

}  // namespace cmwitness
