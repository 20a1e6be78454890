#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <optional>
#include <vector>

namespace cmwitness {

using F2Vector = boost::dynamic_bitset<>;

/// Dense matrix over 𝔽₂ stored as packed rows.
class F2Matrix {
 public:
  F2Matrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, F2Vector(cols)) {}

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  F2Vector& row(std::size_t i) { return rows_[i]; }
  const F2Vector& row(std::size_t i) const { return rows_[i]; }
  bool operator()(std::size_t i, std::size_t j) const { return rows_[i][j]; }
  void flip(std::size_t i, std::size_t j) { rows_[i].flip(j); }
  void set(std::size_t i, std::size_t j, bool v) { rows_[i][j] = v; }
  void append_row(F2Vector r) { rows_.push_back(std::move(r)); }

  F2Vector apply(const F2Vector& x) const;

 private:
  std::size_t cols_;
  std::vector<F2Vector> rows_;
};

/// Reduced row echelon form in place; returns the pivot column of each nonzero row.
std::vector<std::size_t> rref(F2Matrix& m);

std::size_t rank(F2Matrix m);

/// Basis of {x : m·x = 0}.
std::vector<F2Vector> nullspace(F2Matrix m);

/// Some x with m·x = b, or none.
std::optional<F2Vector> solve(F2Matrix m, const F2Vector& b);

/// Reduced echelon basis of the span of the given vectors; equal spans give equal bases.
std::vector<F2Vector> span_basis(const std::vector<F2Vector>& vectors, std::size_t dim);

}  // namespace cmwitness
