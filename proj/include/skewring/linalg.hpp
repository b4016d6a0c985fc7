#pragma once

#include <utility>
#include <vector>

#include "skewring/basefield.hpp"
#include "skewring/error.hpp"

namespace skewring {

// Dense row-major matrix over a rational-function tower. Every routine here
// runs exact field arithmetic (no floating point, no pivoting heuristics
// beyond "first nonzero"), so ranks and nullspaces are deterministic
// functions of the input.
using FieldMatrix = std::vector<std::vector<FieldElem>>;

namespace detail {

// Reduce m in place to reduced row echelon form. Returns the pivot column of
// each pivot row, in order; rank is the size of that list.
inline std::vector<int> field_matrix_rref(FieldMatrix& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  const std::size_t cols = m.front().size();
  for (const auto& row : m)
    if (row.size() != cols)
      fail("mismatch", "matrix rows have inconsistent lengths");
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c].is_zero()) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    FieldElem inv = m[r][c].inverse();
    for (std::size_t j = c; j < cols; ++j) m[r][j] = m[r][j] * inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      FieldElem f = m[i][c];
      for (std::size_t j = c; j < cols; ++j)
        m[i][j] = m[i][j] - f * m[r][j];
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  return pivots;
}

}  // namespace detail

// Rank of m over its coefficient field.
inline int field_matrix_rank(FieldMatrix m) {
  return static_cast<int>(detail::field_matrix_rref(m).size());
}

// Basis of the right nullspace {x : m x = 0}, each vector of length ncols.
// ncols is passed explicitly so a matrix with no rows still names its ambient
// column space; tower supplies the 0/1 constants of the basis vectors. Basis
// vectors are listed by ascending free column and each has a 1 in its free
// column, so the output is deterministic.
inline std::vector<std::vector<FieldElem>> field_matrix_nullspace(
    FieldMatrix m, const TowerPtr& tower, int ncols) {
  if (ncols < 0) fail("domain", "a matrix cannot have a negative column count");
  for (const auto& row : m)
    if (row.size() != static_cast<std::size_t>(ncols))
      fail("mismatch", "matrix rows do not match the stated column count");
  std::vector<int> pivots = detail::field_matrix_rref(m);
  std::vector<int> pivot_row(static_cast<std::size_t>(ncols), -1);
  for (std::size_t r = 0; r < pivots.size(); ++r)
    pivot_row[static_cast<std::size_t>(pivots[r])] = static_cast<int>(r);
  const FieldElem zero = FieldElem::integer(tower, 0);
  const FieldElem one = FieldElem::integer(tower, 1);
  std::vector<std::vector<FieldElem>> basis;
  for (int c = 0; c < ncols; ++c) {
    if (pivot_row[static_cast<std::size_t>(c)] >= 0) continue;
    std::vector<FieldElem> v(static_cast<std::size_t>(ncols), zero);
    v[static_cast<std::size_t>(c)] = one;
    for (int pc = 0; pc < ncols; ++pc) {
      int pr = pivot_row[static_cast<std::size_t>(pc)];
      if (pr < 0) continue;
      const FieldElem& entry = m[static_cast<std::size_t>(pr)][static_cast<std::size_t>(c)];
      if (!entry.is_zero()) v[static_cast<std::size_t>(pc)] = zero - entry;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace skewring
