#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "numeric.hpp"

namespace lim {

template <class T>
using Vec = std::vector<T>;
template <class T>
using Mat = std::vector<std::vector<T>>;

// Row-echelon rank. Pivot selection takes the largest |entry| in the column,
// which keeps the float backend usable and is deterministic for both.
template <class T>
int mat_rank(Mat<T> m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  int rank = 0;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t pivot = row;
    for (std::size_t r = row + 1; r < rows; ++r)
      if (NumOps<T>::lt(NumOps<T>::abs(m[pivot][col]), NumOps<T>::abs(m[r][col]))) pivot = r;
    if (NumOps<T>::is_zero(m[pivot][col])) continue;
    std::swap(m[pivot], m[row]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || NumOps<T>::is_zero(m[r][col])) continue;
      T f = m[r][col] / m[row][col];
      for (std::size_t c = col; c < cols; ++c) m[r][c] -= f * m[row][c];
    }
    ++row;
    ++rank;
  }
  return rank;
}

// Solves A x = b, returning one solution (free variables pinned to 0) or
// nullopt when inconsistent. Deterministic.
template <class T>
std::optional<Vec<T>> solve_linear(Mat<T> a, Vec<T> b) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<int> pivot_col_of_row;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t pivot = row;
    for (std::size_t r = row + 1; r < rows; ++r)
      if (NumOps<T>::lt(NumOps<T>::abs(a[pivot][col]), NumOps<T>::abs(a[r][col]))) pivot = r;
    if (NumOps<T>::is_zero(a[pivot][col])) continue;
    std::swap(a[pivot], a[row]);
    std::swap(b[pivot], b[row]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || NumOps<T>::is_zero(a[r][col])) continue;
      T f = a[r][col] / a[row][col];
      for (std::size_t c = col; c < cols; ++c) a[r][c] -= f * a[row][c];
      b[r] -= f * b[row];
    }
    pivot_col_of_row.push_back(static_cast<int>(col));
    ++row;
  }
  for (std::size_t r = row; r < rows; ++r)
    if (!NumOps<T>::is_zero(b[r])) return std::nullopt;

  Vec<T> x(cols, T{});
  for (std::size_t r = 0; r < row; ++r) {
    int c = pivot_col_of_row[r];
    x[c] = b[r] / a[r][c];
  }
  return x;
}

// Checks whether the vectors (as matrix rows) are linearly independent.
template <class T>
bool rows_linearly_independent(const Mat<T>& rows) {
  return mat_rank(rows) == static_cast<int>(rows.size());
}

// Visits size-k index subsets of {0..n-1} in lexicographic order.
// The visitor returns false to stop early. Returns false when stopped.
inline bool for_each_combination(int n, int k, const std::function<bool(const std::vector<int>&)>& fn) {
  if (k < 0 || k > n) return true;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (!fn(idx)) return false;
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return true;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Result of a lexicographic scan over basic solutions of {A x = b, x >= 0}.
template <class T>
struct BasicSolutionScan {
  bool feasible = false;       // some basic feasible solution exists
  Vec<T> first;                // lexicographically-first basic feasible solution
  bool positive_found = false; // one with x[positive_col] > 0 exists
  Vec<T> first_positive;
};

// Enumerates column subsets of size rank(A) in lexicographic order and solves
// each square-ish subsystem exactly. Every extreme point of {x>=0, Ax=b} has
// its support inside such a subset, so the scan is complete. positive_col < 0
// skips the positivity search.
template <class T>
BasicSolutionScan<T> scan_basic_solutions(const Mat<T>& a, const Vec<T>& b, int positive_col = -1) {
  BasicSolutionScan<T> out;
  const int rows = static_cast<int>(a.size());
  const int cols = rows ? static_cast<int>(a[0].size()) : 0;
  const int r = mat_rank(a);

  if (r == 0) {
    for (const auto& bi : b)
      if (!NumOps<T>::is_zero(bi)) return out;
    out.feasible = true;
    out.first.assign(cols, T{});
    if (positive_col >= 0) out.positive_found = false;
    return out;
  }

  for_each_combination(cols, r, [&](const std::vector<int>& subset) {
    Mat<T> sub(rows, Vec<T>(r));
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < r; ++j) sub[i][j] = a[i][subset[j]];
    if (mat_rank(sub) != r) return true;
    auto sol = solve_linear(sub, b);
    if (!sol) return true;
    bool nonneg = true;
    for (const auto& v : *sol)
      if (NumOps<T>::sign(v) < 0) { nonneg = false; break; }
    if (!nonneg) return true;
    Vec<T> x(cols, T{});
    for (int j = 0; j < r; ++j) x[subset[j]] = (*sol)[j];
    if (!out.feasible) {
      out.feasible = true;
      out.first = x;
      if (positive_col < 0) return false;
    }
    if (positive_col >= 0 && !out.positive_found && NumOps<T>::sign(x[positive_col]) > 0) {
      out.positive_found = true;
      out.first_positive = x;
      return false;
    }
    return true;
  });
  return out;
}

}  // namespace lim
